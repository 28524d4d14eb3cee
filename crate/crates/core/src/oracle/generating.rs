use serde::Serialize;

use crate::error::Result;
use crate::geometry::GeometryDerived;
use crate::monopole::{monopole_series, MonopoleSeries};
use crate::summation::SeriesOptions;

/// `D(t) = (1 + t Ae)(1 + t Be) - t^2 Ao Bo`.
pub fn generating_denominator(s: &MonopoleSeries, t: f64) -> f64 {
    let (a, b, o) = (s.ae.value, s.be.value, s.ao.value);
    (1.0 + t * a) * (1.0 + t * b) - t * t * o * o
}

/// `H_e^(1)(t) = t (Ae + t Ae Be - t Ao Bo) / D(t)`.
pub fn h_even_one(s: &MonopoleSeries, t: f64) -> f64 {
    let (a, b, o) = (s.ae.value, s.be.value, s.ao.value);
    t * (a + t * a * b - t * o * o) / generating_denominator(s, t)
}

/// `H_e^(2)(t)`: the same with `Ae` and `Be` exchanged.
pub fn h_even_two(s: &MonopoleSeries, t: f64) -> f64 {
    let (a, b, o) = (s.ae.value, s.be.value, s.ao.value);
    t * (b + t * a * b - t * o * o) / generating_denominator(s, t)
}

/// Outcome of the generating-function cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratingFunctionReport {
    /// `(t, explicit ratio / t, d/dt ln D)` at each sampled `t`.
    pub samples: Vec<(f64, f64, f64)>,
    pub max_relative_deviation: f64,
    /// Simpson integral of `(H_e^(1) + H_e^(2)) / t` over `[0, 1]`.
    pub integral: f64,
    /// `ln D(1)`.
    pub log_denominator: f64,
    pub passed: bool,
}

/// Sample points used by [`generating_function_check`].
pub const SAMPLE_T: [f64; 3] = [0.25, 0.5, 1.0];

/// Compare the explicit `(H_e^(1) + H_e^(2)) / t` with a central difference of
/// `ln D(t)`; `D` is quadratic, so the difference quotient is exact up to rounding.
pub fn generating_function_report(
    geom: &GeometryDerived,
    opts: &SeriesOptions,
    tol: f64,
) -> Result<GeneratingFunctionReport> {
    let s = monopole_series(geom, opts)?;
    let h = 1e-3;
    let samples: Vec<(f64, f64, f64)> = SAMPLE_T
        .iter()
        .map(|&t| {
            let explicit = (h_even_one(&s, t) + h_even_two(&s, t)) / t;
            let derivative =
                (generating_denominator(&s, t + h) - generating_denominator(&s, t - h)) / (2.0 * h);
            (t, explicit, derivative / generating_denominator(&s, t))
        })
        .collect();
    let max_relative_deviation = samples
        .iter()
        .map(|(_, a, b)| (a - b).abs() / b.abs())
        .fold(0.0, f64::max);
    let integrand = |t: f64| {
        if t == 0.0 {
            // limit of H/t at t -> 0
            s.ae.value + s.be.value
        } else {
            (h_even_one(&s, t) + h_even_two(&s, t)) / t
        }
    };
    let intervals = 2000;
    let step = 1.0 / intervals as f64;
    let integral = (0..=intervals)
        .map(|i| {
            let w = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * integrand(i as f64 * step)
        })
        .sum::<f64>()
        * step
        / 3.0;
    let log_denominator = generating_denominator(&s, 1.0).ln();
    let passed = max_relative_deviation <= tol
        && (integral - log_denominator).abs() <= 1e-10 * log_denominator.abs();
    Ok(GeneratingFunctionReport {
        samples,
        max_relative_deviation,
        integral,
        log_denominator,
        passed,
    })
}

/// `true` when the explicit generating function is the logarithmic derivative of `D`.
pub fn generating_function_check(geom: &GeometryDerived, tol: f64) -> Result<bool> {
    Ok(generating_function_report(geom, &SeriesOptions::with_tol(1e-15), tol)?.passed)
}
