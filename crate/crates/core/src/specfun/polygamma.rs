use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

use super::{bernoulli_number_f64, factorial_f64};

const ASYMPTOTIC_TERMS: usize = 12;

/// Polygamma function `psi^{(n)}(x)` for `x > 0`; `n = 0` is the digamma function.
///
/// The argument is shifted upward with `psi^{(n)}(x+1) = psi^{(n)}(x) + (-1)^n n! / x^{n+1}`
/// until the large-argument series (Bernoulli numbers in `1/x^2`) is accurate to
/// machine precision.
pub fn polygamma(n: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!(
            "polygamma needs a positive finite argument, got {x}"
        )));
    }
    let threshold = 20.0f64.max(2.0 * n as f64 + 10.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let nfact = factorial_f64(n);

    let mut shift = CompensatedSum::new();
    let mut xs = x;
    while xs < threshold {
        shift.add(xs.powi(-(n as i32) - 1));
        xs += 1.0;
    }

    let mut acc = CompensatedSum::new();
    let inv2 = 1.0 / (xs * xs);
    if n == 0 {
        acc.add(xs.ln());
        acc.add(-0.5 / xs);
        let mut p = 1.0;
        for k in 1..=ASYMPTOTIC_TERMS {
            p *= inv2;
            acc.add(-bernoulli_number_f64(2 * k) / (2 * k) as f64 * p);
        }
    } else {
        let s = -sign; // (-1)^{n+1}
        acc.add(s * factorial_f64(n - 1) / xs.powi(n as i32));
        acc.add(s * nfact / (2.0 * xs.powi(n as i32 + 1)));
        let mut p = xs.powi(-(n as i32));
        for k in 1..=ASYMPTOTIC_TERMS {
            p *= inv2;
            let ratio = factorial_f64(2 * k as u32 + n - 1) / factorial_f64(2 * k as u32);
            acc.add(s * bernoulli_number_f64(2 * k) * ratio * p);
        }
    }
    acc.add(-sign * nfact * shift.value());
    Ok(acc.value())
}

pub fn digamma(x: f64) -> Result<f64> {
    polygamma(0, x)
}
