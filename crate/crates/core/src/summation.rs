//! Compensated summation and the truncation driver shared by every infinite series.

use serde::Serialize;

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
///
/// The running compensation also captures the low-order bits lost when a
/// summand is larger in magnitude than the partial sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Sum a short list of values with compensation.
pub fn compensated_sum(values: &[f64]) -> f64 {
    values.iter().copied().collect::<CompensatedSum>().value()
}

/// Truncation controls for infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesOptions {
    /// Relative tolerance on the estimated remainder.
    pub tol: f64,
    /// Hard cap on the number of evaluated terms.
    pub max_terms: usize,
}

impl SeriesOptions {
    pub const DEFAULT_TOL: f64 = 1e-12;
    pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::invalid(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::invalid("max_terms must be at least 1"));
        }
        Ok(Self { tol, max_terms })
    }

    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// A truncated series value with its truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub last_term: f64,
    pub converged: bool,
}

impl SeriesResult {
    /// A value that needed no summation.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            terms_used: 1,
            last_term: 0.0,
            converged: true,
        }
    }

    /// Replace the value, keeping the bookkeeping.
    pub(crate) fn map(self, f: impl FnOnce(f64) -> f64) -> Self {
        Self {
            value: f(self.value),
            ..self
        }
    }

    /// Merge the bookkeeping of two series feeding one derived value.
    pub(crate) fn combine(self, other: SeriesResult, value: f64) -> Self {
        Self {
            value,
            terms_used: self.terms_used + other.terms_used,
            last_term: self.last_term.abs().max(other.last_term.abs()),
            converged: self.converged && other.converged,
        }
    }
}

/// Number of consecutive small terms required before a series is cut.
const PLATEAU: usize = 3;
const VALUE_FLOOR: f64 = 1e-300;

/// Sum `term(start) + term(start + 1) + ...` until the remainder is negligible.
///
/// A term counts as negligible when its magnitude, inflated by the geometric
/// tail factor `1 / (1 - q)` with `q` the ratio to the previous term, is below
/// `tol * max(|sum|, floor)`. The series is cut after [`PLATEAU`] consecutive
/// negligible terms.
pub fn sum_series(
    opts: &SeriesOptions,
    start: usize,
    mut term: impl FnMut(usize) -> f64,
) -> Result<SeriesResult> {
    let mut acc = CompensatedSum::new();
    let mut previous = f64::NAN;
    let mut small_run = 0;
    for count in 1..=opts.max_terms {
        let n = start + count - 1;
        let t = term(n);
        if !t.is_finite() {
            return Err(Error::SeriesStalled {
                terms: count,
                last_term: t,
            });
        }
        acc.add(t);
        let ratio = (t / previous).abs();
        let tail = if t == 0.0 {
            0.0
        } else if ratio < 1.0 {
            t.abs() / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        let scale = acc.value().abs().max(VALUE_FLOOR);
        if tail <= opts.tol * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        previous = t;
        if small_run >= PLATEAU {
            return Ok(SeriesResult {
                value: acc.value(),
                terms_used: count,
                last_term: t,
                converged: true,
            });
        }
    }
    Err(Error::SeriesStalled {
        terms: opts.max_terms,
        last_term: previous,
    })
}
