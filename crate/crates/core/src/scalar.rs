//! Scalar field with Dirichlet boundary conditions on both spheres.
//!
//! Two dual series give the same energy: a sum over round trips,
//! `phi = -sum_r (1/(2r)) cosh(r mu) / sinh^2(r mu)`, which converges quickly at
//! short distances, and a sum over bispherical multipoles,
//! `phi = sum_l (2l+1) ln(1 - Z^{2l+1})`, which converges quickly at large ones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::GeometryDerived;
use crate::specfun::{bernoulli_number, factorial, LN_GLAISHER_A, ZETA3};
use crate::summation::{sum_series, SeriesOptions, SeriesResult};

/// Parity class of the minus signs on the off-diagonal of a cyclic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CyclicSign {
    /// Even number of negative off-diagonal pairs.
    Plus,
    /// Odd number of negative off-diagonal pairs.
    Minus,
}

/// Round-trip representation of the Dirichlet energy.
pub fn dirichlet_free_energy_roundtrip(
    geom: &GeometryDerived,
    opts: &SeriesOptions,
) -> Result<SeriesResult> {
    let mu = geom.mu;
    sum_series(opts, 1, |r| {
        let x = r as f64 * mu;
        let e = (-x).exp();
        let d = (-2.0 * x).exp_m1();
        // (1/(2r)) cosh/sinh^2 = e (1 + e^2) / (r (1 - e^2)^2)
        -e * (1.0 + e * e) / (r as f64 * d * d)
    })
}

/// Bispherical multipole representation of the Dirichlet energy.
pub fn dirichlet_free_energy_multipole(
    geom: &GeometryDerived,
    opts: &SeriesOptions,
) -> Result<SeriesResult> {
    let mu = geom.mu;
    sum_series(opts, 0, |l| {
        let m = (2 * l + 1) as f64;
        m * (-(-m * mu).exp()).ln_1p()
    })
}

/// Closed form `det M_r^(+/-) = 2 (rho1 rho2)^r [cosh(r mu) -/+ 1]`.
pub fn dirichlet_cyclic_determinant(r: u32, sign: CyclicSign, geom: &GeometryDerived) -> f64 {
    let x = r as f64 * geom.mu;
    let bracket = match sign {
        // cosh x - 1 = 2 sinh^2(x/2)
        CyclicSign::Plus => 2.0 * (0.5 * x).sinh().powi(2),
        CyclicSign::Minus => x.cosh() + 1.0,
    };
    2.0 * geom.rho_product.powi(r as i32) * bracket
}

/// Largest order accepted by [`dirichlet_short_distance`].
pub const DIRICHLET_MAX_ORDER: usize = 10;

/// Exact coefficients `(2n+1)/(2n) B_{2n} B_{2n+2} / (2n+2)! (2^{2n+1} - 1)` of
/// `mu^{2n}`, `n = 1..=order`.
pub fn dirichlet_short_distance_coefficients(order: usize) -> Result<Vec<BigRational>> {
    if order > DIRICHLET_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "Dirichlet expansion order",
            value: order,
            max: DIRICHLET_MAX_ORDER,
        });
    }
    Ok((1..=order)
        .map(|n| {
            let two_n = 2 * n;
            let prefactor = BigRational::new(BigInt::from(two_n + 1), BigInt::from(two_n));
            let power = (BigInt::one() << (two_n + 1)) - BigInt::one();
            prefactor * bernoulli_number(two_n) * bernoulli_number(two_n + 2)
                / BigRational::from_integer(factorial(two_n as u32 + 2))
                * BigRational::from_integer(power)
        })
        .collect())
}

/// Short-distance expansion of the Dirichlet energy,
/// `-zeta(3)/(2 mu^2) + ln(mu)/12 + 1/12 - ln A + ln(2)/6 + sum_{n<=order} d_n mu^{2n}`.
pub fn dirichlet_short_distance(mu: f64, order: usize) -> Result<f64> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::invalid(format!(
            "short-distance expansion needs 0 < mu <= 1, got {mu}"
        )));
    }
    let coeffs = dirichlet_short_distance_coefficients(order)?;
    let mu2 = mu * mu;
    let series = coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| (acc + c.to_f64().unwrap_or(f64::NAN)) * mu2);
    let constant = 1.0 / 12.0 - LN_GLAISHER_A + std::f64::consts::LN_2 / 6.0;
    Ok(-ZETA3 / (2.0 * mu2) + mu.ln() / 12.0 + constant + series)
}
