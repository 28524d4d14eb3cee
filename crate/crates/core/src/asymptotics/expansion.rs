use serde::Serialize;

use super::coefficients::{c_series_signed, i_coefficients, j_coefficients, Branch, LogLinear};
use super::vtaylor::{check_u, v_taylor_signed};
use crate::error::{Error, Result};
use crate::scalar::dirichlet_short_distance;
use crate::specfun::{polygamma, EULER_GAMMA};

/// Digamma aggregates `Psi_n^(+/-)` at `c_0 = 3/2 +- v0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiTable {
    pub v0: f64,
    /// `[Psi_n^(+), Psi_n^(-)]` for `n = 0, 1, 2`.
    pub psi: [[f64; 2]; 3],
}

impl PsiTable {
    pub fn new(u: f64) -> Result<Self> {
        Self::signed(u, 1.0)
    }

    /// Table with `v0` taking the sign of `v0_sign`.
    pub fn signed(u: f64, v0_sign: f64) -> Result<Self> {
        let t = v_taylor_signed(u, v0_sign, 2)?;
        let (v0, v1, v2) = (t.v0, t.v[1], t.v[2]);
        let mut psi = [[0.0; 2]; 3];
        for (i, s) in [1.0, -1.0].into_iter().enumerate() {
            let c0 = 1.5 + s * v0;
            let trigamma = polygamma(1, c0)?;
            psi[0][i] = polygamma(0, c0)? + EULER_GAMMA;
            psi[1][i] = s * v1 * trigamma;
            psi[2][i] = s * v2 * trigamma + 0.5 * v1 * v1 * polygamma(2, c0)?;
        }
        Ok(Self { v0, psi })
    }

    /// `phi_{n,m} = (1/2 + v0)^m Psi_n^(+) + (1/2 - v0)^m Psi_n^(-)`.
    pub fn phi(&self, n: usize, m: i32) -> f64 {
        (0.5 + self.v0).powi(m) * self.psi[n][0] + (0.5 - self.v0).powi(m) * self.psi[n][1]
    }

    /// `theta_{n,m} = Psi_n^(+) Psi_m^(-)`.
    pub fn theta(&self, n: usize, m: usize) -> f64 {
        self.psi[n][0] * self.psi[m][1]
    }
}

/// `eps_n(u)` and `delta_n(u)` for `n = 0, 1, 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCoefficients {
    pub eps: [f64; 3],
    pub del: [f64; 3],
}

impl ExpansionCoefficients {
    /// `eps_n L + delta_n` with `L = gamma - ln(mu/2)`.
    pub fn a(&self, n: usize, log_term: f64) -> f64 {
        self.eps[n] * log_term + self.del[n]
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.eps
            .iter()
            .chain(&self.del)
            .zip(other.eps.iter().chain(&other.del))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Closed-form coefficients in terms of the `phi` and `theta` aggregates.
pub fn epsilon_delta(u: f64) -> Result<ExpansionCoefficients> {
    epsilon_delta_signed(u, 1.0)
}

/// As [`epsilon_delta`] with an explicit sign of `v0`.
pub fn epsilon_delta_signed(u: f64, v0_sign: f64) -> Result<ExpansionCoefficients> {
    check_u(u)?;
    let p = PsiTable::signed(u, v0_sign)?;
    let u2 = u * u;
    let u3 = u2 * u;
    let phi = |n, m| p.phi(n, m);
    let th = |n, m| p.theta(n, m);
    let e0 = 1.0 - u * phi(0, 0);
    let d0 = 1.0 - phi(0, 1) + u * th(0, 0);
    let e1 = 1.0 - 2.0 * u - u2 - 2.0 * u * (1.0 - 3.0 * u) * phi(0, 0) - 6.0 * u * phi(1, 0);
    let d1 = (13.0 - 30.0 * u) / 12.0
        - u * (13.0 - 6.0 * u) / 12.0 * phi(0, 0)
        - (1.0 - 4.0 * u) * phi(0, 1)
        - 6.0 * phi(1, 1)
        + 2.0 * u * (1.0 - 3.0 * u) * th(0, 0)
        + 6.0 * u * (th(0, 1) + th(1, 0));
    let cubic = 8.0 - 75.0 * u + 180.0 * u2;
    let e2 = (6.0 - 64.0 * u + 132.0 * u2 + 193.0 * u3) / 6.0
        - 2.0 / 3.0 * u * cubic * phi(0, 0)
        - 40.0 * u * (1.0 - 3.0 * u) * phi(1, 0)
        - 120.0 * u * phi(2, 0);
    let d2 = (467.0 - 5240.0 * u + 14810.0 * u2 + 300.0 * u3) / 360.0
        - u * (589.0 - 3040.0 * u + 1930.0 * u2) / 120.0 * phi(0, 0)
        - (3.0 - 58.0 * u + 208.0 * u2) / 3.0 * phi(0, 1)
        - 5.0 / 3.0 * u * (13.0 - 6.0 * u) * phi(1, 0)
        - 20.0 * (1.0 - 4.0 * u) * phi(1, 1)
        - 120.0 * phi(2, 1)
        + 2.0 / 3.0 * u * cubic * th(0, 0)
        + 40.0 * u * (1.0 - 3.0 * u) * (th(0, 1) + th(1, 0))
        + 120.0 * u * th(1, 1)
        + 120.0 * u * (th(0, 2) + th(2, 0));
    Ok(ExpansionCoefficients {
        eps: [e0, e1, e2],
        del: [d0, d1, d2],
    })
}

/// Quadratic in `L`: `[const, L, L^2]`.
type Quad = [f64; 3];

fn quad_mul(a: Quad, b: Quad) -> [f64; 5] {
    let mut out = [0.0; 5];
    for i in 0..3 {
        for j in 0..3 {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn as_quad(x: &LogLinear) -> Quad {
    [x.constant, x.log_coeff, 0.0]
}

/// Truncated product of series in `mu^2` with `Quad` coefficients.
fn series_mul(a: &[Quad], b: &[Quad]) -> Vec<Quad> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| {
            let mut acc = [0.0; 3];
            for i in 0..=m {
                let p = quad_mul(a[i], b[m - i]);
                debug_assert!(p[3] == 0.0 && p[4] == 0.0);
                for k in 0..3 {
                    acc[k] += p[k];
                }
            }
            acc
        })
        .collect()
}

/// Coefficients rebuilt from the `I` and `J` expansions:
/// `(1 + J+ I+)(1 + J- I-) - J+ J- I(1)^2`, sorted by powers of `mu`.
pub fn epsilon_delta_from_ij(u: f64) -> Result<ExpansionCoefficients> {
    epsilon_delta_from_ij_signed(u, 1.0)
}

pub fn epsilon_delta_from_ij_signed(u: f64, v0_sign: f64) -> Result<ExpansionCoefficients> {
    check_u(u)?;
    let order = 2;
    let side = |branch| -> Result<(Vec<Quad>, Vec<Quad>)> {
        let c = c_series_signed(u, v0_sign, branch, order)?;
        let i: Vec<Quad> = i_coefficients(&c, order)?.iter().map(as_quad).collect();
        let j: Vec<Quad> = j_coefficients(&c, order)?
            .iter()
            .map(|x| [*x, 0.0, 0.0])
            .collect();
        Ok((i, j))
    };
    let (ip, jp) = side(Branch::Plus)?;
    let (im, jm) = side(Branch::Minus)?;
    let unit: Vec<Quad> = i_coefficients(&[1.0, 0.0, 0.0], order)?
        .iter()
        .map(as_quad)
        .collect();
    let mut plus = series_mul(&jp, &ip);
    let mut minus = series_mul(&jm, &im);
    plus[0][0] += 1.0;
    minus[0][0] += 1.0;
    let direct = series_mul(&plus, &minus);
    let cross = series_mul(&series_mul(&jp, &jm), &series_mul(&unit, &unit));
    let mut eps = [0.0; 3];
    let mut del = [0.0; 3];
    let mut factorial = 1.0;
    for n in 0..=order {
        if n > 0 {
            factorial *= ((2 * n) * (2 * n + 1)) as f64;
        }
        let q: Vec<f64> = (0..3).map(|k| direct[n][k] - cross[n][k]).collect();
        if q[2].abs() > 1e-10 * (1.0 + q[1].abs()) {
            return Err(Error::invalid("log-squared terms failed to cancel"));
        }
        eps[n] = factorial * q[1];
        del[n] = factorial * q[0];
    }
    Ok(ExpansionCoefficients { eps, del })
}

/// Soft bound on `mu` above which the expansion is flagged.
pub const SOFT_MU_BOUND: f64 = 0.5;

/// Short-distance monopole correction at order `mu^4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShortDistanceDelta {
    pub mu: f64,
    pub u: f64,
    /// `ln sum_n mu^{2n}/(2n+1)! [eps_n L + delta_n]`.
    pub log_form: f64,
    /// The same logarithm expanded to three terms in `mu^2`.
    pub mercator_form: f64,
    /// Magnitude of the `mu^4` term times `mu^2`, a proxy for the truncation error.
    pub error_proxy: f64,
    /// `mu` exceeds [`SOFT_MU_BOUND`].
    pub beyond_soft_bound: bool,
}

impl ShortDistanceDelta {
    pub fn value(&self) -> f64 {
        self.mercator_form
    }
}

/// Evaluate both forms of the `mu^4` expansion of `Phi_Delta`.
pub fn delta_short_distance(mu: f64, u: f64) -> Result<ShortDistanceDelta> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::invalid(format!("mu must be positive, got {mu}")));
    }
    let c = epsilon_delta(u)?;
    let log_term = EULER_GAMMA - (0.5 * mu).ln();
    let (a0, a1, a2) = (c.a(0, log_term), c.a(1, log_term), c.a(2, log_term));
    let mu2 = mu * mu;
    let mu4 = mu2 * mu2;
    let inner = a0 + mu2 / 6.0 * a1 + mu4 / 120.0 * a2;
    if !(a0 > 0.0 && inner > 0.0) {
        return Err(Error::NonPositiveLogArgument(a0.min(inner)));
    }
    let r1 = a1 / a0;
    let quartic = (3.0 * a2 / a0 - 5.0 * r1 * r1) / 360.0 * mu4;
    Ok(ShortDistanceDelta {
        mu,
        u,
        log_form: inner.ln(),
        mercator_form: a0.ln() + r1 / 6.0 * mu2 + quartic,
        error_proxy: quartic.abs() * mu2,
        beyond_soft_bound: mu > SOFT_MU_BOUND,
    })
}

/// `Phi_D` expanded to `mu^4` plus the Mercator form of `Phi_Delta`.
pub fn free_energy_short_distance(mu: f64, u: f64) -> Result<f64> {
    Ok(dirichlet_short_distance(mu, 2)? + delta_short_distance(mu, u)?.mercator_form)
}

/// `gamma_1 .. gamma_4` of the sphere-plane short-distance expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaConstants {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
}

pub fn gamma_constants() -> GammaConstants {
    let g1 = EULER_GAMMA + std::f64::consts::LN_2;
    let g2 = g1 + 1.0 / 12.0;
    GammaConstants {
        gamma1: g1,
        gamma2: g2,
        gamma3: 0.5 * (5.0 * g2 * g2 - 3.0 * g1 * g1 - 107.0 / 120.0 * g1),
        gamma4: 5.0 * g2 - 3.0 * g1 - 107.0 / 240.0,
    }
}
