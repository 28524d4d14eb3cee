use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{factorial, stirling2};

/// Highest Taylor index of `v(mu)` supported.
pub const V_MAX_ORDER: usize = 10;

/// Taylor data of `v(mu) = sum_n v_n mu^{2n}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VTaylor {
    pub u: f64,
    pub v0: f64,
    /// `v[n]` multiplies `mu^{2n}`; `v[0] == v0`.
    pub v: Vec<f64>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial (ascending coefficients) in `v0` of `v_n`, obtained by expanding
/// `sum_k k! S(2n+1, k+1) (v0 - 1/2)^{k+1} / (2n+1)!`.
fn vn_in_v0(n: usize) -> Vec<BigRational> {
    let m = 2 * n + 1;
    let mut out = vec![BigRational::zero(); m + 1];
    // powers of w = v0 - 1/2
    let mut power = vec![BigRational::one()];
    let shift = rat(-1, 2);
    for k in 0..m {
        let mut next = vec![BigRational::zero(); power.len() + 1];
        for (i, c) in power.iter().enumerate() {
            next[i + 1] += c;
            next[i] += c * &shift;
        }
        power = next;
        let weight = BigRational::from_integer(factorial(k as u32)) * stirling2(m, k + 1);
        for (i, c) in power.iter().enumerate() {
            out[i] += &weight * c;
        }
    }
    let norm = BigRational::from_integer(factorial(m as u32));
    out.into_iter().map(|c| c / &norm).collect()
}

/// Quotient `Q_n` with `v_n = v0 (v0^2 - 1/4) Q_n(v0^2)`, ascending in `s = v0^2`.
fn reduced_polynomial(n: usize) -> Vec<BigRational> {
    let mut p = vn_in_v0(n);
    // divide by v0^3 - v0/4
    let deg = p.len() - 1;
    let mut q = vec![BigRational::zero(); deg.saturating_sub(2)];
    for d in (3..=deg).rev() {
        let lead = p[d].clone();
        if lead.is_zero() {
            continue;
        }
        q[d - 3] = lead.clone();
        p[d] -= &lead;
        p[d - 2] += lead * rat(1, 4);
    }
    debug_assert!(
        p.iter().all(Zero::is_zero),
        "v_n must vanish at v0 = 0, +-1/2"
    );
    // q holds only even powers of v0
    q.iter().step_by(2).cloned().collect()
}

fn reduced(n: usize) -> &'static [BigRational] {
    static TABLE: [OnceLock<Vec<BigRational>>; V_MAX_ORDER] =
        [const { OnceLock::new() }; V_MAX_ORDER];
    TABLE[n - 1].get_or_init(|| reduced_polynomial(n))
}

/// Exact `Q_n(s)` coefficients, so that `v_n = -u v0 Q_n(1/4 - u)`.
pub fn v_coefficient_polynomial(n: usize) -> Result<Vec<BigRational>> {
    if n == 0 || n > V_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "Taylor index of v",
            value: n,
            max: V_MAX_ORDER,
        });
    }
    Ok(reduced(n).to_vec())
}

pub(crate) fn check_u(u: f64) -> Result<()> {
    if (0.0..=0.25).contains(&u) {
        Ok(())
    } else {
        Err(Error::invalid(format!("u must lie in [0, 1/4], got {u}")))
    }
}

/// `v0 = sqrt(1 - 4u) / 2` for the larger sphere labelled 1.
pub fn v0_from_u(u: f64) -> f64 {
    0.5 * (1.0 - 4.0 * u).max(0.0).sqrt()
}

/// Taylor coefficients `v_0 .. v_order` of `v(mu)` with `v0 >= 0`.
pub fn v_taylor(u: f64, order: usize) -> Result<VTaylor> {
    v_taylor_signed(u, 1.0, order)
}

/// As [`v_taylor`], with `v0` taking the sign of `sign`.
pub fn v_taylor_signed(u: f64, sign: f64, order: usize) -> Result<VTaylor> {
    check_u(u)?;
    if order > V_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "Taylor order of v",
            value: order,
            max: V_MAX_ORDER,
        });
    }
    let v0 = v0_from_u(u).copysign(sign);
    let s = 0.25 - u;
    let mut v = vec![v0];
    for q in (1..=order).map(reduced) {
        let qs = q
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + c.to_f64().unwrap_or(f64::NAN));
        v.push(-u * v0 * qs);
    }
    Ok(VTaylor { u, v0, v })
}

/// `v(mu) = -ln((Z + alpha)/(1 + alpha Z)) / (2 mu)` with `alpha = R2/R1`.
pub fn v_function(mu: f64, alpha: f64) -> f64 {
    if alpha.is_infinite() {
        return -0.5;
    }
    let z = (-mu).exp();
    let one_minus_z = -(-mu).exp_m1();
    -(-(one_minus_z * (1.0 - alpha) / (1.0 + alpha * z))).ln_1p() / (2.0 * mu)
}

/// `alpha = R2/R1` realizing `u` with `R1 >= R2`.
pub fn alpha_from_u(u: f64) -> f64 {
    let d = (1.0 - 4.0 * u).max(0.0).sqrt();
    // R2/R1 = (1 - d)/(1 + d) = 4u/(1 + d)^2
    4.0 * u / ((1.0 + d) * (1.0 + d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};

    #[test]
    fn equal_radii_vanish() {
        let t = v_taylor(0.25, 6).unwrap();
        assert!(t.v.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn plane_has_only_constant_term() {
        let t = v_taylor(0.0, 6).unwrap();
        assert_eq!(t.v0, 0.5);
        assert!(t.v[1..].iter().all(|x| *x == 0.0));
    }

    #[test]
    fn low_order_closed_forms() {
        for &u in &[0.03, 0.1, 0.2] {
            let t = v_taylor(u, 2).unwrap();
            assert!((t.v[1] - (-t.v0 / 3.0 * u)).abs() < 1e-16);
            let v2 = -t.v0 / 60.0 * u * (1.0 - 12.0 * u);
            assert!((t.v[2] - v2).abs() < 1e-16);
        }
        assert_eq!(v_coefficient_polynomial(1).unwrap(), vec![rat(1, 3)]);
    }

    #[test]
    fn odd_in_v0() {
        let p = v_taylor_signed(0.17, 1.0, 5).unwrap();
        let m = v_taylor_signed(0.17, -1.0, 5).unwrap();
        for (a, b) in p.v.iter().zip(&m.v) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn explicit_function_limits() {
        assert!(v_function(0.3, 1.0).abs() < 1e-16);
        assert!((v_function(0.3, 0.0) - 0.5).abs() < 1e-15);
        let a = alpha_from_u(0.2);
        assert!((v_function(0.4, a) + v_function(0.4, 1.0 / a)).abs() < 1e-15);
    }

    #[test]
    fn matches_numerical_taylor_fit() {
        let u = 0.2;
        let alpha = alpha_from_u(u);
        let n = 40;
        let deg = 5;
        let mus: Vec<f64> = (0..n)
            .map(|i| 1e-3 * (1e2f64).powf(i as f64 / (n - 1) as f64))
            .collect();
        let a = DMatrix::from_fn(n, deg, |i, j| mus[i].powi(2 * j as i32));
        let b = DVector::from_iterator(n, mus.iter().map(|&m| v_function(m, alpha)));
        let fit = a.svd(true, true).solve(&b, 1e-300).unwrap();
        let t = v_taylor(u, 2).unwrap();
        for k in 0..3 {
            assert!(
                (fit[k] - t.v[k]).abs() < 1e-8,
                "k={k}: {} vs {}",
                fit[k],
                t.v[k]
            );
        }
    }
}
