use serde::Serialize;

use super::vtaylor::{v_taylor_signed, V_MAX_ORDER};
use crate::error::{Error, Result};
use crate::specfun::{
    bell_partial_ordinary_table, bernoulli_number_f64, factorial_f64, polygamma, EULER_GAMMA,
};

/// `log_coeff * (gamma - ln(mu/2)) + constant`; the logarithm stays symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLinear {
    pub log_coeff: f64,
    pub constant: f64,
}

impl LogLinear {
    pub fn constant(value: f64) -> Self {
        Self {
            log_coeff: 0.0,
            constant: value,
        }
    }

    /// Value at a given `gamma - ln(mu/2)`.
    pub fn at(&self, log_term: f64) -> f64 {
        self.log_coeff * log_term + self.constant
    }
}

/// Sign choice in `c = 3/2 +- v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `c_0 = 3/2 +- v0`, `c_n = +- v_n` for `n = 1..=order`.
pub fn c_series(u: f64, branch: Branch, order: usize) -> Result<Vec<f64>> {
    c_series_signed(u, 1.0, branch, order)
}

/// As [`c_series`], with the sign of `v0` set by `v0_sign`.
pub fn c_series_signed(u: f64, v0_sign: f64, branch: Branch, order: usize) -> Result<Vec<f64>> {
    let t = v_taylor_signed(u, v0_sign, order)?;
    let s = branch.sign();
    Ok(t.v
        .iter()
        .enumerate()
        .map(|(n, v)| if n == 0 { 1.5 + s * v } else { s * v })
        .collect())
}

fn check_order(c: &[f64], m_max: usize) -> Result<()> {
    if m_max > V_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "expansion order",
            value: m_max,
            max: V_MAX_ORDER,
        });
    }
    if c.len() <= m_max {
        return Err(Error::invalid(format!(
            "need c_0..c_{m_max}, got {} coefficients",
            c.len()
        )));
    }
    Ok(())
}

/// `I_0 .. I_{m_max}` in `I(c) = (1/(2 mu)) sum_m I_m mu^{2m}`, from the digamma
/// and Bernoulli-polynomial expansions around `c_0`.
pub fn i_coefficients(c: &[f64], m_max: usize) -> Result<Vec<LogLinear>> {
    check_order(c, m_max)?;
    let c0 = c[0];
    let mut out = vec![LogLinear {
        log_coeff: 1.0,
        constant: -(polygamma(0, c0)? + EULER_GAMMA),
    }];
    if m_max == 0 {
        return Ok(out);
    }
    let with_c0 = bell_partial_ordinary_table(2 * m_max, c);
    let without_c0 = bell_partial_ordinary_table(m_max, &c[1..]);
    for m in 1..=m_max {
        let mut total = 0.0;
        for n in 1..=m {
            let b2n = bernoulli_number_f64(2 * n);
            let pref = b2n * (4f64.powi(n as i32) - 2.0) / (2 * n) as f64;
            let inner: f64 = (-(n as i64)..=n as i64)
                .map(|k| {
                    let row = (m as i64 - k) as usize;
                    let col = (n as i64 - k) as usize;
                    let up = (n as i64 + k) as usize;
                    bernoulli_number_f64(up) * with_c0[row][col]
                        / (factorial_f64(col as u32) * factorial_f64(up as u32))
                })
                .sum();
            total += pref * inner;
            total -= polygamma(n as u32, c0)? / factorial_f64(n as u32) * without_c0[m][n];
        }
        out.push(LogLinear::constant(total));
    }
    Ok(out)
}

/// `J_0 .. J_{m_max}` in `J(c) = 2 mu sum_m J_m mu^{2m}`.
pub fn j_coefficients(c: &[f64], m_max: usize) -> Result<Vec<f64>> {
    check_order(c, m_max)?;
    let mut shifted = c.to_vec();
    shifted[0] -= 1.0;
    let table = bell_partial_ordinary_table(2 * m_max + 1, &shifted);
    Ok((0..=m_max)
        .map(|m| {
            (0..=m)
                .map(|n| table[m + n + 1][2 * n + 1] / factorial_f64(2 * n as u32 + 1))
                .sum()
        })
        .collect())
}
