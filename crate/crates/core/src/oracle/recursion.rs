use serde::Serialize;

use super::blocks::{block_determinant, Color};
use crate::geometry::GeometryDerived;

/// Polynomial in the block-counting variable `t`; `coefficients[k]` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TPolynomial {
    pub coefficients: Vec<f64>,
}

impl TPolynomial {
    fn zero(degree: usize) -> Self {
        Self {
            coefficients: vec![0.0; degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| *c != 0.0)
            .unwrap_or(0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c)
    }

    /// `int_0^1 p(t)/t dt = sum_k c_k / k`.
    pub fn integral_over_t(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c / k as f64)
            .sum()
    }

    fn add_scaled_shifted(&mut self, other: &TPolynomial, factor: f64) {
        for (k, c) in other.coefficients.iter().enumerate() {
            if k + 1 < self.coefficients.len() {
                self.coefficients[k + 1] += factor * c;
            }
        }
    }
}

/// The open-chain functions `h_n^(1)` and `h_n^(2)` for `n = 1..=2r`.
#[derive(Debug, Clone)]
pub struct HFunctions {
    /// `h[0][n]` starts on sphere 1, `h[1][n]` on sphere 2; index 0 unused.
    pub h: [Vec<TPolynomial>; 2],
}

fn slot(c: Color) -> usize {
    match c {
        Color::One => 0,
        Color::Two => 1,
    }
}

/// Build `h_m^(c) = t a_m^(c) - sum_{j<m} t a_j^(c) h_{m-j}^(c')`, where `c'`
/// is `c` after an even first block and the other sphere after an odd one.
pub fn h_functions(r: usize, geom: &GeometryDerived) -> HFunctions {
    let n_max = 2 * r;
    let inv: [Vec<f64>; 2] = [Color::One, Color::Two].map(|c| {
        (0..=n_max)
            .map(|n| {
                if n == 0 {
                    0.0
                } else {
                    1.0 / block_determinant(n, c, geom)
                }
            })
            .collect()
    });
    let mut h: [Vec<TPolynomial>; 2] = [
        vec![TPolynomial::zero(n_max); n_max + 1],
        vec![TPolynomial::zero(n_max); n_max + 1],
    ];
    for m in 1..=n_max {
        for c in [Color::One, Color::Two] {
            let mut p = TPolynomial::zero(n_max);
            p.coefficients[1] = inv[slot(c)][m];
            for j in 1..m {
                let next = c.after_block(j);
                let tail = h[slot(next)][m - j].clone();
                p.add_scaled_shifted(&tail, -inv[slot(c)][j]);
            }
            h[slot(c)][m] = p;
        }
    }
    HFunctions { h }
}

/// `h_{2r}^(1) + h_{2r}^(2)` as a polynomial in `t`.
pub fn closed_chain_polynomial(r: usize, geom: &GeometryDerived) -> TPolynomial {
    let hf = h_functions(r, geom);
    let n = 2 * r;
    TPolynomial {
        coefficients: hf.h[0][n]
            .coefficients
            .iter()
            .zip(&hf.h[1][n].coefficients)
            .map(|(a, b)| a + b)
            .collect(),
    }
}

/// `Delta_r = -(rho1 rho2)^r r int_0^1 (h^(1) + h^(2)) / t dt`.
pub fn delta_r_recursion(r: usize, geom: &GeometryDerived) -> f64 {
    let p = closed_chain_polynomial(r, geom);
    -geom.rho_product.powi(r as i32) * r as f64 * p.integral_over_t()
}

/// Per-`k` values `-(rho1 rho2)^r r c_k / k` that add up to `Delta_r`.
pub fn delta_r_recursion_by_blocks(r: usize, geom: &GeometryDerived) -> Vec<f64> {
    let p = closed_chain_polynomial(r, geom);
    let scale = -geom.rho_product.powi(r as i32) * r as f64;
    p.coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { 0.0 } else { scale * c / k as f64 })
        .collect()
}

/// `-sum_{r<=r_max} Delta_r / r` from the recursion.
pub fn delta_partial_sum_recursion(r_max: usize, geom: &GeometryDerived) -> f64 {
    (1..=r_max)
        .map(|r| -delta_r_recursion(r, geom) / r as f64)
        .sum()
}
