use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::GeometryDerived;
use crate::scalar::CyclicSign;
use crate::specfun::chebyshev_u_from_mu;

/// Which sphere a node, or the first off-diagonal entry of a block, belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    One,
    Two,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::One => Color::Two,
            Color::Two => Color::One,
        }
    }

    /// Color of node `i` on the cycle: even nodes sit on sphere 1.
    pub fn of_node(i: usize) -> Self {
        if i % 2 == 0 {
            Color::One
        } else {
            Color::Two
        }
    }

    pub fn rho(self, geom: &GeometryDerived) -> f64 {
        match self {
            Color::One => geom.rho1,
            Color::Two => geom.rho2,
        }
    }

    /// Color after a block of `n` nodes: odd blocks switch sphere.
    pub fn after_block(self, n: usize) -> Self {
        if n % 2 == 1 {
            self.other()
        } else {
            self
        }
    }
}

/// Largest half-dimension accepted by the dense cyclic determinant.
pub const CYCLIC_MAX_R: u32 = 8;

/// Off-diagonal entries `s_i rho_{c_i}` of an `n x n` block whose first entry
/// has color `start`.
fn block_off_diagonal(
    n: usize,
    start: Color,
    signs: &[f64],
    geom: &GeometryDerived,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    if signs.len() != n - 1 {
        return Err(Error::invalid(format!(
            "a block of size {n} needs {} signs, got {}",
            n - 1,
            signs.len()
        )));
    }
    let mut color = start;
    Ok(signs
        .iter()
        .map(|s| {
            let v = s * color.rho(geom);
            color = color.other();
            v
        })
        .collect())
}

/// Explicit tridiagonal block with unit diagonal.
pub fn block_matrix(
    n: usize,
    start: Color,
    signs: &[f64],
    geom: &GeometryDerived,
) -> Result<DMatrix<f64>> {
    let off = block_off_diagonal(n, start, signs, geom)?;
    let mut m = DMatrix::identity(n, n);
    for (i, v) in off.iter().enumerate() {
        m[(i, i + 1)] = *v;
        m[(i + 1, i)] = *v;
    }
    Ok(m)
}

/// Determinant of a block by the continuant recurrence
/// `f_k = f_{k-1} - e_{k-1}^2 f_{k-2}`.
pub fn block_determinant_direct(
    n: usize,
    start: Color,
    signs: &[f64],
    geom: &GeometryDerived,
) -> Result<f64> {
    let off = block_off_diagonal(n, start, signs, geom)?;
    Ok(continuant(&off))
}

fn continuant(off: &[f64]) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0);
    for e in off {
        let next = cur - e * e * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Block determinant with all signs positive.
pub(crate) fn block_determinant(n: usize, start: Color, geom: &GeometryDerived) -> f64 {
    let mut color = start;
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|_| {
            let v = color.rho(geom);
            color = color.other();
            v
        })
        .collect();
    continuant(&off)
}

/// Chebyshev closed form: `(rho1 rho2)^k U_k` for `n = 2k+1`,
/// `(rho1 rho2)^k [U_k + (rho_other/rho_start) U_{k-1}]` for `n = 2k`.
pub fn block_determinant_closed_form(n: usize, start: Color, geom: &GeometryDerived) -> f64 {
    let k = (n / 2) as u32;
    let scale = geom.rho_product.powi(k as i32);
    if n % 2 == 1 {
        scale * chebyshev_u_from_mu(k, geom.mu)
    } else {
        let ratio = start.other().rho(geom) / start.rho(geom);
        scale * (chebyshev_u_from_mu(k, geom.mu) + ratio * chebyshev_u_from_mu(k - 1, geom.mu))
    }
}

/// Dense `2r x 2r` cyclic matrix: unit diagonal, entry `(i, i+1 mod 2r)` equal
/// to `signs[i] rho_{color(i)}`; for `r = 1` the two edges share one slot.
pub fn cyclic_matrix(r: u32, signs: &[f64], geom: &GeometryDerived) -> Result<DMatrix<f64>> {
    if r == 0 || r > CYCLIC_MAX_R {
        return Err(Error::CapExceeded {
            what: "cyclic matrix half-dimension",
            value: r as usize,
            max: CYCLIC_MAX_R as usize,
        });
    }
    let n = 2 * r as usize;
    if signs.len() != n {
        return Err(Error::invalid(format!(
            "need {n} signs, got {}",
            signs.len()
        )));
    }
    let mut m = DMatrix::identity(n, n);
    for (i, s) in signs.iter().enumerate() {
        let j = (i + 1) % n;
        let v = s * Color::of_node(i).rho(geom);
        m[(i, j)] += v;
        m[(j, i)] += v;
    }
    Ok(m)
}

/// Sign class of an assignment: parity of the number of negative entries.
pub fn sign_class(signs: &[f64]) -> CyclicSign {
    if signs.iter().filter(|s| **s < 0.0).count() % 2 == 0 {
        CyclicSign::Plus
    } else {
        CyclicSign::Minus
    }
}

/// LU determinant of a cyclic matrix with an explicit sign assignment.
pub fn cyclic_matrix_determinant_with_signs(
    r: u32,
    signs: &[f64],
    geom: &GeometryDerived,
) -> Result<f64> {
    Ok(cyclic_matrix(r, signs, geom)?.lu().determinant())
}

/// LU determinant of a representative of the sign class: all signs positive,
/// or only the closing edge negative.
pub fn cyclic_matrix_determinant(r: u32, sign: CyclicSign, geom: &GeometryDerived) -> Result<f64> {
    let n = 2 * r as usize;
    let mut signs = vec![1.0; n];
    if sign == CyclicSign::Minus && n > 0 {
        signs[n - 1] = -1.0;
    }
    cyclic_matrix_determinant_with_signs(r, &signs, geom)
}
