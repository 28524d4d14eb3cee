use crate::geometry::GeometryDerived;

/// `U_n(y)` from the three-term recurrence `U_{k+1} = 2y U_k - U_{k-1}`.
pub fn chebyshev_u_recurrence(n: u32, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * y * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_n(cosh mu) = sinh((n+1) mu) / sinh(mu)` in the exponential form
/// `Z^{-n} (1 - Z^{2n+2}) / (1 - Z^2)` with `Z = exp(-mu)`.
pub fn chebyshev_u_from_mu(n: u32, mu: f64) -> f64 {
    let nf = n as f64;
    (nf * mu).exp() * (-(2.0 * nf + 2.0) * mu).exp_m1() / (-2.0 * mu).exp_m1()
}

pub fn chebyshev_u(n: u32, geom: &GeometryDerived) -> f64 {
    chebyshev_u_from_mu(n, geom.mu)
}

/// `1 / U_n(cosh mu) = (1 - Z^2) Z^n / (1 - Z^{2n+2})`.
///
/// Never overflows; underflows gracefully to zero for huge `n mu`.
pub fn inverse_chebyshev_u(n: u32, mu: f64) -> f64 {
    let nf = n as f64;
    (-nf * mu).exp() * (-2.0 * mu).exp_m1() / (-(2.0 * nf + 2.0) * mu).exp_m1()
}

/// `1 / (U_n + w U_{n-1})` for `n >= 1`, in the same overflow-free form:
/// `(1 - Z^2) Z^n / ((1 - Z^{2n+2}) + w Z (1 - Z^{2n}))`.
///
/// `w = +inf` yields zero.
pub fn inverse_chebyshev_u_weighted(n: u32, weight: f64, mu: f64) -> f64 {
    debug_assert!(n >= 1);
    let nf = n as f64;
    let one_minus_z2 = -(-2.0 * mu).exp_m1();
    let num = one_minus_z2 * (-nf * mu).exp();
    let den = -(-(2.0 * nf + 2.0) * mu).exp_m1() - weight * (-mu).exp() * (-2.0 * nf * mu).exp_m1();
    num / den
}
