//! Monopole correction for two Drude spheres, the capacitance matrix, and the
//! sphere-plane and equal-sphere limits.
//!
//! All Chebyshev reciprocals go through `1/U_n = (1 - Z^2) Z^n / (1 - Z^{2n+2})`,
//! so nothing overflows however far apart the spheres are.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{derive_parameters, z_from_aspect_ratio, GeometryDerived, SphereGeometry};
use crate::scalar::{dirichlet_free_energy_multipole, dirichlet_free_energy_roundtrip};
use crate::specfun::{inverse_chebyshev_u, inverse_chebyshev_u_weighted};
use crate::summation::{sum_series, SeriesOptions, SeriesResult};

/// The three monopole series `Ae`, `Be` and `Ao = Bo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonopoleSeries {
    /// `sum_{n>=1} 1 / (U_n + alpha U_{n-1})`
    pub ae: SeriesResult,
    /// `sum_{n>=1} 1 / (U_n + beta U_{n-1})`
    pub be: SeriesResult,
    /// `sqrt(rho1 rho2) sum_{n>=0} 1 / U_n`
    pub ao: SeriesResult,
}

impl MonopoleSeries {
    /// `(1 + Ae)(1 + Be) - Ao^2 - 1`, grouped so that small values stay accurate.
    pub fn log_argument_minus_one(&self) -> f64 {
        let (a, b, o) = (self.ae.value, self.be.value, self.ao.value);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        let cross = a.mul_add(b, -o * o);
        hi + lo + cross
    }
}

fn check_mu(geom: &GeometryDerived) -> Result<()> {
    if geom.mu > 0.0 && geom.mu.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "mu must be positive and finite, got {}",
            geom.mu
        )))
    }
}

fn weighted_sum(weight: f64, mu: f64, opts: &SeriesOptions) -> Result<SeriesResult> {
    if weight.is_infinite() {
        return Ok(SeriesResult::exact(0.0));
    }
    sum_series(opts, 1, |n| {
        inverse_chebyshev_u_weighted(n as u32, weight, mu)
    })
}

/// `sum_{n>=0} 1/U_n(cosh mu)`.
fn inverse_u_sum(mu: f64, opts: &SeriesOptions) -> Result<SeriesResult> {
    sum_series(opts, 0, |n| inverse_chebyshev_u(n as u32, mu))
}

/// Evaluate `Ae`, `Be` and `Ao`.
pub fn monopole_series(geom: &GeometryDerived, opts: &SeriesOptions) -> Result<MonopoleSeries> {
    check_mu(geom)?;
    let ae = weighted_sum(geom.alpha, geom.mu, opts)?;
    let be = weighted_sum(geom.beta, geom.mu, opts)?;
    let ao = if geom.rho_product == 0.0 {
        SeriesResult::exact(0.0)
    } else {
        let root = geom.rho_product.sqrt();
        inverse_u_sum(geom.mu, opts)?.map(|s| root * s)
    };
    Ok(MonopoleSeries { ae, be, ao })
}

fn log_of(arg_minus_one: f64) -> Result<f64> {
    if arg_minus_one > -1.0 && arg_minus_one.is_finite() {
        Ok(arg_minus_one.ln_1p())
    } else {
        Err(Error::NonPositiveLogArgument(1.0 + arg_minus_one))
    }
}

/// `Phi_Delta = ln[(1 + Ae)(1 + Be) - Ao^2]`.
pub fn monopole_delta(geom: &GeometryDerived, opts: &SeriesOptions) -> Result<SeriesResult> {
    let s = monopole_series(geom, opts)?;
    let value = log_of(s.log_argument_minus_one())?;
    Ok(s.ae.combine(s.be, 0.0).combine(s.ao, value))
}

/// Capacitance coefficients in units of length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacitanceMatrix {
    pub c11: f64,
    pub c22: f64,
    /// Mutual coefficient `c12 = c21 < 0`.
    pub c12: f64,
}

impl CapacitanceMatrix {
    /// `c11 c22 - c12^2` with one rounding error for the whole expression.
    pub fn determinant(&self) -> f64 {
        let w = self.c12 * self.c12;
        let err = (-self.c12).mul_add(self.c12, w);
        self.c11.mul_add(self.c22, -w) + err
    }

    pub fn is_positive_definite(&self) -> bool {
        self.c11 > 0.0 && self.c22 > 0.0 && self.determinant() > 0.0
    }

    pub fn swapped(&self) -> Self {
        Self {
            c11: self.c22,
            c22: self.c11,
            c12: self.c12,
        }
    }
}

/// `c11 = R1 (1 + Be)`, `c22 = R2 (1 + Ae)`, `c12 = -sqrt(R1 R2) Ao`.
pub fn capacitance_matrix(g: &SphereGeometry, opts: &SeriesOptions) -> Result<CapacitanceMatrix> {
    let geom = derive_parameters(g)?;
    let s = monopole_series(&geom, opts)?;
    let bare = inverse_u_sum(geom.mu, opts)?;
    // sqrt(R1 R2) sqrt(rho1 rho2) = R1 R2 / (R1 + R2 + L)
    Ok(CapacitanceMatrix {
        c11: g.r1 * (1.0 + s.be.value),
        c22: g.r2 * (1.0 + s.ae.value),
        c12: -(g.r1 * g.r2 / g.center_distance()) * bare.value,
    })
}

/// Scalar part used by the composed energy: round trips below `mu = 1`,
/// multipoles above.
fn dirichlet_auto(geom: &GeometryDerived, opts: &SeriesOptions) -> Result<SeriesResult> {
    if geom.mu < 1.0 {
        dirichlet_free_energy_roundtrip(geom, opts)
    } else {
        dirichlet_free_energy_multipole(geom, opts)
    }
}

/// `Phi_total = Phi_D + Phi_Delta`.
pub fn free_energy_total(geom: &GeometryDerived, opts: &SeriesOptions) -> Result<SeriesResult> {
    let d = dirichlet_auto(geom, opts)?;
    let delta = monopole_delta(geom, opts)?;
    let value = d.value + delta.value;
    Ok(d.combine(delta, value))
}

/// `g_alpha(Z) = sqrt((Z^2 + alpha Z) / (1 + alpha Z))`; equals 1 at `alpha = inf`.
pub fn g_function(alpha: f64, z: f64) -> f64 {
    if alpha.is_infinite() {
        return 1.0;
    }
    ((z * z + alpha * z) / (1.0 + alpha * z)).sqrt()
}

/// `1 - g_alpha^2 = (1 - Z^2) / (1 + alpha Z)`.
fn one_minus_g2(alpha: f64, z: f64, one_minus_z2: f64) -> f64 {
    if alpha.is_infinite() {
        0.0
    } else {
        one_minus_z2 / (1.0 + alpha * z)
    }
}

/// `(1 - g^2)/g sum_l (Z g)^{2l+1} / (1 - Z^{2l+1})`.
fn z_form_single(alpha: f64, geom: &GeometryDerived, opts: &SeriesOptions) -> Result<SeriesResult> {
    let z = geom.z;
    let prefactor = one_minus_g2(alpha, z, geom.one_minus_z2());
    if prefactor == 0.0 {
        return Ok(SeriesResult::exact(0.0));
    }
    let g = g_function(alpha, z);
    let ln_zg = z.ln() + g.ln();
    let mu = geom.mu;
    let sum = sum_series(opts, 0, |l| {
        let m = (2 * l + 1) as f64;
        (m * ln_zg).exp() / -(-m * mu).exp_m1()
    })?;
    Ok(sum.map(|s| prefactor / g * s))
}

/// Total energy from the closed Z-representation: the multipole Dirichlet sum
/// plus the logarithm built from `g_alpha`, `g_beta` and `sum Z^{2l+1}/(1 - Z^{2l+1})`.
pub fn free_energy_z_form(geom: &GeometryDerived, opts: &SeriesOptions) -> Result<SeriesResult> {
    check_mu(geom)?;
    let z = geom.z;
    let mu = geom.mu;
    let d = dirichlet_free_energy_multipole(geom, opts)?;
    let a = z_form_single(geom.alpha, geom, opts)?;
    let b = z_form_single(geom.beta, geom, opts)?;
    let omz2 = geom.one_minus_z2();
    let cross_pref = one_minus_g2(geom.alpha, z, omz2) * one_minus_g2(geom.beta, z, omz2) / z;
    let lambert = if cross_pref == 0.0 {
        SeriesResult::exact(0.0)
    } else {
        sum_series(opts, 0, |l| {
            let m = (2 * l + 1) as f64;
            let e = (-m * mu).exp();
            e / -(-m * mu).exp_m1()
        })?
    };
    let cross = cross_pref * lambert.value * lambert.value;
    let (hi, lo) = if a.value >= b.value {
        (a.value, b.value)
    } else {
        (b.value, a.value)
    };
    let delta = log_of(hi + lo + a.value.mul_add(b.value, -cross))?;
    let value = d.value + delta;
    Ok(d.combine(a, 0.0).combine(b, 0.0).combine(lambert, value))
}

/// Monopole correction for a sphere in front of a plane, as a function of `L/R`:
/// `ln[1 + (1 - Z^2) sum_l Z^{4l+1} / (1 - Z^{2l+1})]`.
pub fn delta_sphere_plane(eps: f64, opts: &SeriesOptions) -> Result<SeriesResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!(
            "aspect ratio must be positive, got {eps}"
        )));
    }
    let z = z_from_aspect_ratio(eps);
    let one_minus_z2 = (1.0 - z) * (1.0 + z);
    let ln_z = z.ln();
    let sum = sum_series(opts, 0, |l| {
        let m = (2 * l + 1) as f64;
        ((2.0 * m - 1.0) * ln_z).exp() / -(m * ln_z).exp_m1()
    })?;
    let value = log_of(one_minus_z2 * sum.value)?;
    Ok(sum.map(|_| value))
}

/// Monopole correction for equal spheres, as a function of `L/(2R)`:
/// `ln(1 - S_-) + ln(1 + S_+) - ln(1 - Y^2)` with
/// `S_-/+ = sum_{l>=1} (1 - Y^2)(1 - Y^{2l}) Y^{2l+1} / (1 -/+ Y^{2l+1})`.
pub fn delta_equal_spheres(delta_ratio: f64, opts: &SeriesOptions) -> Result<SeriesResult> {
    if !(delta_ratio > 0.0 && delta_ratio.is_finite()) {
        return Err(Error::invalid(format!(
            "aspect ratio must be positive, got {delta_ratio}"
        )));
    }
    let y = z_from_aspect_ratio(delta_ratio);
    let ln_y = y.ln();
    let one_minus_y2 = -(2.0 * ln_y).exp_m1();
    let numerator = |l: usize| {
        let m = (2 * l + 1) as f64;
        one_minus_y2 * -((2 * l) as f64 * ln_y).exp_m1() * (m * ln_y).exp()
    };
    let minus = sum_series(opts, 1, |l| {
        numerator(l) / -(((2 * l + 1) as f64) * ln_y).exp_m1()
    })?;
    let plus = sum_series(opts, 1, |l| {
        let m = (2 * l + 1) as f64;
        numerator(l) / (1.0 + (m * ln_y).exp())
    })?;
    if minus.value >= 1.0 {
        return Err(Error::NonPositiveLogArgument(1.0 - minus.value));
    }
    let value = (-minus.value).ln_1p() + plus.value.ln_1p() - one_minus_y2.ln();
    Ok(minus.combine(plus, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geometry_from_mu;
    use crate::specfun::chebyshev_u_recurrence;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn tight() -> SeriesOptions {
        SeriesOptions::with_tol(1e-16)
    }

    fn random_geometry(rng: &mut ChaCha8Rng) -> SphereGeometry {
        let r1 = 10f64.powf(rng.gen_range(-1.0..1.0));
        let r2 = 10f64.powf(rng.gen_range(-1.0..1.0));
        let l = r1.min(r2) * 10f64.powf(rng.gen_range(-2.0..1.0));
        SphereGeometry::new(r1, r2, l).unwrap()
    }

    #[test]
    fn far_apart_limit() {
        let g = derive_parameters(&SphereGeometry::new(1.0, 2.0, 1e6).unwrap()).unwrap();
        let s = monopole_series(&g, &tight()).unwrap();
        assert!(s.ae.value < 1e-5 && s.be.value < 1e-5);
        assert!(rel(s.ao.value, g.rho_product.sqrt()) < 1e-5);
    }

    #[test]
    fn equal_radii_give_equal_series() {
        let g = derive_parameters(&SphereGeometry::new(3.0, 3.0, 0.4).unwrap()).unwrap();
        let s = monopole_series(&g, &tight()).unwrap();
        assert_eq!(s.ae.value, s.be.value);
    }

    #[test]
    fn reciprocal_form_matches_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = derive_parameters(&random_geometry(&mut rng)).unwrap();
            let u: Vec<f64> = (0..31).map(|n| chebyshev_u_recurrence(n, g.y)).collect();
            for n in 1..30 {
                let direct = 1.0 / (u[n] + g.alpha * u[n - 1]);
                let stable = inverse_chebyshev_u_weighted(n as u32, g.alpha, g.mu);
                assert!(rel(stable, direct) < 1e-12, "n={n}");
                assert!(rel(inverse_chebyshev_u(n as u32, g.mu), 1.0 / u[n]) < 1e-12);
            }
        }
    }

    #[test]
    fn delta_positive_and_swap_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let sg = random_geometry(&mut rng);
            let a = monopole_delta(&derive_parameters(&sg).unwrap(), &tight()).unwrap();
            let b = monopole_delta(&derive_parameters(&sg.swapped()).unwrap(), &tight()).unwrap();
            assert!(a.value > 0.0);
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn capacitance_is_positive_definite_and_links_to_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let sg = random_geometry(&mut rng);
            let c = capacitance_matrix(&sg, &tight()).unwrap();
            assert!(c.is_positive_definite());
            assert!(c.c12 < 0.0);
            let d = monopole_delta(&derive_parameters(&sg).unwrap(), &tight()).unwrap();
            let expect = sg.r1 * sg.r2 * d.value.exp();
            assert!(rel(c.determinant(), expect) < 1e-13);
            assert_eq!(
                capacitance_matrix(&sg.swapped(), &tight()).unwrap(),
                c.swapped()
            );
        }
    }

    #[test]
    fn capacitance_far_apart() {
        let sg = SphereGeometry::new(1.0, 2.0, 1e7).unwrap();
        let c = capacitance_matrix(&sg, &tight()).unwrap();
        assert!(rel(c.c11, 1.0) < 1e-6 && rel(c.c22, 2.0) < 1e-6);
        assert!(rel(c.c12, -2.0 / sg.center_distance()) < 1e-6);
    }

    #[test]
    fn composed_and_z_form_agree() {
        for &mu in &[0.05, 0.2, 1.0, 3.0] {
            for &u in &[0.0, 0.05, 0.2, 0.25] {
                let g = geometry_from_mu(mu, u).unwrap();
                let a = free_energy_total(&g, &tight()).unwrap();
                let b = free_energy_z_form(&g, &tight()).unwrap();
                assert!(rel(a.value, b.value) < 1e-12, "mu={mu} u={u}");
            }
        }
    }

    #[test]
    fn monopoles_weaken_attraction() {
        for &mu in &[0.05, 0.5, 2.0] {
            let g = geometry_from_mu(mu, 0.1).unwrap();
            let total = free_energy_total(&g, &tight()).unwrap().value;
            let d = dirichlet_free_energy_roundtrip(&g, &tight()).unwrap().value;
            assert!(total < 0.0 && total.abs() < d.abs());
        }
    }

    #[test]
    fn g_identities() {
        for &z in &[0.1, 0.5, 0.93] {
            for &alpha in &[0.01, 0.3, 1.0, 7.0] {
                let p = g_function(alpha, z) * g_function(1.0 / alpha, z);
                assert!(rel(p, z) < 1e-15);
            }
            assert!(rel(g_function(1.0, z), z.sqrt()) < 1e-15);
            assert_eq!(g_function(f64::INFINITY, z), 1.0);
            assert!(rel(g_function(0.0, z), z) < 1e-15);
        }
    }

    #[test]
    fn sphere_plane_limit() {
        let eps = 0.3;
        let sg = SphereGeometry::new(1e6, 1.0, eps).unwrap();
        let general = monopole_delta(&derive_parameters(&sg).unwrap(), &tight()).unwrap();
        let limit = delta_sphere_plane(eps, &tight()).unwrap();
        assert!(rel(general.value, limit.value) < 1e-5);
        let mu = (eps + (eps * (2.0 + eps)).sqrt()).ln_1p();
        let plane = geometry_from_mu(mu, 0.0).unwrap();
        let exact = monopole_delta(&plane, &tight()).unwrap();
        assert!(rel(exact.value, limit.value) < 1e-12);
    }

    #[test]
    fn sphere_plane_far() {
        let r = delta_sphere_plane(1e4, &tight()).unwrap();
        let z = z_from_aspect_ratio(1e4);
        assert!(r.value > 0.0 && rel(r.value, z.ln_1p()) < 1e-3);
        assert!(delta_sphere_plane(0.0, &tight()).is_err());
    }

    #[test]
    fn equal_spheres_limit() {
        for &delta in &[0.01, 0.1, 1.0, 5.0] {
            let sg = SphereGeometry::new(2.0, 2.0, 4.0 * delta).unwrap();
            let g = derive_parameters(&sg).unwrap();
            let s = monopole_series(&g, &tight()).unwrap();
            let factorized =
                ((1.0 + s.ae.value + s.ao.value) * (1.0 + s.ae.value - s.ao.value)).ln();
            let general = monopole_delta(&g, &tight()).unwrap();
            let limit = delta_equal_spheres(delta, &tight()).unwrap();
            assert!(
                rel(limit.value, general.value) < 1e-12,
                "delta={delta}: {} {} {}",
                limit.value,
                general.value,
                factorized
            );
            assert!(rel(limit.value, factorized) < 1e-12);
        }
        let far = delta_equal_spheres(1e5, &tight()).unwrap();
        assert!(far.value > 0.0 && far.value < 1e-4);
    }
}
