//! Sphere-sphere input validation and the dimensionless parameters derived from it.

use serde::Serialize;

use crate::error::{Error, Result};

/// Two spheres with radii `r1`, `r2` whose surfaces are a distance `l` apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereGeometry {
    pub r1: f64,
    pub r2: f64,
    pub l: f64,
}

impl SphereGeometry {
    pub fn new(r1: f64, r2: f64, l: f64) -> Result<Self> {
        if l == 0.0 && r1.is_finite() && r1 > 0.0 && r2.is_finite() && r2 > 0.0 {
            return Err(Error::DegenerateGeometry(
                "spheres in contact (L = 0)".into(),
            ));
        }
        for (name, value) in [("R1", r1), ("R2", r2), ("L", l)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(Self { r1, r2, l })
    }

    /// Centre-to-centre distance `R1 + R2 + L`.
    pub fn center_distance(&self) -> f64 {
        self.r1 + self.r2 + self.l
    }

    pub fn effective_radius(&self) -> f64 {
        self.r1 * self.r2 / (self.r1 + self.r2)
    }

    /// The same arrangement with the spheres relabelled.
    pub fn swapped(&self) -> Self {
        Self {
            r1: self.r2,
            r2: self.r1,
            l: self.l,
        }
    }

    /// Same radii, different surface separation.
    pub fn with_separation(&self, l: f64) -> Result<Self> {
        Self::new(self.r1, self.r2, l)
    }
}

/// Dimensionless parameters of a sphere-sphere (or sphere-plane) arrangement.
///
/// The sphere-plane limit is represented with `r1 -> infinity`: `alpha = 0`,
/// `beta = +inf`, `rho1 = 1`, `rho2 = 0`, `u = 0`, `v0 = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryDerived {
    /// `R1 / (R1 + R2 + L)`
    pub rho1: f64,
    /// `R2 / (R1 + R2 + L)`
    pub rho2: f64,
    /// `rho1 * rho2`, kept separately since it vanishes in the sphere-plane limit.
    pub rho_product: f64,
    /// `y = cosh(mu)`
    pub y: f64,
    /// `y - 1`, carried without cancellation.
    pub y_minus_one: f64,
    pub mu: f64,
    /// `Z = exp(-mu)`
    pub z: f64,
    /// `Reff^2 / (R1 R2)`
    pub u: f64,
    /// `(R1 - R2) / (2 (R1 + R2))`
    pub v0: f64,
    /// `R2 / R1`
    pub alpha: f64,
    /// `R1 / R2`
    pub beta: f64,
    /// Effective radius `R1 R2 / (R1 + R2)`; 1 in normalized parametrizations.
    pub reff: f64,
}

impl GeometryDerived {
    pub fn is_sphere_plane(&self) -> bool {
        self.alpha == 0.0 || self.beta == 0.0
    }

    /// `1 - Z^2`, accurate for small `mu`.
    pub(crate) fn one_minus_z2(&self) -> f64 {
        -(-2.0 * self.mu).exp_m1()
    }
}

/// `ln(1 + t + sqrt(t (2 + t)))`, i.e. `arcosh(1 + t)` without forming `1 + t`.
fn arcosh_one_plus(t: f64) -> f64 {
    (t + (t * (2.0 + t)).sqrt()).ln_1p()
}

/// Derive every dimensionless parameter from `(R1, R2, L)`.
pub fn derive_parameters(g: &SphereGeometry) -> Result<GeometryDerived> {
    let g = SphereGeometry::new(g.r1, g.r2, g.l)?;
    let sum = g.r1 + g.r2;
    let reff = g.effective_radius();
    // y - 1 = L/Reff + L^2/(2 Reff (R1+R2))
    let t = g.l / reff + g.l * g.l / (2.0 * reff * sum);
    let mu = arcosh_one_plus(t);
    let z = (-mu).exp();
    if !(mu > 0.0 && mu.is_finite() && z < 1.0) {
        return Err(Error::DegenerateGeometry(format!(
            "separation L = {} gives mu = {mu:e}, Z rounds to 1",
            g.l
        )));
    }
    let lc = g.center_distance();
    let rho1 = g.r1 / lc;
    let rho2 = g.r2 / lc;
    Ok(GeometryDerived {
        rho1,
        rho2,
        rho_product: rho1 * rho2,
        y: 1.0 + t,
        y_minus_one: t,
        mu,
        z,
        u: g.r1 * g.r2 / (sum * sum),
        v0: 0.5 * (g.r1 - g.r2) / sum,
        alpha: g.r2 / g.r1,
        beta: g.r1 / g.r2,
        reff,
    })
}

/// Radii normalized to `R1 + R2 = 1` realizing a given `u` with `R1 >= R2`.
///
/// Returns `None` for `u = 0`, where the larger sphere becomes a plane.
pub fn normalized_radii(u: f64) -> Option<(f64, f64)> {
    if u <= 0.0 {
        return None;
    }
    let d = (1.0 - 4.0 * u).max(0.0).sqrt();
    // R1 R2 = u, R1 + R2 = 1
    Some((0.5 * (1.0 + d), 2.0 * u / (1.0 + d)))
}

/// Sphere geometry realizing `(mu, u)` with `R1 + R2 = 1` and `R1 >= R2`.
///
/// Fails for `u = 0`, which has no finite-radius representative.
pub fn sphere_geometry_from_mu(mu: f64, u: f64) -> Result<SphereGeometry> {
    check_mu_u(mu, u)?;
    let (r1, r2) = normalized_radii(u).ok_or_else(|| {
        Error::invalid("u = 0 is the sphere-plane limit and has no finite sphere radii")
    })?;
    let reff = u;
    let t = 2.0 * (0.5 * mu).sinh().powi(2);
    // L^2/2 + L - Reff t = 0 (R1 + R2 = 1)
    let l = 2.0 * reff * t / (1.0 + (1.0 + 2.0 * reff * t).sqrt());
    SphereGeometry::new(r1, r2, l)
}

fn check_mu_u(mu: f64, u: f64) -> Result<()> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::invalid(format!(
            "mu must be positive and finite, got {mu}"
        )));
    }
    if !(0.0..=0.25).contains(&u) {
        return Err(Error::invalid(format!("u must lie in [0, 1/4], got {u}")));
    }
    Ok(())
}

/// Inverse parametrization in the natural variables `(mu, u)`.
///
/// Radii are normalized to `R1 + R2 = 1` (with `R1 >= R2`); for `u = 0` the
/// result is the sphere-plane limit with sphere radius 1 and `L = cosh(mu) - 1`.
/// `mu` and `Z` are stored exactly as requested.
pub fn geometry_from_mu(mu: f64, u: f64) -> Result<GeometryDerived> {
    check_mu_u(mu, u)?;
    let t = 2.0 * (0.5 * mu).sinh().powi(2);
    if u == 0.0 {
        return Ok(GeometryDerived {
            rho1: 1.0,
            rho2: 0.0,
            rho_product: 0.0,
            y: 1.0 + t,
            y_minus_one: t,
            mu,
            z: (-mu).exp(),
            u: 0.0,
            v0: 0.5,
            alpha: 0.0,
            beta: f64::INFINITY,
            reff: 1.0,
        });
    }
    let sg = sphere_geometry_from_mu(mu, u)?;
    let mut derived = derive_parameters(&sg)?;
    derived.mu = mu;
    derived.z = (-mu).exp();
    derived.y_minus_one = t;
    derived.y = 1.0 + t;
    derived.u = u;
    Ok(derived)
}

/// `Z = 1 + eps - sqrt(eps (2 + eps))`, written as its reciprocal partner to
/// avoid cancellation at large `eps`.
pub fn z_from_aspect_ratio(eps: f64) -> f64 {
    1.0 / (1.0 + eps + (eps * (2.0 + eps)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn equal_radii_at_unit_separation() {
        let d = derive_parameters(&SphereGeometry::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!(rel(d.y, 3.5) < 1e-15);
        assert_eq!(d.u, 0.25);
        assert_eq!(d.v0, 0.0);
        assert_eq!(d.alpha * d.beta, 1.0);
    }

    #[test]
    fn invariants_hold() {
        for &(r1, r2, l) in &[
            (1.0, 2.0, 0.1),
            (3.0, 0.5, 2.0),
            (10.0, 10.0, 1e-3),
            (1.0, 1e-4, 5.0),
        ] {
            let d = derive_parameters(&SphereGeometry::new(r1, r2, l).unwrap()).unwrap();
            assert!(d.rho1 + d.rho2 < 1.0);
            let lhs = 2.0 * d.rho1 * d.rho2 * d.y;
            let rhs = 1.0 - d.rho1 * d.rho1 - d.rho2 * d.rho2;
            assert!(rel(lhs, rhs) < 1e-13, "{lhs} {rhs}");
            assert!(rel(d.z + 1.0 / d.z, 2.0 * d.y) < 1e-14);
            assert!(d.z > 0.0 && d.z < 1.0);
            assert!(d.u > 0.0 && d.u <= 0.25);
            assert!((d.v0 * d.v0 - (1.0 - 4.0 * d.u) / 4.0).abs() < 1e-15);
            assert!(rel(d.alpha * d.beta, 1.0) < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(SphereGeometry::new(0.0, 1.0, 1.0).is_err());
        assert!(SphereGeometry::new(1.0, -1.0, 1.0).is_err());
        assert!(SphereGeometry::new(1.0, 1.0, f64::NAN).is_err());
        assert!(SphereGeometry::new(1.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn contact_limit_is_degenerate() {
        let g = SphereGeometry::new(1.0, 1.0, 1e-40).unwrap();
        assert!(matches!(
            derive_parameters(&g),
            Err(Error::DegenerateGeometry(_))
        ));
        assert!(matches!(
            SphereGeometry::new(1.0, 1.0, 0.0),
            Err(Error::DegenerateGeometry(_))
        ));
        let d = derive_parameters(&SphereGeometry::new(1.0, 1.0, 1e-12).unwrap()).unwrap();
        assert!(d.mu > 0.0 && d.mu < 1e-5);
        assert!(d.z < 1.0 && d.z > 0.99999);
    }

    #[test]
    fn small_separation_matches_square_root_law() {
        // mu ~ sqrt(2 (y - 1)) as y -> 1
        let d = derive_parameters(&SphereGeometry::new(1.0, 1.0, 1e-10).unwrap()).unwrap();
        let t = d.y_minus_one;
        let expected = (2.0 * t).sqrt() * (1.0 - t / 12.0);
        assert!(rel(d.mu, expected) < 1e-14);
    }

    #[test]
    fn quotient_and_separation_forms_agree() {
        for &l in &[1e-6, 1e-3, 0.1, 1.0, 10.0] {
            let d =
                derive_parameters(&SphereGeometry::new(1.0, 2.5, l * 5.0 / 7.0).unwrap()).unwrap();
            let y_quot = (1.0 - d.rho1 * d.rho1 - d.rho2 * d.rho2) / (2.0 * d.rho1 * d.rho2);
            assert!(rel(y_quot, d.y) < 1e-13);
        }
    }

    #[test]
    fn swapping_radii() {
        let g = SphereGeometry::new(0.7, 2.9, 0.3).unwrap();
        let a = derive_parameters(&g).unwrap();
        let b = derive_parameters(&g.swapped()).unwrap();
        assert_eq!(a.y, b.y);
        assert_eq!(a.mu, b.mu);
        assert_eq!(a.z, b.z);
        assert_eq!(a.u, b.u);
        assert_eq!(a.v0, -b.v0);
        assert_eq!(a.rho_product, b.rho_product);
    }

    #[test]
    fn y_monotone_in_separation() {
        let mut last = 1.0;
        for i in 1..200 {
            let l = 1e-4 * 1.1f64.powi(i);
            let d = derive_parameters(&SphereGeometry::new(1.3, 0.4, l).unwrap()).unwrap();
            assert!(d.y > last);
            last = d.y;
        }
    }

    #[test]
    fn from_mu_round_trip() {
        for &mu in &[1e-3, 0.05, 0.5, 1.0, 3.0, 8.0] {
            for &u in &[1e-6, 0.01, 0.1, 0.2, 0.25] {
                let sg = sphere_geometry_from_mu(mu, u).unwrap();
                let d = derive_parameters(&sg).unwrap();
                assert!(rel(d.mu, mu) < 1e-12, "mu {mu} u {u}: {}", d.mu);
                assert!(rel(d.u, u) < 1e-12, "mu {mu} u {u}: {}", d.u);
            }
        }
    }

    #[test]
    fn from_mu_equal_radii() {
        let d = geometry_from_mu(0.7, 0.25).unwrap();
        assert!(rel(d.y, 0.7f64.cosh()) < 1e-15);
        assert!(d.v0.abs() < 1e-15);
        assert!(rel(d.alpha, 1.0) < 1e-15);
    }

    #[test]
    fn from_mu_sphere_plane() {
        let mu = 0.4;
        let d = geometry_from_mu(mu, 0.0).unwrap();
        assert!(d.is_sphere_plane());
        let eps = d.y_minus_one;
        assert!(rel(z_from_aspect_ratio(eps), d.z) < 1e-14);
        assert!(rel(1.0 + eps - (eps * (2.0 + eps)).sqrt(), d.z) < 1e-14);
    }

    #[test]
    fn from_mu_rejects_out_of_range() {
        assert!(geometry_from_mu(1.0, 0.3).is_err());
        assert!(geometry_from_mu(1.0, -0.01).is_err());
        assert!(geometry_from_mu(0.0, 0.1).is_err());
        assert!(sphere_geometry_from_mu(1.0, 0.0).is_err());
    }

    #[test]
    fn aspect_ratio_one() {
        assert!(rel(z_from_aspect_ratio(1.0), 2.0 - 3f64.sqrt()) < 1e-15);
    }
}
