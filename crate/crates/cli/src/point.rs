use sphere_casimir::geometry::sphere_geometry_from_mu;
use sphere_casimir::{derive_parameters, geometry_from_mu, Error, GeometryDerived, SphereGeometry};

use crate::args::{Common, Var};
use crate::failure::CliError;

/// Raw geometry flags; exactly one of the two styles must be complete.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PointSpec {
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub l: Option<f64>,
    pub mu: Option<f64>,
    pub u: Option<f64>,
}

impl From<&Common> for PointSpec {
    fn from(c: &Common) -> Self {
        Self {
            r1: c.r1,
            r2: c.r2,
            l: c.l,
            mu: c.mu,
            u: c.u,
        }
    }
}

/// A validated geometry with both its physical and bispherical description.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub derived: GeometryDerived,
    /// Finite spheres; `None` in the sphere-plane limit.
    pub spheres: Option<SphereGeometry>,
    /// Reported `(R1, R2, L)`; `R1` is infinite for a plane.
    pub r1: f64,
    pub r2: f64,
    pub l: f64,
}

impl PointSpec {
    pub fn set(&mut self, var: Var, value: f64) {
        let slot = match var {
            Var::R1 => &mut self.r1,
            Var::R2 => &mut self.r2,
            Var::L => &mut self.l,
            Var::Mu => &mut self.mu,
            Var::U => &mut self.u,
        };
        *slot = Some(value);
    }

    pub fn has_physical(&self) -> bool {
        self.r1.is_some() || self.r2.is_some() || self.l.is_some()
    }

    pub fn has_natural(&self) -> bool {
        self.mu.is_some() || self.u.is_some()
    }

    pub fn resolve(&self) -> Result<Point, CliError> {
        match (self.has_physical(), self.has_natural()) {
            (true, true) => Err(CliError::Usage(
                "give either --R1 --R2 --L or --mu --u, not both".into(),
            )),
            (false, false) => Err(CliError::Usage(
                "no geometry: give --R1 --R2 --L or --mu --u".into(),
            )),
            (true, false) => {
                let (Some(r1), Some(r2), Some(l)) = (self.r1, self.r2, self.l) else {
                    return Err(CliError::Usage(
                        "--R1, --R2 and --L must all be given".into(),
                    ));
                };
                Point::from_spheres(SphereGeometry::new(r1, r2, l)?)
            }
            (false, true) => {
                let (Some(mu), Some(u)) = (self.mu, self.u) else {
                    return Err(CliError::Usage("--mu and --u must both be given".into()));
                };
                Point::from_natural(mu, u)
            }
        }
    }
}

/// `arcosh(1 + t)` without forming `1 + t`.
fn arcosh_one_plus(t: f64) -> f64 {
    (t + (t * (2.0 + t)).sqrt()).ln_1p()
}

impl Point {
    pub fn from_spheres(g: SphereGeometry) -> Result<Self, CliError> {
        Ok(Self {
            derived: derive_parameters(&g)?,
            spheres: Some(g),
            r1: g.r1,
            r2: g.r2,
            l: g.l,
        })
    }

    /// Radii normalized to `R1 + R2 = 1`; for `u = 0` a unit sphere above a plane.
    pub fn from_natural(mu: f64, u: f64) -> Result<Self, CliError> {
        if mu == 0.0 {
            return Err(Error::DegenerateGeometry("mu = 0: surfaces in contact".into()).into());
        }
        let derived = geometry_from_mu(mu, u)?;
        if u == 0.0 {
            return Ok(Self {
                derived,
                spheres: None,
                r1: f64::INFINITY,
                r2: 1.0,
                l: derived.y_minus_one,
            });
        }
        let g = sphere_geometry_from_mu(mu, u)?;
        Ok(Self {
            derived,
            spheres: Some(g),
            r1: g.r1,
            r2: g.r2,
            l: g.l,
        })
    }

    /// Same radii at another separation.
    pub fn with_separation(&self, l: f64) -> Result<Self, CliError> {
        match self.spheres {
            Some(g) => Self::from_spheres(g.with_separation(l)?),
            None => {
                if !(l > 0.0 && l.is_finite()) {
                    return Err(CliError::Usage(format!(
                        "separation must be positive, got {l}"
                    )));
                }
                Self::from_natural(arcosh_one_plus(l / self.r2), 0.0)
            }
        }
    }

    pub fn require_spheres(&self, what: &str) -> Result<SphereGeometry, CliError> {
        self.spheres
            .ok_or_else(|| CliError::Usage(format!("{what} needs two finite spheres (u > 0)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn styles_are_exclusive() {
        let both = PointSpec {
            r1: Some(1.0),
            mu: Some(1.0),
            ..Default::default()
        };
        assert!(matches!(both.resolve(), Err(CliError::Usage(_))));
        assert!(matches!(
            PointSpec::default().resolve(),
            Err(CliError::Usage(_))
        ));
        let partial = PointSpec {
            r1: Some(1.0),
            r2: Some(1.0),
            ..Default::default()
        };
        assert!(matches!(partial.resolve(), Err(CliError::Usage(_))));
    }

    #[test]
    fn natural_and_physical_agree() {
        let p = Point::from_natural(0.7, 0.2).unwrap();
        let q = Point::from_spheres(p.spheres.unwrap()).unwrap();
        assert!((p.derived.mu - q.derived.mu).abs() < 1e-14);
        assert!((p.r1 + p.r2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plane_separation_round_trips() {
        let p = Point::from_natural(0.4, 0.0).unwrap();
        assert!(p.r1.is_infinite());
        let q = p.with_separation(p.l).unwrap();
        assert!((q.derived.mu - 0.4).abs() < 1e-14);
    }

    #[test]
    fn contact_is_degenerate() {
        let s = PointSpec {
            r1: Some(1.0),
            r2: Some(2.0),
            l: Some(0.0),
            ..Default::default()
        };
        assert!(matches!(
            s.resolve(),
            Err(CliError::Core(Error::DegenerateGeometry(_)))
        ));
    }
}
