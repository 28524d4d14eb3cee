use sphere_casimir::asymptotics::{delta_short_distance, epsilon_delta};
use sphere_casimir::monopole::{
    capacitance_matrix, free_energy_z_form, monopole_delta, CapacitanceMatrix,
};
use sphere_casimir::oracle::{
    aggregate_table_csv, block_determinant_closed_form, block_determinant_direct,
    cyclic_matrix_determinant, delta_partial_sum_enumeration, delta_r_enumeration,
    delta_r_recursion, generating_function_report, Color,
};
use sphere_casimir::scalar::{
    dirichlet_cyclic_determinant, dirichlet_free_energy_multipole, dirichlet_free_energy_roundtrip,
    dirichlet_short_distance, CyclicSign,
};
use sphere_casimir::{derive_parameters, SeriesOptions};

use crate::args::Rep;
use crate::failure::CliError;
use crate::point::Point;

/// Energies at one point along one concrete representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub rep: Rep,
    pub phi_d: f64,
    pub phi_delta: f64,
    pub phi_total: f64,
    pub terms_d: usize,
    pub terms_delta: usize,
    pub est_err: f64,
}

impl Evaluation {
    pub fn terms(&self) -> usize {
        self.terms_d + self.terms_delta
    }
}

/// Evaluate along `rep`, routing `auto` by `mu`.
pub fn evaluate(p: &Point, rep: Rep, opts: &SeriesOptions) -> Result<Evaluation, CliError> {
    let g = &p.derived;
    let rep = rep.resolve(g.mu);
    let series = |d: sphere_casimir::SeriesResult| -> Result<Evaluation, CliError> {
        let delta = monopole_delta(g, opts)?;
        Ok(Evaluation {
            rep,
            phi_d: d.value,
            phi_delta: delta.value,
            phi_total: d.value + delta.value,
            terms_d: d.terms_used,
            terms_delta: delta.terms_used,
            est_err: d.last_term.abs() + delta.last_term.abs(),
        })
    };
    match rep {
        Rep::Roundtrip => series(dirichlet_free_energy_roundtrip(g, opts)?),
        Rep::Auto | Rep::Multipole => series(dirichlet_free_energy_multipole(g, opts)?),
        Rep::ClosedForm => {
            let d = dirichlet_free_energy_multipole(g, opts)?;
            let total = free_energy_z_form(g, opts)?;
            Ok(Evaluation {
                rep,
                phi_d: d.value,
                phi_delta: total.value - d.value,
                phi_total: total.value,
                terms_d: d.terms_used,
                terms_delta: total.terms_used,
                est_err: d.last_term.abs() + total.last_term.abs(),
            })
        }
        Rep::Asymptotic => {
            let d = dirichlet_short_distance(g.mu, 2)?;
            let next = dirichlet_short_distance(g.mu, 3)?;
            let delta = delta_short_distance(g.mu, g.u)?;
            Ok(Evaluation {
                rep,
                phi_d: d,
                phi_delta: delta.mercator_form,
                phi_total: d + delta.mercator_form,
                terms_d: 0,
                terms_delta: 0,
                est_err: (next - d).abs() + delta.error_proxy,
            })
        }
    }
}

/// Both series forms of the Dirichlet energy.
#[derive(Debug, Clone, Copy)]
pub struct Duality {
    pub roundtrip: f64,
    pub multipole: f64,
    pub relative_difference: f64,
}

pub fn duality(p: &Point, opts: &SeriesOptions) -> Result<Duality, CliError> {
    let roundtrip = dirichlet_free_energy_roundtrip(&p.derived, opts)?.value;
    let multipole = dirichlet_free_energy_multipole(&p.derived, opts)?.value;
    Ok(Duality {
        roundtrip,
        multipole,
        relative_difference: rel(roundtrip, multipole),
    })
}

/// `-dPhi_total/dL` by a central difference with step `cbrt(eps) L`.
pub fn force_proxy(p: &Point, rep: Rep, opts: &SeriesOptions) -> Result<(f64, f64), CliError> {
    let h = f64::EPSILON.cbrt() * p.l;
    let plus = evaluate(&p.with_separation(p.l + h)?, rep, opts)?.phi_total;
    let minus = evaluate(&p.with_separation(p.l - h)?, rep, opts)?.phi_total;
    Ok((-(plus - minus) / (2.0 * h), h))
}

/// Capacitance matrix and `R1 R2 exp(Phi_Delta)` for comparison with its determinant.
pub fn capacitance(
    p: &Point,
    opts: &SeriesOptions,
) -> Result<(CapacitanceMatrix, f64, usize), CliError> {
    let g = p.require_spheres("the capacitance matrix")?;
    let c = capacitance_matrix(&g, opts)?;
    let delta = monopole_delta(&derive_parameters(&g)?, opts)?;
    Ok((c, g.r1 * g.r2 * delta.value.exp(), delta.terms_used))
}

/// One sweep/CSV row.
#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub r1: f64,
    pub r2: f64,
    pub l: f64,
    pub mu: f64,
    pub u: f64,
    pub z: f64,
    pub eval: Evaluation,
    pub capacitance: Option<CapacitanceMatrix>,
}

pub fn row(p: &Point, rep: Rep, opts: &SeriesOptions) -> Result<Row, CliError> {
    let eval = evaluate(p, rep, opts)?;
    let capacitance = match p.spheres {
        Some(g) => Some(capacitance_matrix(&g, opts)?),
        None => None,
    };
    Ok(Row {
        r1: p.r1,
        r2: p.r2,
        l: p.l,
        mu: p.derived.mu,
        u: p.derived.u,
        z: p.derived.z,
        eval,
        capacitance,
    })
}

/// `eps_0, delta_0, eps_1, delta_1, eps_2, delta_2` at `u`.
pub fn coefficient_row(u: f64) -> Result<[f64; 6], CliError> {
    let c = epsilon_delta(u)?;
    Ok([c.eps[0], c.del[0], c.eps[1], c.del[1], c.eps[2], c.del[2]])
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// One oracle comparison; `threshold = None` marks a diagnostic that cannot fail.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    pub deviation: f64,
    pub threshold: Option<f64>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.threshold.is_none_or(|t| self.deviation <= t)
    }
}

pub const ORACLE_R: usize = 6;

pub fn verify(p: &Point, opts: &SeriesOptions) -> Result<Vec<Check>, CliError> {
    let g = &p.derived;
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for r in 1..=ORACLE_R {
        worst = worst.max(rel(delta_r_enumeration(r, g)?, delta_r_recursion(r, g)));
    }
    checks.push(Check {
        name: "enumeration_vs_recursion",
        description: "max |enumeration - recursion| / |recursion| over r <= 6",
        deviation: worst,
        threshold: Some(1e-12),
    });

    let mut worst: f64 = 0.0;
    for r in 1..=8 {
        for sign in [CyclicSign::Plus, CyclicSign::Minus] {
            let dense = cyclic_matrix_determinant(r, sign, g)?;
            worst = worst.max(rel(dense, dirichlet_cyclic_determinant(r, sign, g)));
        }
    }
    checks.push(Check {
        name: "cyclic_determinants",
        description: "dense vs closed-form cyclic determinants, r <= 8, both sign classes",
        deviation: worst,
        threshold: Some(1e-10),
    });

    let mut worst: f64 = 0.0;
    for n in 1..=20 {
        for start in [Color::One, Color::Two] {
            let direct = block_determinant_direct(n, start, &vec![1.0; n - 1], g)?;
            worst = worst.max(rel(direct, block_determinant_closed_form(n, start, g)));
        }
    }
    checks.push(Check {
        name: "block_determinants",
        description: "continuant vs Chebyshev block determinants, n <= 20",
        deviation: worst,
        threshold: Some(1e-10),
    });

    let tight = SeriesOptions::new(1e-15, opts.max_terms)?;
    let report = generating_function_report(g, &tight, 1e-10)?;
    checks.push(Check {
        name: "generating_function",
        description: "explicit H_e sum vs d/dt ln D(t) at sampled t",
        deviation: report.max_relative_deviation,
        threshold: Some(1e-10),
    });

    let d = duality(p, opts)?;
    checks.push(Check {
        name: "representation_duality",
        description: "round-trip vs multipole Dirichlet energy",
        deviation: d.relative_difference,
        threshold: Some((10.0 * opts.tol).max(1e-11)),
    });

    let exact = monopole_delta(g, opts)?.value;
    if let Some(spheres) = p.spheres {
        let c = capacitance_matrix(&spheres, opts)?;
        checks.push(Check {
            name: "capacitance_link",
            description: "det C vs R1 R2 exp(Phi_Delta)",
            deviation: rel(c.determinant(), spheres.r1 * spheres.r2 * exact.exp()),
            threshold: Some((10.0 * opts.tol).max(1e-12)),
        });
        let swapped = monopole_delta(&derive_parameters(&spheres.swapped())?, opts)?.value;
        checks.push(Check {
            name: "exchange_symmetry",
            description: "Phi_Delta under R1 <-> R2",
            deviation: rel(swapped, exact),
            threshold: Some(1e-14),
        });
    }

    checks.push(Check {
        name: "partial_sum_gap",
        description: "|-sum_(r<=6) Delta_r / r - Phi_Delta| (diagnostic)",
        deviation: (delta_partial_sum_enumeration(ORACLE_R, g)? - exact).abs(),
        threshold: None,
    });
    Ok(checks)
}

pub fn oracle_table(p: &Point) -> Result<String, CliError> {
    Ok(aggregate_table_csv(ORACLE_R, &p.derived)?)
}
