//! Command-line front end: energies, capacitance, expansion, oracle checks and sweeps.

mod args;
mod eval;
mod failure;
mod point;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use sphere_casimir::asymptotics::delta_short_distance;
use sphere_casimir::monopole::monopole_delta;
use sphere_casimir::scalar::dirichlet_short_distance;
use sphere_casimir::SeriesOptions;

use args::{Cli, Command, Common, Format, GridAxis, Rep};
use failure::CliError;
use point::{Point, PointSpec};
use report::*;

/// Largest sweep grid accepted.
const MAX_GRID_POINTS: usize = 1_000_000;

struct Outcome {
    body: String,
    verified: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            verified: true,
        }
    }
}

fn options(c: &Common) -> Result<SeriesOptions, CliError> {
    if !(1e-15..=1e-3).contains(&c.tol) {
        return Err(CliError::Usage(format!(
            "--tol must lie in [1e-15, 1e-3], got {}",
            c.tol
        )));
    }
    Ok(SeriesOptions::new(c.tol, c.max_terms)?)
}

fn geometry_block(p: &Point) -> GeometryBlock {
    GeometryBlock {
        r1: Num(p.r1),
        r2: Num(p.r2),
        l: Num(p.l),
        mu: Num(p.derived.mu),
        u: Num(p.derived.u),
        z: Num(p.derived.z),
        v0: Num(p.derived.v0),
    }
}

fn energy(c: &Common, force: bool) -> Result<Outcome, CliError> {
    let opts = options(c)?;
    let p = PointSpec::from(c).resolve()?;
    if c.format == Format::Csv {
        let r = eval::row(&p, c.rep, &opts)?;
        return Ok(Outcome::ok(csv_table([&RowRecord::from(&r)])));
    }
    let e = eval::evaluate(&p, c.rep, &opts)?;
    let mut provenance = Provenance::new("energy", &opts, c.rep.name());
    provenance.representation = e.rep.name();
    if e.rep != Rep::Asymptotic {
        provenance.terms.insert("phi_D", e.terms_d);
        provenance.terms.insert("phi_delta", e.terms_delta);
    }
    let dual = if e.rep == Rep::Asymptotic {
        None
    } else {
        let d = eval::duality(&p, &opts)?;
        Some(DualBlock {
            roundtrip: Num(d.roundtrip),
            multipole: Num(d.multipole),
            relative_difference: Num(d.relative_difference),
            within_tol: d.relative_difference <= opts.tol,
        })
    };
    let force = if force {
        let (value, step) = eval::force_proxy(&p, e.rep, &opts)?;
        Some(ForceBlock {
            value: Num(value),
            step: Num(step),
        })
    } else {
        None
    };
    let report = EnergyReport {
        provenance,
        geometry: geometry_block(&p),
        phi_d: Num(e.phi_d),
        phi_delta: Num(e.phi_delta),
        phi_total: Num(e.phi_total),
        est_err: Num(e.est_err),
        dual,
        force,
    };
    Ok(Outcome::ok(match c.format {
        Format::Json => json(&report),
        _ => {
            let mut t = Text::default();
            provenance_text(&mut t, &report.provenance);
            geometry_text(&mut t, &report.geometry);
            t.num("phi_D", e.phi_d)
                .num("phi_delta", e.phi_delta)
                .num("phi_total", e.phi_total)
                .num("est_err", e.est_err);
            if let Some(d) = &report.dual {
                t.num("phi_D_roundtrip", d.roundtrip.0)
                    .num("phi_D_multipole", d.multipole.0)
                    .num("relative_difference", d.relative_difference.0)
                    .line("within_tol", d.within_tol);
            }
            if let Some(f) = &report.force {
                t.num("minus_dphi_dL", f.value.0)
                    .num("force_step", f.step.0);
            }
            t.finish()
        }
    }))
}

fn capacitance(c: &Common) -> Result<Outcome, CliError> {
    let opts = options(c)?;
    let p = PointSpec::from(c).resolve()?;
    if c.format == Format::Csv {
        p.require_spheres("the capacitance matrix")?;
        let r = eval::row(&p, c.rep, &opts)?;
        return Ok(Outcome::ok(csv_table([&RowRecord::from(&r)])));
    }
    let (m, from_delta, terms) = eval::capacitance(&p, &opts)?;
    let det = m.determinant();
    let mut provenance = Provenance::new("capacitance", &opts, c.rep.name());
    provenance.representation = "series";
    provenance.terms.insert("phi_delta", terms);
    let report = CapacitanceReport {
        provenance,
        geometry: geometry_block(&p),
        c11: Num(m.c11),
        c22: Num(m.c22),
        c12: Num(m.c12),
        determinant: Num(det),
        from_delta: Num(from_delta),
        relative_difference: Num((det - from_delta).abs() / from_delta.abs()),
        positive_definite: m.is_positive_definite(),
    };
    Ok(Outcome::ok(match c.format {
        Format::Json => json(&report),
        _ => {
            let mut t = Text::default();
            provenance_text(&mut t, &report.provenance);
            geometry_text(&mut t, &report.geometry);
            t.num("c11", m.c11)
                .num("c22", m.c22)
                .num("c12", m.c12)
                .num("det_C", det)
                .num("R1R2_exp_phi_delta", from_delta)
                .num("relative_difference", report.relative_difference.0)
                .line("positive_definite", report.positive_definite)
                .finish()
        }
    }))
}

fn expand(c: &Common) -> Result<Outcome, CliError> {
    let opts = options(c)?;
    let spec = PointSpec::from(c);
    let point = match (spec.u, spec.mu, spec.has_physical()) {
        (Some(_), None, false) => None,
        _ => Some(spec.resolve()?),
    };
    let u = point.map_or(spec.u.unwrap_or_default(), |p| p.derived.u);
    let coefficients = eval::coefficient_row(u)?;
    let values = match &point {
        None => None,
        Some(p) => {
            let mu = p.derived.mu;
            let d = delta_short_distance(mu, u)?;
            let phi_d = if mu <= 1.0 {
                Some(dirichlet_short_distance(mu, 2)?)
            } else {
                None
            };
            Some(ExpansionValues {
                mu: Num(mu),
                phi_delta_log_form: Num(d.log_form),
                phi_delta_mercator: Num(d.mercator_form),
                phi_delta_series: Num(monopole_delta(&p.derived, &opts)?.value),
                error_proxy: Num(d.error_proxy),
                beyond_soft_bound: d.beyond_soft_bound,
                phi_d: phi_d.map(Num),
                phi_total_asymptotic: phi_d.map(|x| Num(x + d.mercator_form)),
            })
        }
    };
    let report = ExpandReport {
        provenance: Provenance::new("expand", &opts, Rep::Asymptotic.name()),
        u: Num(u),
        v0: Num(sphere_casimir::asymptotics::v0_from_u(u)),
        coefficients: coefficients.into(),
        values,
    };
    let fmt_opt = |x: Option<Num>| x.map(|n| fmt_num(n.0)).unwrap_or_default();
    Ok(Outcome::ok(match c.format {
        Format::Json => json(&report),
        Format::Csv => {
            let v = report.values.as_ref();
            let mut cols: Vec<String> = vec![fmt_num(u)];
            cols.extend(coefficients.iter().map(|x| fmt_num(*x)));
            cols.push(fmt_opt(v.map(|v| v.mu)));
            cols.push(fmt_opt(v.map(|v| v.phi_delta_mercator)));
            cols.push(fmt_opt(v.map(|v| v.phi_delta_series)));
            cols.push(fmt_opt(v.map(|v| v.error_proxy)));
            format!(
                "u,eps0,delta0,eps1,delta1,eps2,delta2,mu,phi_delta_mercator,phi_delta_series,error_proxy\n{}\n",
                cols.join(",")
            )
        }
        Format::Text => {
            let mut t = Text::default();
            provenance_text(&mut t, &report.provenance);
            t.num("u", u).num("v0", report.v0.0);
            for (name, x) in ["eps0", "delta0", "eps1", "delta1", "eps2", "delta2"]
                .iter()
                .zip(coefficients)
            {
                t.num(name, x);
            }
            if let Some(v) = &report.values {
                t.num("mu", v.mu.0)
                    .num("phi_delta_log_form", v.phi_delta_log_form.0)
                    .num("phi_delta_mercator", v.phi_delta_mercator.0)
                    .num("phi_delta_series", v.phi_delta_series.0)
                    .num("error_proxy", v.error_proxy.0)
                    .line("beyond_soft_bound", v.beyond_soft_bound);
                if let (Some(d), Some(tot)) = (v.phi_d, v.phi_total_asymptotic) {
                    t.num("phi_D_asymptotic", d.0)
                        .num("phi_total_asymptotic", tot.0);
                }
            }
            t.finish()
        }
    }))
}

fn verify(c: &Common, dump: Option<&std::path::Path>) -> Result<Outcome, CliError> {
    let opts = options(c)?;
    let p = PointSpec::from(c).resolve()?;
    let checks = eval::verify(&p, &opts)?;
    if let Some(path) = dump {
        std::fs::write(path, eval::oracle_table(&p)?)?;
    }
    let lines: Vec<CheckLine> = checks.iter().map(CheckLine::from).collect();
    let passed = lines.iter().all(|l| l.passed);
    let report = VerifyReport {
        provenance: Provenance::new("verify", &opts, "oracle"),
        geometry: geometry_block(&p),
        checks: lines,
        passed,
    };
    let body = match c.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("check,deviation,threshold,passed\n");
            for l in &report.checks {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    l.name,
                    fmt_num(l.deviation.0),
                    l.threshold.map(|t| fmt_num(t.0)).unwrap_or_default(),
                    l.passed
                ));
            }
            s
        }
        Format::Text => {
            let mut t = Text::default();
            provenance_text(&mut t, &report.provenance);
            geometry_text(&mut t, &report.geometry);
            for l in &report.checks {
                let verdict = match (l.threshold, l.passed) {
                    (None, _) => "info".to_string(),
                    (Some(th), true) => format!("ok (< {:.0e})", th.0),
                    (Some(th), false) => format!("FAILED (> {:.0e})", th.0),
                };
                t.raw(&format!(
                    "{}: {:.3e} {verdict}\n",
                    l.description, l.deviation.0
                ));
            }
            t.line("passed", passed).finish()
        }
    };
    Ok(Outcome {
        body,
        verified: passed,
    })
}

fn grid_points(base: PointSpec, axes: &[GridAxis]) -> Result<Vec<PointSpec>, CliError> {
    let total = axes
        .iter()
        .try_fold(1usize, |n, a| n.checked_mul(a.values.len()))
        .filter(|n| *n <= MAX_GRID_POINTS)
        .ok_or_else(|| CliError::Usage(format!("grid exceeds {MAX_GRID_POINTS} points")))?;
    let mut points = Vec::with_capacity(total);
    for index in 0..total {
        let mut spec = base;
        let mut rest = index;
        for axis in axes.iter().rev() {
            let n = axis.values.len();
            spec.set(axis.var, axis.values[rest % n]);
            rest /= n;
        }
        points.push(spec);
    }
    Ok(points)
}

fn sweep(c: &Common, axes: &[GridAxis]) -> Result<Outcome, CliError> {
    let opts = options(c)?;
    let specs = grid_points(PointSpec::from(c), axes)?;
    let rows: Vec<RowRecord> = specs
        .par_iter()
        .map(|s| {
            let p = s.resolve()?;
            Ok(RowRecord::from(&eval::row(&p, c.rep, &opts)?))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Outcome::ok(match c.format {
        Format::Csv => csv_table(&rows),
        Format::Json => {
            let mut provenance = Provenance::new("sweep", &opts, c.rep.name());
            if c.rep == Rep::Auto {
                provenance.representation = "per-row";
            }
            provenance
                .terms
                .insert("total", rows.iter().map(|r| r.terms).sum());
            json(&SweepReport { provenance, rows })
        }
        Format::Text => {
            let mut s = String::new();
            for line in std::iter::once(CSV_HEADER.to_string()).chain(rows.iter().map(csv_line)) {
                let cells: Vec<String> = line.split(',').map(|f| format!("{f:>24}")).collect();
                s.push_str(cells.join(" ").trim_start());
                s.push('\n');
            }
            s
        }
    }))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Energy { common, force } => energy(common, *force),
        Command::Capacitance { common } => capacitance(common),
        Command::Expand { common } => expand(common),
        Command::Verify { common, dump } => verify(common, dump.as_deref()),
        Command::Sweep { common, grid } => sweep(common, grid),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    let common = match &cli.command {
        Command::Energy { common, .. }
        | Command::Capacitance { common }
        | Command::Expand { common }
        | Command::Verify { common, .. }
        | Command::Sweep { common, .. } => common,
    };
    common.out.as_deref()
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match out_path(cli) {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome.body)?;
        if outcome.verified {
            Ok(())
        } else {
            Err(CliError::Verification(
                "at least one oracle check exceeded its threshold".into(),
            ))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sphere-casimir: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
