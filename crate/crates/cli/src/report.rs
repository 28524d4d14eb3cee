use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use sphere_casimir::{SeriesOptions, VERSION};

use crate::eval::{Check, Row};

/// A float printed with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

/// Fixed `d.dddddddddddddddde±x` rendering shared by every format.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub library: String,
    pub command: &'static str,
    pub tolerance: Num,
    pub max_terms: usize,
    pub representation_requested: &'static str,
    pub representation: &'static str,
    pub terms: BTreeMap<&'static str, usize>,
}

impl Provenance {
    pub fn new(command: &'static str, opts: &SeriesOptions, requested: &'static str) -> Self {
        Self {
            library: format!("sphere-casimir {VERSION}"),
            command,
            tolerance: Num(opts.tol),
            max_terms: opts.max_terms,
            representation_requested: requested,
            representation: requested,
            terms: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometryBlock {
    #[serde(rename = "R1")]
    pub r1: Num,
    #[serde(rename = "R2")]
    pub r2: Num,
    #[serde(rename = "L")]
    pub l: Num,
    pub mu: Num,
    pub u: Num,
    #[serde(rename = "Z")]
    pub z: Num,
    pub v0: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualBlock {
    #[serde(rename = "phi_D_roundtrip")]
    pub roundtrip: Num,
    #[serde(rename = "phi_D_multipole")]
    pub multipole: Num,
    pub relative_difference: Num,
    pub within_tol: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForceBlock {
    #[serde(rename = "minus_dphi_dL")]
    pub value: Num,
    pub step: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub provenance: Provenance,
    pub geometry: GeometryBlock,
    #[serde(rename = "phi_D")]
    pub phi_d: Num,
    pub phi_delta: Num,
    pub phi_total: Num,
    pub est_err: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force: Option<ForceBlock>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacitanceReport {
    pub provenance: Provenance,
    pub geometry: GeometryBlock,
    pub c11: Num,
    pub c22: Num,
    pub c12: Num,
    pub determinant: Num,
    #[serde(rename = "R1R2_exp_phi_delta")]
    pub from_delta: Num,
    pub relative_difference: Num,
    pub positive_definite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Coefficients {
    pub eps0: Num,
    pub delta0: Num,
    pub eps1: Num,
    pub delta1: Num,
    pub eps2: Num,
    pub delta2: Num,
}

impl From<[f64; 6]> for Coefficients {
    fn from(c: [f64; 6]) -> Self {
        Self {
            eps0: Num(c[0]),
            delta0: Num(c[1]),
            eps1: Num(c[2]),
            delta1: Num(c[3]),
            eps2: Num(c[4]),
            delta2: Num(c[5]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionValues {
    pub mu: Num,
    pub phi_delta_log_form: Num,
    pub phi_delta_mercator: Num,
    pub phi_delta_series: Num,
    pub error_proxy: Num,
    pub beyond_soft_bound: bool,
    #[serde(rename = "phi_D_asymptotic", skip_serializing_if = "Option::is_none")]
    pub phi_d: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_total_asymptotic: Option<Num>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpandReport {
    pub provenance: Provenance,
    pub u: Num,
    pub v0: Num,
    pub coefficients: Coefficients,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<ExpansionValues>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub description: &'static str,
    pub deviation: Num,
    pub threshold: Option<Num>,
    pub passed: bool,
}

impl From<&Check> for CheckLine {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name,
            description: c.description,
            deviation: Num(c.deviation),
            threshold: c.threshold.map(Num),
            passed: c.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub provenance: Provenance,
    pub geometry: GeometryBlock,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowRecord {
    #[serde(rename = "R1")]
    pub r1: Num,
    #[serde(rename = "R2")]
    pub r2: Num,
    #[serde(rename = "L")]
    pub l: Num,
    pub mu: Num,
    pub u: Num,
    #[serde(rename = "Z")]
    pub z: Num,
    #[serde(rename = "phi_D")]
    pub phi_d: Num,
    pub phi_delta: Num,
    pub phi_total: Num,
    pub c11: Option<Num>,
    pub c22: Option<Num>,
    pub c12: Option<Num>,
    pub rep: &'static str,
    pub terms: usize,
    pub est_err: Num,
}

impl From<&Row> for RowRecord {
    fn from(r: &Row) -> Self {
        Self {
            r1: Num(r.r1),
            r2: Num(r.r2),
            l: Num(r.l),
            mu: Num(r.mu),
            u: Num(r.u),
            z: Num(r.z),
            phi_d: Num(r.eval.phi_d),
            phi_delta: Num(r.eval.phi_delta),
            phi_total: Num(r.eval.phi_total),
            c11: r.capacitance.map(|c| Num(c.c11)),
            c22: r.capacitance.map(|c| Num(c.c22)),
            c12: r.capacitance.map(|c| Num(c.c12)),
            rep: r.eval.rep.name(),
            terms: r.eval.terms(),
            est_err: Num(r.eval.est_err),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub provenance: Provenance,
    pub rows: Vec<RowRecord>,
}

pub const CSV_HEADER: &str =
    "R1,R2,L,mu,u,Z,phi_D,phi_delta,phi_total,c11,c22,c12,rep,terms,est_err";

fn opt(x: Option<Num>) -> String {
    x.map(|n| fmt_num(n.0)).unwrap_or_default()
}

pub fn csv_line(r: &RowRecord) -> String {
    [
        fmt_num(r.r1.0),
        fmt_num(r.r2.0),
        fmt_num(r.l.0),
        fmt_num(r.mu.0),
        fmt_num(r.u.0),
        fmt_num(r.z.0),
        fmt_num(r.phi_d.0),
        fmt_num(r.phi_delta.0),
        fmt_num(r.phi_total.0),
        opt(r.c11),
        opt(r.c22),
        opt(r.c12),
        r.rep.to_string(),
        r.terms.to_string(),
        fmt_num(r.est_err.0),
    ]
    .join(",")
}

pub fn csv_table<'a>(rows: impl IntoIterator<Item = &'a RowRecord>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_line(r));
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// `key = value` lines for the text format.
#[derive(Default)]
pub struct Text(String);

impl Text {
    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.0, "{key:<24} = {value}");
        self
    }

    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.line(key, fmt_num(x))
    }

    pub fn raw(&mut self, s: &str) -> &mut Self {
        self.0.push_str(s);
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.0)
    }
}

pub fn provenance_text(t: &mut Text, p: &Provenance) {
    t.line("library", &p.library)
        .num("tolerance", p.tolerance.0)
        .line("max_terms", p.max_terms)
        .line("representation", p.representation);
    if p.representation != p.representation_requested {
        t.line("requested", p.representation_requested);
    }
    for (k, v) in &p.terms {
        t.line(&format!("terms.{k}"), v);
    }
}

pub fn geometry_text(t: &mut Text, g: &GeometryBlock) {
    t.num("R1", g.r1.0)
        .num("R2", g.r2.0)
        .num("L", g.l.0)
        .num("mu", g.mu.0)
        .num("u", g.u.0)
        .num("Z", g.z.0)
        .num("v0", g.v0.0);
}
