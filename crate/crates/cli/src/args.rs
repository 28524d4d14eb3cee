use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphere_casimir::SeriesOptions;

#[derive(Debug, Parser)]
#[command(
    name = "sphere-casimir",
    version,
    about = "Classical Casimir free energy of two Drude spheres"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dirichlet energy, monopole correction and total free energy.
    Energy {
        #[command(flatten)]
        common: Common,
        /// Also report the force proxy -dPhi/dL by central differences.
        #[arg(long)]
        force: bool,
    },
    /// Capacitance matrix and its determinant.
    Capacitance {
        #[command(flatten)]
        common: Common,
    },
    /// Short-distance expansion coefficients (and values when mu is known).
    Expand {
        #[command(flatten)]
        common: Common,
    },
    /// Oracle cross-checks at one geometry.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Write the per-(r, k) oracle table as CSV.
        #[arg(long, value_name = "PATH")]
        dump: Option<PathBuf>,
    },
    /// Evaluate a grid of geometries.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Grid axis `VAR=a,b,c` or `VAR=start:stop:count`; repeat for a product grid.
        #[arg(long = "grid", value_name = "VAR=SPEC", required = true)]
        grid: Vec<GridAxis>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Radius of sphere 1.
    #[arg(long = "R1", alias = "r1", allow_negative_numbers = true)]
    pub r1: Option<f64>,
    /// Radius of sphere 2.
    #[arg(long = "R2", alias = "r2", allow_negative_numbers = true)]
    pub r2: Option<f64>,
    /// Surface-to-surface separation.
    #[arg(long = "L", alias = "l", allow_negative_numbers = true)]
    pub l: Option<f64>,
    /// Bispherical parameter mu.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Radius-ratio invariant u = R1 R2 / (R1 + R2)^2 in [0, 1/4].
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    /// Relative series tolerance, within [1e-15, 1e-3].
    #[arg(long, default_value_t = SeriesOptions::DEFAULT_TOL)]
    pub tol: f64,
    /// Cap on terms per series.
    #[arg(long, default_value_t = SeriesOptions::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    #[arg(long, value_enum, default_value_t = Rep::Auto)]
    pub rep: Rep,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    /// asymptotic below mu = 0.02, round trip below mu = 1, multipole above
    Auto,
    Roundtrip,
    Multipole,
    /// explicit Z-representation of the total energy
    #[value(alias = "closed_form")]
    ClosedForm,
    /// order mu^4 short-distance expansion
    Asymptotic,
}

impl Rep {
    pub fn name(self) -> &'static str {
        match self {
            Rep::Auto => "auto",
            Rep::Roundtrip => "roundtrip",
            Rep::Multipole => "multipole",
            Rep::ClosedForm => "closed-form",
            Rep::Asymptotic => "asymptotic",
        }
    }

    /// The concrete path `auto` takes at a given `mu`.
    pub fn resolve(self, mu: f64) -> Rep {
        match self {
            Rep::Auto if mu < 0.02 => Rep::Asymptotic,
            Rep::Auto if mu < 1.0 => Rep::Roundtrip,
            Rep::Auto => Rep::Multipole,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    R1,
    R2,
    L,
    Mu,
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::R1 => "R1",
            Var::R2 => "R2",
            Var::L => "L",
            Var::Mu => "mu",
            Var::U => "u",
        })
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R1" | "r1" => Ok(Var::R1),
            "R2" | "r2" => Ok(Var::R2),
            "L" | "l" => Ok(Var::L),
            "mu" => Ok(Var::Mu),
            "u" => Ok(Var::U),
            _ => Err(format!(
                "unknown grid variable `{s}` (use R1, R2, L, mu or u)"
            )),
        }
    }
}

/// Largest number of points a single axis may expand to.
pub const MAX_AXIS_POINTS: usize = 1_000_000;

/// One axis of a sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub var: Var,
    pub values: Vec<f64>,
}

fn parse_number(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("`{s}` is not a number"))
}

impl FromStr for GridAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, spec) = s
            .split_once('=')
            .ok_or_else(|| format!("grid axis `{s}` needs the form VAR=SPEC"))?;
        let var: Var = name.trim().parse()?;
        let values = if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            let [start, stop, count] = parts[..] else {
                return Err(format!("range `{spec}` needs start:stop:count"));
            };
            let (start, stop) = (parse_number(start)?, parse_number(stop)?);
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("`{count}` is not a point count"))?;
            if count == 0 || count > MAX_AXIS_POINTS {
                return Err(format!("point count must be in 1..={MAX_AXIS_POINTS}"));
            }
            if count == 1 {
                vec![start]
            } else {
                let step = (stop - start) / (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start + step * i as f64
                        }
                    })
                    .collect()
            }
        } else {
            spec.split(',')
                .map(parse_number)
                .collect::<Result<_, _>>()?
        };
        if values.is_empty() {
            return Err(format!("grid axis `{s}` has no values"));
        }
        Ok(GridAxis { var, values })
    }
}
