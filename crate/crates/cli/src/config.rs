use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffcount::algebra::{enumerate_irreducibles, FieldSpec, Poly};
use ffcount::asym::{AnalyticConfig, RangePolicy};
use ffcount::exactcount::CountMode;
use ffcount::Budget;
use serde::{Deserialize, Serialize};

use crate::range::IntRange;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ffcount",
    version,
    about = "Exact and asymptotic counts of polynomials over finite fields by number of prime factors"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Field order, when it is prime.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Field characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Extension degree over F_p.
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// Irreducible F_p polynomial of degree e defining F_q; defaults to the first one enumerated.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Uniformity constant for k <= A log n.
    #[arg(long = "A", global = true, default_value_t = 2.0)]
    pub a: f64,
    /// Minimum number of degree classes in analytic Euler products.
    #[arg(long, global = true, default_value_t = 60)]
    pub euler_degree: usize,
    /// Evaluate main terms outside the proven parameter range.
    #[arg(long = "override", global = true)]
    pub override_range: bool,
    /// Largest brute-force enumeration run as an oracle.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub brute_max: u64,
    #[arg(long, global = true)]
    pub budget_enumeration: Option<u64>,
    #[arg(long, global = true)]
    pub budget_unit_group: Option<u64>,
    #[arg(long, global = true)]
    pub budget_irreducibles: Option<u64>,
    #[arg(long, global = true)]
    pub budget_series_degree: Option<usize>,
    /// Byte cap for series storage; FFCOUNT_BUDGET_BYTES is used when absent.
    #[arg(long, global = true)]
    pub budget_bytes: Option<u64>,
    /// Print the resolved run configuration and exit.
    #[arg(long, global = true)]
    pub emit_config: bool,
    /// Run from a configuration written by --emit-config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Squarefree,
    All,
}

impl From<Mode> for CountMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Squarefree => CountMode::Squarefree,
            Mode::All => CountMode::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Exact Π_k(n) or ρ_k(n), checked against enumeration when feasible.
    Count {
        #[arg(long)]
        n: IntRange,
        /// Defaults to every k from 0 to n.
        #[arg(long)]
        k: Option<IntRange>,
        #[arg(long, value_enum, default_value_t = Mode::Squarefree)]
        mode: Mode,
    },
    /// The global main term and G((k-1)/log n).
    Asym {
        #[arg(long)]
        n: IntRange,
        #[arg(long)]
        k: IntRange,
    },
    /// Exact global counts against the main term.
    Compare {
        #[arg(long)]
        n: IntRange,
        #[arg(long)]
        k: IntRange,
    },
    /// Counts in the progression f ≡ g mod d.
    Ap {
        #[arg(long)]
        d: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: IntRange,
        #[arg(long)]
        k: IntRange,
    },
    /// Counts in the interval deg(f - g) <= h.
    Interval {
        /// Centre of the interval; defaults to X^n.
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: IntRange,
        #[arg(long)]
        k: IntRange,
    },
    /// Inverse-root moduli of every non-principal L-polynomial mod d.
    Weil {
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Mean and variance of the number of distinct prime factors.
    OmegaStats {
        #[arg(long)]
        n: IntRange,
    },
    /// Exact counts against the large-q limit.
    Qlimit {
        #[arg(long)]
        n: IntRange,
        #[arg(long)]
        k: IntRange,
    },
    /// Quick cross-module consistency suite.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Asym { .. } => "asym",
            Command::Compare { .. } => "compare",
            Command::Ap { .. } => "ap",
            Command::Interval { .. } => "interval",
            Command::Weil { .. } => "weil",
            Command::OmegaStats { .. } => "omega-stats",
            Command::Qlimit { .. } => "qlimit",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    pub e: u32,
    /// Ascending F_p coefficients of the defining polynomial when `e > 1`.
    pub modulus: Option<String>,
}

impl FieldConfig {
    pub fn field(&self) -> Result<FieldSpec, CliError> {
        let base = FieldSpec::prime(self.p)?;
        match (&self.modulus, self.e) {
            (None, 1) => Ok(base),
            (Some(m), _) => {
                let poly = Poly::parse(base, m)?;
                if poly.deg() != Some(self.e as usize) {
                    return Err(CliError::Usage(format!(
                        "--modulus {m} must have degree e = {}",
                        self.e
                    )));
                }
                Ok(FieldSpec::extension(self.p, poly.coeffs())?)
            }
            (None, _) => Err(CliError::Usage("extension fields need --modulus".into())),
        }
    }
}

/// Everything that determines a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: Option<FieldConfig>,
    pub a: f64,
    pub euler_degree: usize,
    pub override_range: bool,
    pub brute_max: u64,
    pub budget: Budget,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub deterministic: bool,
    pub command: Command,
}

impl RunConfig {
    pub fn from_args(global: &GlobalArgs, command: Command) -> Result<Self, CliError> {
        let mut budget = Budget::from_env()?;
        if let Some(v) = global.budget_enumeration {
            budget.enumeration = v;
        }
        if let Some(v) = global.budget_unit_group {
            budget.unit_group = v;
        }
        if let Some(v) = global.budget_irreducibles {
            budget.irreducibles = v;
        }
        if let Some(v) = global.budget_series_degree {
            budget.series_degree_q2 = v;
        }
        if let Some(v) = global.budget_bytes {
            budget.bytes = v;
        }
        let field = resolve_field(global, &budget)?;
        let config = RunConfig {
            field,
            a: global.a,
            euler_degree: global.euler_degree,
            override_range: global.override_range,
            brute_max: global.brute_max,
            budget,
            format: global.format,
            out: global.out.clone(),
            deterministic: true,
            command,
        };
        config.analytic()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad config: {e}")))?;
        if let Some(f) = &config.field {
            f.field()?;
        }
        config.analytic()?;
        Ok(config)
    }

    pub fn field(&self) -> Result<FieldSpec, CliError> {
        self.field
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --q or --p", self.command.name())))?
            .field()
    }

    pub fn analytic(&self) -> Result<AnalyticConfig, CliError> {
        let cfg = AnalyticConfig {
            a: self.a,
            degree: self.euler_degree,
            ..AnalyticConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn policy(&self) -> RangePolicy {
        if self.override_range {
            RangePolicy::Override
        } else {
            RangePolicy::Enforce
        }
    }
}

fn resolve_field(global: &GlobalArgs, budget: &Budget) -> Result<Option<FieldConfig>, CliError> {
    let p = match (global.q, global.p) {
        (None, None) => {
            if global.e.is_some() || global.modulus.is_some() {
                return Err(CliError::Usage("--e and --modulus need --p".into()));
            }
            return Ok(None);
        }
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --q or --p, not both".into())),
        (Some(q), None) => {
            if global.e.is_some() || global.modulus.is_some() {
                return Err(CliError::Usage(
                    "--q is shorthand for a prime field; use --p with --e".into(),
                ));
            }
            if FieldSpec::prime(q).is_err() {
                return Err(CliError::Usage(format!(
                    "--q {q} is not prime; use --p, --e and --modulus"
                )));
            }
            q
        }
        (None, Some(p)) => p,
    };
    let e = global.e.unwrap_or(1);
    if e == 0 {
        return Err(CliError::Usage("--e must be at least 1".into()));
    }
    let modulus = match (&global.modulus, e) {
        (Some(m), _) => Some(m.clone()),
        (None, 1) => None,
        (None, _) => {
            let base = FieldSpec::prime(p)?;
            let first = enumerate_irreducibles(base, e as usize, budget)?
                .into_iter()
                .next()
                .expect("irreducibles exist in every degree");
            Some(first.to_string())
        }
    };
    let config = FieldConfig { p, e, modulus };
    config.field()?;
    Ok(Some(config))
}
