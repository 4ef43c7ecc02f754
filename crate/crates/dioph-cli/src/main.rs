//! `dioph` — experiments in metric Diophantine approximation from the shell.
//!
//! Every subcommand writes CSV and JSON artifacts plus a manifest into the
//! output directory. Exit codes: 0 ok, 2 validation, 3 budget,
//! 4 internal-consistency failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::FileConfig;
use dioph::profile::{ApproxProfile, RangeKind};

#[derive(Parser)]
#[command(name = "dioph", version, about = "Workbench for metric Diophantine approximation")]
struct Cli {
    /// Key-value config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV/JSON artifacts and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Constant,
    Power,
    FactorialBlocks,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RangeArg {
    Standard,
    Extended,
    Unrestricted,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    /// Approximation-function family.
    #[arg(long, value_enum, default_value = "constant")]
    family: FamilyArg,

    /// Constant family: the value of f.
    #[arg(long)]
    value: Option<f64>,

    /// Power family: exponent tau > 1 (arc radius n^-tau).
    #[arg(long)]
    tau: Option<f64>,

    /// Factorial-blocks family: cap on the factorial index.
    #[arg(long)]
    cap: Option<u32>,

    /// Table family: path of a `n f(n) theta(n)` file.
    #[arg(long)]
    table_file: Option<PathBuf>,

    /// Constant inhomogeneous shift theta in [0, 1/2].
    #[arg(long)]
    theta: Option<f64>,

    /// Override the declared range constraint.
    #[arg(long, value_enum)]
    range: Option<RangeArg>,
}

impl ProfileArgs {
    fn build(&self) -> Result<ApproxProfile, Failure> {
        let mut issues = Vec::new();
        match self.family {
            FamilyArg::Constant => {
                if self.tau.is_some() || self.cap.is_some() || self.table_file.is_some() {
                    issues.push("constant family takes only --value".to_string());
                }
            }
            FamilyArg::Power => {
                if self.tau.is_none() {
                    issues.push("power family requires --tau".to_string());
                }
                if self.value.is_some() || self.cap.is_some() || self.table_file.is_some() {
                    issues.push("power family takes only --tau".to_string());
                }
            }
            FamilyArg::FactorialBlocks => {
                if self.value.is_some() || self.tau.is_some() || self.table_file.is_some() {
                    issues.push("factorial-blocks family takes only --cap".to_string());
                }
            }
            FamilyArg::Table => {
                if self.table_file.is_none() {
                    issues.push("table family requires --table-file".to_string());
                }
            }
        }
        if let Some(theta) = self.theta {
            if !(0.0..=0.5).contains(&theta) {
                issues.push(format!("--theta {theta} violates 0 <= theta <= 1/2"));
            }
        }
        if !issues.is_empty() {
            return Err(Failure::Validation(issues));
        }

        let profile = match self.family {
            FamilyArg::Constant => ApproxProfile::constant(self.value.unwrap_or(0.5)),
            FamilyArg::Power => ApproxProfile::power(self.tau.unwrap()),
            FamilyArg::FactorialBlocks => {
                ApproxProfile::factorial_blocks(self.cap.unwrap_or(3))
            }
            FamilyArg::Table => ApproxProfile::from_table_file(self.table_file.as_ref().unwrap()),
        };
        let mut profile = profile.map_err(Failure::Lib)?;
        if let Some(theta) = self.theta {
            profile = profile.with_constant_shift(theta).map_err(Failure::Lib)?;
        }
        if let Some(range) = self.range {
            profile = profile.with_range(match range {
                RangeArg::Standard => RangeKind::Standard,
                RangeArg::Extended => RangeKind::Extended,
                RangeArg::Unrestricted => RangeKind::Unrestricted,
            });
        }
        Ok(profile)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build arithmetic tables and report sieve statistics.
    Sieve {
        #[arg(long)]
        limit: Option<u64>,
        /// Also dump the first rows of the tables as CSV.
        #[arg(long, default_value_t = 0)]
        dump: u64,
    },
    /// Materialize approximation sets and compare measures to the identity.
    Measure {
        #[arg(long)]
        n: u64,
        /// Inclusive end of a denominator range (defaults to --n).
        #[arg(long)]
        n_to: Option<u64>,
        /// Use all fractions instead of reduced ones.
        #[arg(long)]
        full_fractions: bool,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Intersection measure of a pair: series with tail bound vs exact sweep,
    /// optionally with the second-moment ratio over a whole range.
    Intersect {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        /// Also compute the Borel-Cantelli ratio over n, m up to this bound.
        #[arg(long)]
        ratio_up_to: Option<u64>,
        /// Ratio mode: exact sweeps or the series.
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Use all fractions in the ratio instead of reduced ones.
        #[arg(long)]
        full_fractions: bool,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Count approximation solutions at sampled points.
    Count {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also estimate the tail fraction at beta = E_N^rho.
        #[arg(long)]
        beta_exponent: Option<f64>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Dimension report from counting functions, with optional box counting.
    Dimension {
        /// Power of two; the counting estimator scans up to here.
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 6.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 0.25)]
        alpha_step: f64,
        #[arg(long, default_value_t = 16)]
        growth_threshold: u64,
        /// Run the box-counting estimator as well.
        #[arg(long)]
        boxes: bool,
        /// Comma-separated block cutoffs for box counting.
        #[arg(long)]
        box_schedule: Option<String>,
        #[arg(long)]
        full_fractions: bool,
        #[arg(long)]
        shift_override: Option<f64>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Trace a divergence criterion over checkpoints.
    Criteria {
        /// One of: reduced-second-moment, reduced-log-power,
        /// dimension-function, all-fractions, positive-measure-pair,
        /// envelope.
        #[arg(long)]
        kind: String,
        /// Comma-separated checkpoints, or `dyadic:LO:HI` for 2^LO..2^HI.
        #[arg(long)]
        checkpoints: String,
        /// dimension-function: exponent of h(x) = x^s.
        #[arg(long)]
        h_exponent: Option<f64>,
        /// dimension-function: weight of the max term (n or phi).
        #[arg(long)]
        weight: Option<String>,
        /// envelope: log exponent of the upper bound.
        #[arg(long)]
        env_a: Option<f64>,
        /// envelope: log exponent of the divergence denominator.
        #[arg(long)]
        env_b: Option<f64>,
        /// envelope: coefficient of the upper bound.
        #[arg(long, default_value_t = 1.0)]
        env_coeff: f64,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Classical bound families traced over their standard ranges.
    Bounds {
        /// ramanujan-mean, divisor-square, divisor-gcd, mertens, totient,
        /// leveque or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Smaller ranges for a quick look.
        #[arg(long)]
        quick: bool,
    },
    /// Cross-check battery: closed forms against oracles.
    Verify {
        /// Acceptance-scale ranges instead of the quick ones.
        #[arg(long)]
        full: bool,
    },
}

/// A failed run: either aggregated validation issues or a library error.
pub enum Failure {
    Validation(Vec<String>),
    Lib(dioph::Error),
}

impl From<dioph::Error> for Failure {
    fn from(e: dioph::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(dioph::Error::Io(e))
    }
}

fn failure_report(failure: &Failure) -> (u8, serde_json::Value) {
    match failure {
        Failure::Validation(messages) => (
            2,
            serde_json::json!({"error": {"kind": "validation", "messages": messages}}),
        ),
        Failure::Lib(err) => {
            let (code, kind) = match err {
                dioph::Error::Budget { .. } => (3, "budget"),
                dioph::Error::Consistency(_) => (4, "internal-consistency"),
                dioph::Error::Capacity { .. } => (2, "capacity"),
                dioph::Error::Degenerate(_) => (2, "degenerate"),
                dioph::Error::Validation(_) => (2, "validation"),
                dioph::Error::Io(_) => (2, "io"),
            };
            (
                code,
                serde_json::json!({"error": {"kind": kind, "messages": [err.to_string()]}}),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let file_cfg = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(cfg) => cfg,
            Err(messages) => {
                let (code, report) = failure_report(&Failure::Validation(messages));
                eprintln!("{report}");
                return ExitCode::from(code);
            }
        },
        None => FileConfig::new(),
    };

    let out_dir = cli
        .out
        .clone()
        .or_else(|| file_cfg.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    match commands::run(&cli.command, &file_cfg, &out_dir) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, report) = failure_report(&failure);
            eprintln!("{report}");
            ExitCode::from(code)
        }
    }
}
