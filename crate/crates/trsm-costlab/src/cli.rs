//! Command-line front end.
//!
//! Subcommands: `classify`, `gaps`, `overlaps`, `bounds`, `simulate`,
//! `verify`, `sweep`, `map`. Single-shot results print as one JSON line or a
//! short `key=value` line; sweeps emit CSV; maps emit ASCII. Exit codes:
//! 0 success, 1 usage error, 2 invalid shape (non-power-of-two where
//! required), 3 over-decomposed shape.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bounds_report, BoundsReport};
use crate::classify::{
    classify, format_interval_union, gap_set, overlap_set, region_map, CaseLabel, RuleSet,
};
use crate::cost::{MachineParams, ProblemShape};
use crate::kernel::verify_corpus;
use crate::sim::{trsm_cost, CommModel, SimError};
use crate::sweep::{run_sweep, write_csv, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_SHAPE: i32 = 2;
pub const EXIT_OVER_DECOMPOSED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RulesArg {
    Original,
    Revised,
}

impl From<RulesArg> for RuleSet {
    fn from(value: RulesArg) -> Self {
        match value {
            RulesArg::Original => RuleSet::Original,
            RulesArg::Revised => RuleSet::RevisedTwoLarge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CollectiveArg {
    Pairwise,
    Tree,
}

impl From<CollectiveArg> for CommModel {
    fn from(value: CollectiveArg) -> Self {
        match value {
            CollectiveArg::Pairwise => CommModel::Pairwise,
            CollectiveArg::Tree => CommModel::Tree,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "trsm-costlab",
    about = "Regime classification, bandwidth bounds, and cost simulation for recursive TRSM",
    disable_help_subcommand = true
)]
struct Cli {
    /// Regime condition set.
    #[arg(long, global = true, value_enum, default_value = "original")]
    rules: RulesArg,
    /// Collective model for simulated exchanges.
    #[arg(long, global = true, value_enum, default_value = "pairwise")]
    collective: CollectiveArg,
    /// JSON file with machine parameters (keys alpha, beta, gamma).
    #[arg(long, global = true)]
    machine: Option<PathBuf>,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a shape into regimes.
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
    },
    /// Print the ratio region no case covers.
    Gaps {
        #[arg(long)]
        p: u64,
    },
    /// Print the ratio region at least two cases cover.
    Overlaps {
        #[arg(long)]
        p: u64,
    },
    /// Evaluate claimed and corrected bandwidth bounds for a shape.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
    },
    /// Simulate the recursion and print its critical-path cost.
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n0: u64,
    },
    /// Run the seeded solver-verification corpus.
    Verify {
        #[arg(long, default_value_t = 50)]
        instances: usize,
    },
    /// Sweep ratios per processor count and emit CSV.
    Sweep {
        /// Comma-separated processor counts.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, default_value_t = 0.03125)]
        r_min: f64,
        #[arg(long, default_value_t = 32.0)]
        r_max: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Fixed n; k varies to realize each sampled ratio.
        #[arg(long, default_value_t = 256)]
        n_scale: u64,
        #[arg(long, default_value_t = 1)]
        n0: u64,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the simulator columns empty.
        #[arg(long)]
        no_sim: bool,
    },
    /// Render an ASCII regime map over (ratio, p).
    Map {
        /// Comma-separated processor counts, one row each.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, default_value_t = 0.03125)]
        r_min: f64,
        #[arg(long, default_value_t = 32.0)]
        r_max: f64,
        #[arg(long, default_value_t = 64)]
        columns: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = match e {
            SimError::NotPowerOfTwo { .. } => EXIT_INVALID_SHAPE,
            SimError::OverDecomposed { .. } | SimError::OverDecomposedMatmul { .. } => {
                EXIT_OVER_DECOMPOSED
            }
            SimError::InvalidGroup(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyOutput {
    n: u64,
    k: u64,
    p: u64,
    ratio: f64,
    rules: RuleSet,
    cases: Vec<CaseLabel>,
    is_gap: bool,
    is_overlap: bool,
}

#[derive(Serialize)]
struct BoundsOutput {
    n: u64,
    k: u64,
    p: u64,
    #[serde(flatten)]
    report: BoundsReport,
}

/// Parses and executes one invocation, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            let code = if e.exit_code() == 0 {
                EXIT_OK
            } else {
                EXIT_USAGE
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let rules: RuleSet = cli.rules.into();
    let collective: CommModel = cli.collective.into();
    let machine = match &cli.machine {
        Some(path) => Some(
            MachineParams::from_json_file(path)
                .map_err(|e| Failure::usage(format!("cannot load machine file: {e}")))?,
        ),
        None => None,
    };

    match cli.command {
        Command::Classify { n, k, p } => {
            let shape = new_shape(n, k, p, 1)?;
            let c = classify(&shape, rules);
            let out = ClassifyOutput {
                n,
                k,
                p,
                ratio: c.ratio,
                rules,
                cases: c.labels,
                is_gap: c.is_gap,
                is_overlap: c.is_overlap,
            };
            println!("{}", serde_json::to_string(&out).expect("serializable"));
            Ok(())
        }
        Command::Gaps { p } => {
            require_positive(p)?;
            println!("{}", format_interval_union(&gap_set(p, rules)));
            Ok(())
        }
        Command::Overlaps { p } => {
            require_positive(p)?;
            println!("{}", format_interval_union(&overlap_set(p, rules)));
            Ok(())
        }
        Command::Bounds { n, k, p } => {
            let shape = new_shape(n, k, p, 1)?;
            let out = BoundsOutput {
                n,
                k,
                p,
                report: bounds_report(&shape),
            };
            println!("{}", serde_json::to_string(&out).expect("serializable"));
            Ok(())
        }
        Command::Simulate { n, k, p, n0 } => {
            let shape = new_shape(n, k, p, n0)?;
            let cost = trsm_cost(&shape, collective)?;
            match machine {
                Some(m) => println!(
                    "F={} W={} S={} T={}",
                    cost.flops,
                    cost.words,
                    cost.messages,
                    cost.total_time(&m)
                ),
                None => println!("F={} W={} S={}", cost.flops, cost.words, cost.messages),
            }
            Ok(())
        }
        Command::Verify { instances } => {
            if instances == 0 {
                return Err(Failure::usage("need at least one instance"));
            }
            let report = verify_corpus(cli.seed, instances);
            let tol = 1e-10;
            println!("verify: {} instances, seed={}", instances, report.seed);
            println!("max rel diff = {:e} (tol {:e})", report.max_rel_diff, tol);
            println!("max residual = {:e} (tol {:e})", report.max_residual, tol);
            if report.passed(tol) {
                println!("PASS");
                Ok(())
            } else {
                println!("FAIL");
                Err(Failure::usage("verification exceeded tolerance"))
            }
        }
        Command::Sweep {
            p,
            r_min,
            r_max,
            samples,
            n_scale,
            n0,
            out,
            no_sim,
        } => {
            let cfg = SweepConfig {
                p_values: p,
                r_min,
                r_max,
                samples,
                n_scale,
                n0,
                rules,
                collective,
                seed: cli.seed,
                simulate: !no_sim,
            };
            let rows = run_sweep(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| {
                        Failure::usage(format!("cannot write {}: {e}", path.display()))
                    })?;
                    write_csv(&rows, BufWriter::new(file))
                }
                None => write_csv(&rows, io::stdout().lock()),
            }
            .map_err(|e| Failure::usage(format!("write failed: {e}")))
        }
        Command::Map {
            p,
            r_min,
            r_max,
            columns,
        } => {
            let map = region_map(&p, r_min, r_max, columns, rules)
                .map_err(|e| Failure::usage(e.to_string()))?;
            print!("{}", map.render());
            Ok(())
        }
    }
}

fn new_shape(n: u64, k: u64, p: u64, n0: u64) -> Result<ProblemShape, Failure> {
    ProblemShape::new(n, k, p, n0).map_err(|e| Failure {
        code: EXIT_INVALID_SHAPE,
        message: e.to_string(),
    })
}

fn require_positive(p: u64) -> Result<(), Failure> {
    if p == 0 {
        Err(Failure {
            code: EXIT_INVALID_SHAPE,
            message: "p must be at least 1".to_string(),
        })
    } else {
        Ok(())
    }
}
