//! Batch command-line surface for weighted zero-sum monoid computations.
//!
//! Exit codes: 0 success, 1 usage or computation error, 2 order cap
//! exceeded, 3 acceptance failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wzs_cli::commands::{self, Format};
use wzs_core::Error;

#[derive(Parser)]
#[command(name = "wzs", about = "Weighted zero-sum monoids over finite abelian groups", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Invariant factors of the group, comma separated (e.g. "3" or "2,4").
    #[arg(long)]
    group: String,
    /// Weight set: id, pm, or aut.
    #[arg(long, default_value = "pm")]
    weights: String,
    /// Output format: json, csv, or text.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct QformCommon {
    /// Negative discriminant, 0 or 1 mod 4 (e.g. -23).
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
    /// Output format: json, csv, or text.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the atoms and Davenport constants of the monoid.
    Atoms {
        #[command(flatten)]
        common: Common,
    },
    /// Report factorization invariants with explicit bounds.
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Total length bound for length-set tables.
        #[arg(long, default_value_t = 10)]
        length_bound: u32,
        /// Chain-length cap for the omega invariant.
        #[arg(long, default_value_t = 5)]
        omega_cap: u32,
        /// Largest k for unions of length sets.
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Set of factorization lengths of one sequence.
    Lengths {
        #[command(flatten)]
        common: Common,
        /// Sequence literal, e.g. "[(1)^5,(4)^5]".
        #[arg(long)]
        seq: String,
    },
    /// Seminormality verdict with witness search.
    Seminormal {
        #[command(flatten)]
        common: Common,
        /// Witness search length bound.
        #[arg(long, default_value_t = 4)]
        length_bound: u32,
    },
    /// The class semigroup of the monoid in its free monoid.
    ClassSemigroup {
        #[command(flatten)]
        common: Common,
    },
    /// Binary quadratic form computations.
    Qform {
        #[command(subcommand)]
        sub: QformCmd,
    },
    /// Run the acceptance suite; exits 3 on any failure.
    Acceptance,
}

#[derive(Subcommand)]
enum QformCmd {
    /// Reduced forms and structure of the class group.
    Classgroup {
        #[command(flatten)]
        common: QformCommon,
    },
    /// Transfer and direct representation verdicts for one integer.
    Check {
        #[command(flatten)]
        common: QformCommon,
        /// The integer to test.
        #[arg(long)]
        n: u64,
    },
    /// CSV sweep over all admissible integers up to a bound.
    Sweep {
        #[command(flatten)]
        common: QformCommon,
        /// Largest integer to include.
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
    },
}

fn emit(out: Option<&std::path::Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OrderCapExceeded { .. } => 2,
        _ => 1,
    }
}

fn run() -> Result<(), (u8, String)> {
    // single-threaded deterministic execution; the thread-count override is
    // validated for interface compatibility
    if let Ok(raw) = std::env::var("WZS_THREADS") {
        if raw.parse::<usize>().map(|n| n >= 1) != Ok(true) {
            return Err((1, format!("WZS_THREADS must be a positive integer, got {raw:?}")));
        }
    }
    let cli = Cli::try_parse().map_err(|e| (1, e.to_string()))?;
    let fail = |e: Error| (exit_code_for(&e), e.to_string());
    match cli.command {
        Cmd::Atoms { common } => {
            let g = commands::parse_group(&common.group).map_err(fail)?;
            let text = commands::cmd_atoms(&g, &common.weights, common.format).map_err(fail)?;
            emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
        }
        Cmd::Invariants {
            common,
            length_bound,
            omega_cap,
            k_max,
        } => {
            let g = commands::parse_group(&common.group).map_err(fail)?;
            let text = commands::cmd_invariants(
                &g,
                &common.weights,
                length_bound,
                omega_cap,
                k_max,
                common.format,
            )
            .map_err(fail)?;
            emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
        }
        Cmd::Lengths { common, seq } => {
            let g = commands::parse_group(&common.group).map_err(fail)?;
            let text =
                commands::cmd_lengths(&g, &common.weights, &seq, common.format).map_err(fail)?;
            emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
        }
        Cmd::Seminormal {
            common,
            length_bound,
        } => {
            let g = commands::parse_group(&common.group).map_err(fail)?;
            let text = commands::cmd_seminormal(&g, &common.weights, length_bound, common.format)
                .map_err(fail)?;
            emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
        }
        Cmd::ClassSemigroup { common } => {
            let g = commands::parse_group(&common.group).map_err(fail)?;
            let text =
                commands::cmd_class_semigroup(&g, &common.weights, common.format).map_err(fail)?;
            emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
        }
        Cmd::Qform { sub } => match sub {
            QformCmd::Classgroup { common } => {
                let text = commands::cmd_qform_classgroup(common.disc, common.format)
                    .map_err(fail)?;
                emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
            }
            QformCmd::Check { common, n } => {
                let text =
                    commands::cmd_qform_check(common.disc, n, common.format).map_err(fail)?;
                emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
            }
            QformCmd::Sweep { common, max_n } => {
                let text =
                    commands::cmd_qform_sweep(common.disc, max_n, common.format).map_err(fail)?;
                emit(common.out.as_deref(), &text).map_err(|e| (1, e.to_string()))
            }
        },
        Cmd::Acceptance => {
            let bin = std::env::current_exe().ok();
            let results = wzs_cli::acceptance::run_all(bin.as_deref());
            let mut failed = false;
            for (name, result) in &results {
                match result {
                    Ok(()) => println!("criterion {name}: PASS"),
                    Err(msg) => {
                        failed = true;
                        println!("criterion {name}: FAIL ({msg})");
                    }
                }
            }
            if failed {
                Err((3, "acceptance suite failed".to_string()))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
