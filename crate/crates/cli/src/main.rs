//! `wdc`: closures, covering numbers and witnesses for weight-determined
//! subsets of finite grids.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.

mod commands;
mod output;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use wdc_core::verify::VerifyOptions;

use commands::{Caps, ClosureMode, Usage, VerificationFailed, WitnessKind};
use output::{emit, Format};

#[derive(Parser)]
#[command(name = "wdc", version, about = "Closures and covering numbers of weight-determined grid sets")]
struct Cli {
    /// Emit CSV.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,

    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

const GRID_HELP: &str = "axis sizes \"3,3,3\", \"cube:n\", or levels per axis \"0,1,3|0,1,3\"";
const SET_HELP: &str =
    "weights \"1,3,5\", ranges \"0-2\", \"t:i\", \"parity:0|1\", \"mod:m:i\", \"{}\", or \"all\"";

#[derive(Subcommand)]
enum Command {
    /// Layer sizes of a grid.
    Layers {
        #[arg(long, help = GRID_HELP)]
        grid: String,
    },
    /// Strict unimodality of a uniform grid, by the axis criterion and by a layer scan.
    Su2 {
        #[arg(long, help = GRID_HELP)]
        grid: String,
    },
    /// Iterates and fixpoint of the L operator on [0,N].
    Lbar {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, help = SET_HELP)]
        set: String,
    },
    /// Least i making E (d,i)-admitting; every d when --d is omitted.
    Admitting {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, help = SET_HELP)]
        set: String,
    },
    /// Degree-d closures of the lift of E, computed by exact linear algebra.
    Closure {
        #[arg(long, help = GRID_HELP)]
        grid: String,
        #[arg(long)]
        d: usize,
        #[arg(long, help = SET_HELP)]
        set: String,
        #[arg(long, value_enum, default_value = "zstar")]
        mode: ClosureMode,
        /// Include an integer basis of the degree-d polynomials vanishing on the lift.
        #[arg(long)]
        basis: bool,
    },
    /// Cover numbers from the brute-force oracles.
    Hcover {
        #[arg(long, help = GRID_HELP)]
        grid: String,
        #[arg(long, help = SET_HELP, required_unless_present = "all")]
        set: Option<String>,
        /// Every proper subset of [0,N].
        #[arg(long, conflicts_with = "set")]
        all: bool,
    },
    /// Cover numbers from the closed formulas, with bounds on exact hyperplane covers.
    Covers {
        #[arg(long, help = GRID_HELP)]
        grid: String,
        #[arg(long, help = SET_HELP, required_unless_present = "all")]
        set: Option<String>,
        /// Every proper subset of [0,N].
        #[arg(long, conflicts_with = "set")]
        all: bool,
    },
    /// Build and check an explicit cover.
    Witness {
        #[arg(long, help = GRID_HELP)]
        grid: String,
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long, help = SET_HELP)]
        set: Option<String>,
        /// Number of pairs for --kind pairing.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Run the acceptance criteria; exits 3 if any fails.
    Verify {
        /// Subset of criteria, e.g. "1-3,7".
        #[arg(long)]
        criteria: Option<String>,
        /// Include the expensive instances.
        #[arg(long, env = "WDC_SLOW")]
        slow: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Time the L-bar fixpoint at N = 10^4, 10^5, 10^6; exits 3 unless scaling is near-linear.
    Bench {
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Timed runs per size; the fastest counts.
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

fn run(cli: Cli) -> Result<()> {
    let format = match (cli.csv, cli.json) {
        (true, _) => Format::Csv,
        (_, true) => Format::Json,
        _ => Format::Human,
    };
    let caps = Caps::from_env()?;
    let sweep_spec = |set: Option<String>, all: bool| if all { "all".to_string() } else { set.unwrap_or_default() };
    match cli.command {
        Command::Layers { grid } => emit(format, &commands::layers(&grid)?),
        Command::Su2 { grid } => emit(format, &commands::su2(&grid)?),
        Command::Lbar { n, d, set } => {
            let rows = commands::lbar(n, d, &set)?;
            if format == Format::Human {
                let single = rows.len() == 1;
                for r in &rows {
                    if single {
                        println!("{}", r.arrow_line());
                    } else {
                        println!("{}: {}", r.set(), r.arrow_line());
                    }
                }
                return Ok(());
            }
            emit(format, &rows)
        }
        Command::Admitting { n, d, set } => emit(format, &commands::admitting(n, d, &set)?),
        Command::Closure { grid, d, set, mode, basis } => match mode {
            ClosureMode::Zstar => emit(format, &commands::closure(&grid, d, &set, basis, caps, commands::zstar_row)?),
            ClosureMode::Z => emit(format, &commands::closure(&grid, d, &set, basis, caps, commands::z_row)?),
            ClosureMode::Hilbert => {
                emit(format, &commands::closure(&grid, d, &set, basis, caps, commands::hilbert_row)?)
            }
        },
        Command::Hcover { grid, set, all } => emit(format, &commands::hcover(&grid, &sweep_spec(set, all), caps)?),
        Command::Covers { grid, set, all } => emit(format, &commands::covers(&grid, &sweep_spec(set, all), caps)?),
        Command::Witness { grid, kind, set, i } => {
            emit(format, &commands::witness(&grid, kind, set.as_deref(), i, caps)?)
        }
        Command::Verify { criteria, slow, seed } => {
            let ids = commands::parse_criteria(criteria.as_deref())?;
            let mut opts = VerifyOptions { slow, ..Default::default() };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let rows = commands::run_verify(&ids, &opts);
            if format == Format::Human {
                for r in &rows {
                    println!("{}", r.human_line());
                    for f in r.failures() {
                        println!("    {f}");
                    }
                }
            } else {
                emit(format, &rows)?;
            }
            let failed: Vec<String> = rows.iter().filter(|r| !r.passed()).map(|r| r.id().to_string()).collect();
            if !failed.is_empty() {
                return Err(VerificationFailed(format!("criteria {} failed", failed.join(","))).into());
            }
            Ok(())
        }
        Command::Bench { seed, reps } => {
            let b = commands::bench(seed, reps);
            emit(format, &b.rows)?;
            if format == Format::Human {
                println!("time(10^6)/time(10^5) = {:.2}", b.ratio);
            }
            commands::bench_check(&b)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 3;
    }
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<wdc_core::Error>() {
        Some(
            wdc_core::Error::Parse(_) | wdc_core::Error::OutOfRange { .. } | wdc_core::Error::InvalidGrid(_),
        ) => 2,
        Some(wdc_core::Error::Witness(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wdc: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
