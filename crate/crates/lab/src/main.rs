use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use boostlab::config::{ConfigArgs, ScenarioConfig};
use boostlab::scenarios::{self, Check, Outcome};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boostlab",
    version,
    about = "Entanglement of two massive spin-1 particles under boosts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Realignment sum minus one of the boosted bound-entangled family.
    RealignmentCurve,
    /// Invariants and labels for seeded random simplex states.
    SimplexScan,
    /// PPT activation by a boost of a momentum-entangled product state.
    Activate,
    /// Search for separable decompositions of boosted states.
    Certify,
    /// Check a separable decomposition stored as JSON.
    VerifyAppendix {
        /// Read this JSON file instead of the bundled one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Calibrated witness values, fits and separable windows.
    WitnessReport,
}

fn report<R>(outcome: &Outcome<R>) -> bool {
    println!("wrote {}", outcome.artifact.display());
    for Check {
        name,
        passed,
        detail,
    } in &outcome.checks
    {
        println!("[{}] {name}: {detail}", if *passed { "ok" } else { "FAIL" });
    }
    outcome.passed()
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = ScenarioConfig::resolve(&cli.config)?;
    Ok(match &cli.command {
        Command::RealignmentCurve => report(&scenarios::realignment_curve(&cfg)?),
        Command::SimplexScan => report(&scenarios::simplex_scan(&cfg)?),
        Command::Activate => report(&scenarios::activate(&cfg)?),
        Command::Certify => report(&scenarios::certify(&cfg)?),
        Command::VerifyAppendix { fixture } => {
            report(&scenarios::verify_appendix(&cfg, fixture.as_deref())?)
        }
        Command::WitnessReport => report(&scenarios::witness_report(&cfg)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
