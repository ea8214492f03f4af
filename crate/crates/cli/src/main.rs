use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sepmm_cli::{report, CliError, Report};
use sepmm_core::verify::{Suite, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "sepmm",
    version,
    about = "Measurement models with separable interaction channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a model file.
    Validate {
        file: PathBuf,
        /// Print the canonical form of the file instead of a summary.
        #[arg(long)]
        canonical: bool,
    },
    /// Outcome probabilities and updated states of a model's instrument.
    Measure {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        state: String,
    },
    /// Expectation and variance, plus the pair statistics when two models are given.
    Stats {
        file: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        model2: Option<String>,
        #[arg(long)]
        state: String,
    },
    /// Run the randomized cross-checks.
    Verify {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: u32,
        /// System and probe dimension as `sys,probe`; repeatable.
        #[arg(long = "dims", value_parser = parse_dims, required = true)]
        dims: Vec<(usize, usize)>,
        /// Comma-separated suite names.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "lemma21,duality,thm31,thm32,thm33,thm41,thm42,postprocessing"
        )]
        suites: Vec<Suite>,
        /// Where to write the first counterexample.
        #[arg(long, default_value = "counterexample.json")]
        counterexample: PathBuf,
    },
    /// Rerun the checks on a counterexample file.
    Replay { file: PathBuf },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `sys,probe`, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Validate { file, canonical } => report::validate(&file, canonical),
        Command::Measure { file, model, state } => report::measure(&file, &model, &state),
        Command::Stats {
            file,
            model,
            model2,
            state,
        } => report::stats(&file, &model, model2.as_deref(), &state),
        Command::Verify {
            seed,
            trials,
            dims,
            suites,
            counterexample,
        } => {
            let config = VerifyConfig::new(seed, trials, dims, suites)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            report::verify(&config, &counterexample)
        }
        Command::Replay { file } => report::replay(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
