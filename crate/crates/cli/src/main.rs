//! entlab: correlation measures, inequality verification campaigns and
//! canonical state generation on JSON state files.

mod cmd_compute;
mod cmd_states;
mod cmd_verify;
mod errors;
mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "entlab",
    version,
    about = "Correlation and entanglement measures on small quantum states, \
with numeric verification of the formation-cost inequality chain",
    after_help = "All values are printed in bits with a bound-direction suffix \
(exact/upper/lower) so estimates cannot be mistaken for certificates."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a measure on a state file
    Compute(cmd_compute::ComputeArgs),
    /// Run an inequality check on sampled or supplied states
    Verify(cmd_verify::VerifyArgs),
    /// Generate a canonical state file
    States(cmd_states::StatesArgs),
}

#[derive(Args, Clone)]
pub struct OptimizerKnobs {
    /// Independent search restarts per stratum
    #[arg(long)]
    restarts: Option<u32>,
    /// Proposal budget per restart
    #[arg(long = "max-iterations")]
    max_iterations: Option<u32>,
    /// Convergence tolerance on the objective
    #[arg(long)]
    tol: Option<f64>,
    /// Decomposition size for roof searches (default: automatic)
    #[arg(long = "ensemble-size")]
    ensemble_size: Option<usize>,
    /// Seed; generated and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
}

impl OptimizerKnobs {
    /// Resolves the knobs, generating and printing a seed when none is given.
    pub fn resolve(&self) -> roof_optimizer::OptimizerConfig {
        let mut config = roof_optimizer::OptimizerConfig::default();
        if let Some(r) = self.restarts {
            config.restarts = r;
        }
        if let Some(i) = self.max_iterations {
            config.max_iterations = i;
        }
        if let Some(t) = self.tol {
            config.tolerance = t;
        }
        if let Some(s) = self.ensemble_size {
            config.ensemble_size = roof_optimizer::EnsembleSize::Fixed(s);
        }
        config.seed = match self.seed {
            Some(s) => s,
            None => {
                let s: u64 = rand::random();
                println!("seed: {s}");
                s
            }
        };
        config
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute::run(args),
        Command::Verify(args) => cmd_verify::run(args),
        Command::States(args) => cmd_states::run(args),
    };
    match outcome {
        Ok(code) => std::process::ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::ExitCode::from(e.code())
        }
    }
}
