//! `twirlsim`: rotation-set classification, twirl demos, pulse programs and
//! the two-spin twirl experiments.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;
use error::CliResult;

#[derive(Parser)]
#[command(name = "twirlsim", version, about = "Two-qubit twirls and a two-spin NMR simulator")]
struct Cli {
    /// Spin-system file with nu_i_hz, nu_s_hz and j_hz lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for random states and Monte Carlo rotation sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of gradient phases per crush.
    #[arg(long, global = true)]
    ng: Option<usize>,
    /// Gradient duration in units of 1/delta.
    #[arg(long = "grad-k", global = true)]
    grad_k: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a rotation set as averager, partial twirl or full twirl.
    Classify {
        spec: String,
        /// Tolerance for all checks (defaults depend on the sampling).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Singular values of the Bloch-vector map of a rotation set.
    Shrink { spec: String },
    /// Bilateral average of a two-qubit state over a rotation set.
    Twirl {
        spec: String,
        /// random, werner:EPS or bell:psi-|psi+|phi-|phi+
        #[arg(long, default_value = "random")]
        state: String,
    },
    /// Run a pulse program on the thermal state.
    Run {
        program: PathBuf,
        /// Line broadening of the written spectrum, Hz.
        #[arg(long, default_value_t = 1.0)]
        lb: f64,
    },
    /// Stepwise twirl: spectra and metrics after 0 to 3 stages.
    Experiment1 {
        /// Preparation delay, s.
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Full twirl of a family of states with stepped preparation delay.
    Experiment2 {
        #[arg(long)]
        tau0: Option<f64>,
        #[arg(long)]
        dtau: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let cfg = RunConfig::resolve(cli.config.as_deref(), cli.out, cli.seed, cli.ng, cli.grad_k)?;
    let print_paths = |paths: Vec<String>| paths.iter().for_each(|p| println!("wrote {p}"));
    match cli.command {
        Command::Classify { spec, tol, json } => print!("{}", commands::classify(&cfg, &spec, tol, json)?),
        Command::Shrink { spec } => print!("{}", commands::shrink(&cfg, &spec)?),
        Command::Twirl { spec, state } => print!("{}", commands::twirl(&cfg, &spec, &state)?),
        Command::Run { program, lb } => print_paths(commands::run(&cfg, &program, lb)?),
        Command::Experiment1 { tau, points } => print_paths(commands::experiment1(&cfg, tau, points)?),
        Command::Experiment2 { tau0, dtau, steps } => {
            print_paths(commands::experiment2(&cfg, tau0, dtau, steps)?)
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
