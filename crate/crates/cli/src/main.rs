use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use obsent::hilbert::ToleranceConfig;
use obsent::qprob::Direction;
use obsent_cli::problem::ProblemSpec;
use obsent_cli::report::run_analysis;
use obsent_cli::scenarios::{scenario, SCENARIO_NAMES};
use obsent_cli::sweep::{run_sweep, SweepConfig};
use obsent_cli::{CliError, EXIT_COUNTEREXAMPLE, EXIT_VALIDATION};

/// Conditional-probability entanglement analysis for observable pairs on
/// pure states. One JSON document in, one JSON document out.
#[derive(Parser)]
#[command(name = "obsent", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Ab,
    Ba,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Ab => Direction::Ab,
            DirectionArg::Ba => Direction::Ba,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a problem: emits the entanglement report, conditional table,
    /// both sequential joint distributions, and the total-probability
    /// decomposition.
    Analyze {
        /// Read the problem JSON from a file instead of stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Conditioning direction; overrides the problem's own field.
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        /// Override the probability comparison tolerance.
        #[arg(long = "tolerance-p")]
        tolerance_p: Option<f64>,
    },
    /// Run randomized equivalence sweeps over commuting dichotomous pairs.
    Sweep {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the probability comparison tolerance.
        #[arg(long = "tolerance-p")]
        tolerance_p: Option<f64>,
    },
    /// Print a named example problem as JSON (pipe it into `analyze`).
    Scenario {
        /// One of: singlet, bell-phi-plus, rotated-singlet, phase-entangled,
        /// dim3-degenerate.
        name: String,
    },
}

fn base_tolerances(tolerance_p: Option<f64>) -> ToleranceConfig {
    let mut tol = ToleranceConfig::default();
    if let Some(eps_p) = tolerance_p {
        tol.eps_p = eps_p;
    }
    tol
}

fn read_problem(file: Option<&PathBuf>) -> Result<ProblemSpec, CliError> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            buffer
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze {
            file,
            direction,
            tolerance_p,
        } => {
            let mut spec = read_problem(file.as_ref())?;
            if let Some(d) = direction {
                spec.direction = d.into();
            }
            let problem = spec.resolve(base_tolerances(tolerance_p))?;
            let output = run_analysis(&problem)?;
            println!("{}", serde_json::to_string(&output)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            count,
            dim,
            seed,
            tolerance_p,
        } => {
            let summary = run_sweep(&SweepConfig {
                count,
                dim,
                seed,
                tolerances: base_tolerances(tolerance_p),
            })?;
            println!("{}", serde_json::to_string(&summary)?);
            if summary.all_passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_COUNTEREXAMPLE as u8))
            }
        }
        Command::Scenario { name } => {
            let spec = scenario(&name).map_err(|e| match e {
                CliError::UnknownScenario(n) => CliError::UnknownScenario(format!(
                    "{n} (expected one of: {})",
                    SCENARIO_NAMES.join(", ")
                )),
                other => other,
            })?;
            println!("{}", serde_json::to_string(&spec)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            let doc = error.to_document();
            eprintln!("{}", serde_json::to_string(&doc).expect("serializable"));
            ExitCode::from(EXIT_VALIDATION as u8)
        }
    }
}
