use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sarbandit_cli::{bounds_command, complexity_command, exit_code, experiments_list, run_command};
use sarbandit_core::config::{builtin_experiment, load_config, Budget, ExperimentConfig};
use sarbandit_core::{Error, Result};

/// Fixed-budget best-arm identification simulator.
#[derive(Parser)]
#[command(name = "sarbandit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Builtin experiments.
    Experiments {
        #[command(subcommand)]
        action: ExperimentsAction,
    },
    /// Estimate misidentification probabilities and write a CSV table.
    Run {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Override the (possibly automatic) budget.
        #[arg(long)]
        budget: Option<u64>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hardness measures and clamped error bounds as CSV.
    Bounds {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Per-arm gaps and hardness measures.
    Complexity {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ExperimentsAction {
    /// List the builtin experiments.
    List,
    /// Print a builtin experiment as a config file.
    Show { number: usize },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin experiment number (1..6).
    #[arg(long)]
    experiment: Option<usize>,
    /// Path to a TOML experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<ExperimentConfig> {
        match (&self.config, self.experiment) {
            (Some(path), _) => load_config(path),
            (None, Some(n)) => builtin_experiment(n),
            (None, None) => Err(Error::Config("need --experiment or --config".into())),
        }
    }
}

fn override_budget(config: &mut ExperimentConfig, budget: Option<u64>) {
    if let Some(n) = budget {
        config.budget = Budget::Fixed(n);
    }
}

fn execute(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    match cli.command {
        Command::Experiments {
            action: ExperimentsAction::List,
        } => {
            print!("{}", experiments_list());
            Ok(())
        }
        Command::Experiments {
            action: ExperimentsAction::Show { number },
        } => {
            print!("{}", builtin_experiment(number)?.to_toml());
            Ok(())
        }
        Command::Run {
            source,
            trials,
            seed,
            budget,
            out,
        } => {
            let mut config = source.load()?;
            if let Some(t) = trials {
                config.trials = t;
            }
            if let Some(s) = seed {
                config.seed = s;
            }
            override_budget(&mut config, budget);
            config.validate()?;
            match out {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    run_command(&config, &mut w, stdout.lock())?;
                    w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
                }
                None => run_command(&config, stdout.lock(), io::stderr().lock()),
            }
        }
        Command::Bounds { source, budget } => {
            let mut config = source.load()?;
            override_budget(&mut config, budget);
            bounds_command(&config, stdout.lock())
        }
        Command::Complexity { source, m } => complexity_command(&source.load()?, m, stdout.lock()),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
