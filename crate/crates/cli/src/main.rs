//! `minframe` command-line front end.

mod audit;
mod canon;
mod config;
mod frame;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "minframe", version, about = "Minimal frame averaging toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an equivariance audit over a group x backbone grid.
    Audit {
        /// JSON audit config. Without it the default grid is run.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Canonically label every graph6 line of a file.
    Canon {
        file: PathBuf,
    },
    /// Print the frame descriptor of a matrix under a group.
    Frame {
        /// Group spec as JSON (`{"group": "lorentz", "d": 4}`) or a bare tag.
        #[arg(long)]
        group: String,
        matrix: PathBuf,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or configuration: exit 2.
    Usage(anyhow::Error),
    /// Valid input, but the run failed or breached a threshold: exit 1.
    Run(anyhow::Error),
}

impl Failure {
    pub fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure::Usage(e.into())
    }

    pub fn run(e: impl Into<anyhow::Error>) -> Self {
        Failure::Run(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Audit { config, seed, output } => audit::run(config.as_deref(), seed, output),
        Command::Canon { file } => canon::run(&file),
        Command::Frame { group, matrix } => frame::run(&group, &matrix),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
