mod ct;
mod pg;

use std::path::PathBuf;
use std::process::ExitCode;

use cgt_core::classops::ClassOpsError;
use cgt_core::permgrp::PermError;
use cgt_core::pipeline::{self, PipelineError, VerifyOptions, DEFAULT_BUDGET, DEFAULT_SEED};
use cgt_core::tables::TableError;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cgt", version, about = "Exact character tables, permutation groups and the claim checks")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Node limit for each backtrack search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Character-table operations.
    #[command(subcommand)]
    Ct(ct::CtCommand),
    /// Permutation-group queries.
    #[command(subcommand)]
    Pg(pg::PgCommand),
    /// Run the claim checks over a data directory.
    Verify {
        #[arg(long, default_value = "./data")]
        data: PathBuf,
        /// Comma-separated step ids, e.g. R1,C2.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

pub struct Config {
    pub seed: u64,
    pub budget: u64,
    pub format: OutputFormat,
}

/// Exit 1: a mathematical check failed. Exit 2: bad input. Exit 3: a
/// resource limit was hit.
#[derive(Debug)]
pub enum CliError {
    Failed(String),
    Input(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failed(m) | CliError::Input(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::OrderMismatch { .. }
            | TableError::CentralizerMismatch { .. }
            | TableError::PowerMapMismatch { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::ResourceLimit { .. } | PermError::TooLarge { .. } => CliError::Resource(e.to_string()),
            PermError::Parse { .. }
            | PermError::PointOutOfRange { .. }
            | PermError::RepeatedPoint { .. }
            | PermError::DegreeMismatch(..) => CliError::Input(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ClassOpsError> for CliError {
    fn from(e: ClassOpsError) -> Self {
        match e {
            ClassOpsError::Table(t) => t.into(),
            ClassOpsError::PartialTable(_) => CliError::Input(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn verify(cfg: &Config, data: PathBuf, only: Option<Vec<String>>) -> Result<(), CliError> {
    let opts = VerifyOptions { seed: cfg.seed, budget: cfg.budget, only };
    let report = pipeline::run_verification(&data, &opts)?;
    let format = match cfg.format {
        OutputFormat::Text => pipeline::Format::Text,
        OutputFormat::Json => pipeline::Format::Json,
    };
    print!("{}", pipeline::render_report(&report, format));
    if report.overall_pass() {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = Config { seed: cli.seed, budget: cli.budget, format: cli.format };
    let result = match cli.command {
        Command::Ct(c) => ct::run(&cfg, c),
        Command::Pg(c) => pg::run(&cfg, c),
        Command::Verify { data, only } => verify(&cfg, data, only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
