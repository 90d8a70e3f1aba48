//! Ordered claim checks over the bundled data, each ending as pass, fail,
//! assumed or skipped, with the values that justify the verdict.

mod render;
mod steps;

use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::permgrp::{parse_gens, PermError, Permutation, StabilizerChain};
use crate::tables::{parse_table, CharacterTable, TableError};

pub use render::{render_report, Format};

/// Step ids in execution order.
pub const STEP_IDS: [&str; 16] =
    ["R1", "R2", "R3", "R4", "C1", "C2", "P1", "U1", "U2", "U3", "U4", "F1", "A1", "A2", "A3", "A4"];

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("missing mandatory data file {0}")]
    MissingData(PathBuf),
    #[error("{file}: {source}")]
    Table { file: String, source: TableError },
    #[error("{file}: {source}")]
    Perm { file: String, source: PermError },
    #[error("unknown step id {0}")]
    UnknownStep(String),
    #[error("budget must be positive")]
    ZeroBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Assumed,
    Skipped(String),
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Assumed => "assumed",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    /// Ordered `(name, value)` pairs.
    pub witnesses: Vec<(String, String)>,
}

impl Step {
    pub fn witness(&self, name: &str) -> Option<&str> {
        self.witnesses.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub seed: u64,
    pub budget: u64,
    pub steps: Vec<Step>,
}

impl ClaimReport {
    pub fn overall_pass(&self) -> bool {
        self.steps.iter().all(|s| s.status != Status::Fail)
    }

    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: u64,
    /// Restrict the run to these step ids (kept in execution order).
    pub only: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, budget: DEFAULT_BUDGET, only: None }
    }
}

pub(crate) struct Gens {
    pub degree: usize,
    pub gens: Vec<Permutation>,
}

/// Everything read from a data directory. Stabilizer chains are built on
/// first use.
pub struct Inputs {
    pub(crate) s3: Arc<CharacterTable>,
    pub(crate) th: Arc<CharacterTable>,
    pub(crate) psl28_table: Option<Arc<CharacterTable>>,
    pub(crate) a5: Gens,
    pub(crate) psl28: Gens,
    pub(crate) psu38: Option<Result<Gens, String>>,
    pub(crate) psu38_sub: Option<Result<Gens, String>>,
    pub(crate) psu38_ext: Option<Result<Gens, String>>,
    psu38_chain: OnceLock<Result<StabilizerChain, String>>,
}

fn read_optional(dir: &Path, name: &str) -> Option<String> {
    std::fs::read_to_string(dir.join(name)).ok()
}

fn read_mandatory(dir: &Path, name: &str) -> Result<String, PipelineError> {
    std::fs::read_to_string(dir.join(name)).map_err(|_| PipelineError::MissingData(dir.join(name)))
}

fn table(name: &str, text: &str) -> Result<Arc<CharacterTable>, PipelineError> {
    parse_table(text).map(Arc::new).map_err(|source| PipelineError::Table { file: name.to_string(), source })
}

fn gens(name: &str, text: &str) -> Result<Gens, PipelineError> {
    let (degree, gens) = parse_gens(text).map_err(|source| PipelineError::Perm { file: name.to_string(), source })?;
    Ok(Gens { degree, gens })
}

fn optional_gens(dir: &Path, name: &str) -> Option<Result<Gens, String>> {
    read_optional(dir, name).map(|text| gens(name, &text).map_err(|e| e.to_string()))
}

impl Inputs {
    /// Reads the data directory. `s3.ct`, `a5.gens`, `psl28.gens` and one of
    /// `th.ct` / `th_partial.ct` are mandatory; the rest only enable steps.
    pub fn load(dir: &Path) -> Result<Self, PipelineError> {
        let s3 = table("s3.ct", &read_mandatory(dir, "s3.ct")?)?;
        let th = match read_optional(dir, "th.ct") {
            Some(text) => table("th.ct", &text)?,
            None => table("th_partial.ct", &read_mandatory(dir, "th_partial.ct")?)?,
        };
        let psl28_table = read_optional(dir, "psl28.ct").map(|t| table("psl28.ct", &t)).transpose()?;
        let a5 = gens("a5.gens", &read_mandatory(dir, "a5.gens")?)?;
        let psl28 = gens("psl28.gens", &read_mandatory(dir, "psl28.gens")?)?;
        Ok(Inputs {
            s3,
            th,
            psl28_table,
            a5,
            psl28,
            psu38: optional_gens(dir, "psu38.gens"),
            psu38_sub: optional_gens(dir, "psu38_sub.gens"),
            psu38_ext: optional_gens(dir, "psu38_ext.gens"),
            psu38_chain: OnceLock::new(),
        })
    }

    /// `None` when `psu38.gens` is absent.
    pub(crate) fn psu38_chain(&self) -> Option<Result<&StabilizerChain, String>> {
        let g = self.psu38.as_ref()?;
        let built = self.psu38_chain.get_or_init(|| match g {
            Ok(g) => StabilizerChain::new(g.degree, &g.gens).map_err(|e| e.to_string()),
            Err(e) => Err(e.clone()),
        });
        Some(built.as_ref().map_err(Clone::clone))
    }
}

/// Runs one step against loaded inputs.
pub fn run_step(id: &str, inputs: &Inputs, opts: &VerifyOptions) -> Result<Step, PipelineError> {
    steps::run(id, inputs, opts).ok_or_else(|| PipelineError::UnknownStep(id.to_string()))
}

pub fn run_verification(dir: &Path, opts: &VerifyOptions) -> Result<ClaimReport, PipelineError> {
    if opts.budget == 0 {
        return Err(PipelineError::ZeroBudget);
    }
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|id| !STEP_IDS.contains(&id.as_str())) {
            return Err(PipelineError::UnknownStep(bad.clone()));
        }
    }
    let inputs = Inputs::load(dir)?;
    let mut steps = Vec::new();
    for id in STEP_IDS {
        if opts.only.as_ref().is_some_and(|only| !only.iter().any(|o| o == id)) {
            continue;
        }
        steps.push(run_step(id, &inputs, opts)?);
    }
    Ok(ClaimReport { seed: opts.seed, budget: opts.budget, steps })
}
