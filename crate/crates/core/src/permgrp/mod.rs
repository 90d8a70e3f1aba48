//! Permutation groups: stabilizer chains, backtrack searches for
//! centralizers, conjugating elements and normalizers, conjugacy classes,
//! subgroup lattices of small groups, and the structural checks run on the
//! bundled groups.

mod backtrack;
mod census;
mod chain;
mod classes;
mod perm;
mod subgroups;

use thiserror::Error;

pub use backtrack::{centralizer, is_conjugate, normalizer, normalizer_of_cyclic};
pub use census::{
    c9_conjugacy_census, d18_extension_census, find_element_of_order, fusion_prerequisites, generation_check,
    sylow3_by_ascent, C9Census, D18Census, FusionPrerequisites, GenerationReport,
};
pub use chain::StabilizerChain;
pub use classes::{
    brute_structure_constant, conjugacy_classes, match_table_classes, ConjClassData, ConjugacyClasses,
    ExhaustiveClasses,
};
pub use perm::{parse_gens, Permutation};
pub use subgroups::{all_subgroups, Subgroup};

/// Default cap on element enumeration.
pub const ENUMERATION_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: point {point} out of range 1..{degree}")]
    PointOutOfRange { line: usize, point: usize, degree: usize },
    #[error("line {line}: point {point} repeated")]
    RepeatedPoint { line: usize, point: usize },
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("{what}: budget of {limit} search nodes exhausted")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("{what}: group order {order} exceeds the enumeration limit {limit}")]
    TooLarge { what: &'static str, order: String, limit: u64 },
    #[error("Sylow ascent stalled at a subgroup of order {0}")]
    AscentStalled(String),
    #[error("expected a subgroup of order {expected}, got {found}")]
    SubgroupOrderMismatch { expected: String, found: String },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("no element of order {0} found")]
    NoElementOfOrder(u64),
}

impl PermError {
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            PermError::PointOutOfRange { point, degree, .. } => PermError::PointOutOfRange { line, point, degree },
            PermError::RepeatedPoint { point, .. } => PermError::RepeatedPoint { line, point },
            PermError::Parse { msg, .. } => PermError::Parse { line, msg },
            other => other,
        }
    }
}

/// Node budget for backtrack searches; exhausting it is reported as an error
/// rather than a guess.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn tick(&mut self, what: &'static str) -> Result<(), PermError> {
        self.used += 1;
        if self.used > self.limit {
            Err(PermError::ResourceLimit { what, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}
