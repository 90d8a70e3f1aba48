//! Shared fixtures for the benchmarks: bundled data loaded once per run.

use std::path::PathBuf;
use std::sync::Arc;

use cgt_core::permgrp::{parse_gens, StabilizerChain};
use cgt_core::tables::{parse_table, CharacterTable};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Panics on a missing or malformed file; benches have no error path.
pub fn table(name: &str) -> Arc<CharacterTable> {
    let text = std::fs::read_to_string(data_path(name)).expect("bundled table");
    Arc::new(parse_table(&text).expect("bundled table parses"))
}

pub fn chain(name: &str) -> StabilizerChain {
    let text = std::fs::read_to_string(data_path(name)).expect("bundled generators");
    let (n, gens) = parse_gens(&text).expect("bundled generators parse");
    StabilizerChain::new(n, &gens).expect("chain builds")
}
