//! Exact character-table arithmetic and permutation-group algorithms.

pub mod exact;
pub mod tables;
pub mod classops;
pub mod permgrp;
pub mod pipeline;

pub use exact::{Cyclotomic, Rational};
