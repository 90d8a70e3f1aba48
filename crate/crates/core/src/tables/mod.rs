//! Character tables: data model, the `.ct` text format, validation, direct
//! products and class fusion.

mod format;
mod fusion;
mod product;
mod validate;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{factorize, gcd_u64, Cyclotomic, ExactError};

pub use format::{parse_table, serialize_table};
pub use fusion::{parse_fusion, FusionMap};
pub use product::direct_product;
pub use validate::{validate_table, Check, CheckStatus, ValidationReport};
pub(crate) use validate::inner_raw;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: bad value: {source}")]
    Value { line: usize, source: ExactError },
    #[error("line {line}: duplicate class label {label}")]
    DuplicateLabel { line: usize, label: String },
    #[error("line {line}: row {name} has {found} values, expected {expected}")]
    RowLengthMismatch { line: usize, name: String, expected: usize, found: usize },
    #[error("missing required header {0}")]
    MissingHeader(&'static str),
    #[error("unknown class label {0}")]
    UnknownLabel(String),
    #[error("unknown character {0}")]
    UnknownCharacter(String),
    #[error("no power map for prime {0}")]
    MissingPowerMap(u64),
    #[error("class functions belong to different tables ({0} vs {1})")]
    TableMismatch(String, String),
    #[error("fusion header names {found}, expected {expected}")]
    FusionHeader { expected: String, found: String },
    #[error("order mismatch: {source_label} (order {source_order}) -> {target_label} (order {target_order})")]
    OrderMismatch { source_label: String, target_label: String, source_order: u64, target_order: u64 },
    #[error("centralizer of {source_label} does not divide centralizer of {target_label}")]
    CentralizerMismatch { source_label: String, target_label: String },
    #[error("fusion does not commute with the {p}-power map at class {label}")]
    PowerMapMismatch { label: String, p: u64 },
    #[error("class {0} is not mapped")]
    Unmapped(String),
    #[error("class {0} is mapped more than once")]
    DuplicateMapping(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub element_order: u64,
    pub centralizer_order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducible {
    pub name: String,
    pub values: Vec<Cyclotomic>,
}

/// An ordinary character table, possibly PARTIAL (a subset of rows and
/// columns of the full table).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    pub group_order: BigUint,
    pub classes: Vec<ClassInfo>,
    /// prime -> image class index for every class
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub irreducibles: Vec<Irreducible>,
    pub partial: bool,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, label: &str) -> Result<usize, TableError> {
        self.classes
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| TableError::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.classes[i].label
    }

    /// `|G| / |C_G(g)|`; `None` if the centralizer order does not divide.
    pub fn class_size(&self, i: usize) -> Option<BigUint> {
        let c = &self.classes[i].centralizer_order;
        if c.is_zero() {
            return None;
        }
        let (q, r) = self.group_order.div_rem(c);
        r.is_zero().then_some(q)
    }

    /// Index of the identity class (element order 1).
    pub fn identity_class(&self) -> Option<usize> {
        self.classes.iter().position(|c| c.element_order == 1)
    }

    pub fn irreducible(&self, name: &str) -> Result<&Irreducible, TableError> {
        self.irreducibles
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| TableError::UnknownCharacter(name.to_string()))
    }

    /// Primes dividing some element order; for a full table these are the
    /// primes dividing the group order.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .classes
            .iter()
            .flat_map(|c| factorize(c.element_order).into_iter().map(|(p, _)| p))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Class of `g^n` for `g` in class `i`, composing prime power maps.
    ///
    /// Only the residue of `n` modulo the element order matters, so when a
    /// prime factor has no stored map, exponents `n + k*ord` are tried until
    /// one factors over the available primes.
    pub fn power_class(&self, i: usize, n: u64) -> Result<usize, TableError> {
        let ord = self.classes[i].element_order;
        let m = n % ord;
        if m == 0 {
            return self.identity_class().ok_or(TableError::MissingHeader("identity class"));
        }
        let usable = (0..64u64)
            .filter_map(|k| k.checked_mul(ord).and_then(|x| x.checked_add(m)))
            .map(factorize)
            .find(|f| f.iter().all(|(p, _)| self.power_maps.contains_key(p)));
        let Some(factors) = usable else {
            if let Some(j) = self.galois_class(i, m) {
                return Ok(j);
            }
            let missing = factorize(m).into_iter().map(|(p, _)| p).find(|p| !self.power_maps.contains_key(p));
            return Err(TableError::MissingPowerMap(missing.unwrap_or(m)));
        };
        let mut cls = i;
        for (p, a) in factors {
            let map = &self.power_maps[&p];
            for _ in 0..a {
                cls = map[cls];
            }
        }
        Ok(cls)
    }

    /// For `m` prime to the element order, `g^m` is the Galois image of `g`:
    /// on a full table it is the unique class whose column is the image of
    /// column `i` under `E(n) -> E(n)^m`.
    fn galois_class(&self, i: usize, m: u64) -> Option<usize> {
        let ord = self.classes[i].element_order;
        if self.partial || self.irreducibles.len() != self.class_count() || gcd_u64(m, ord) != 1 {
            return None;
        }
        let image: Vec<Cyclotomic> = self.irreducibles.iter().map(|r| r.values[i].galois(m as i64)).collect();
        let mut hits = (0..self.class_count()).filter(|&j| {
            self.classes[j].element_order == ord && self.irreducibles.iter().zip(&image).all(|(r, v)| &r.values[j] == v)
        });
        let j = hits.next()?;
        hits.next().is_none().then_some(j)
    }

    /// Class of inverses, when the power maps allow computing it.
    pub fn inverse_class(&self, i: usize) -> Option<usize> {
        let ord = self.classes[i].element_order;
        if ord <= 2 {
            return Some(i);
        }
        self.power_class(i, ord - 1).ok()
    }

    /// The irreducible `name` as a class function.
    pub fn character(self: &Arc<Self>, name: &str) -> Result<ClassFunction, TableError> {
        let row = self.irreducible(name)?;
        Ok(ClassFunction { table: Arc::clone(self), values: row.values.clone() })
    }

    pub fn trivial(self: &Arc<Self>) -> ClassFunction {
        ClassFunction { table: Arc::clone(self), values: vec![Cyclotomic::one(); self.class_count()] }
    }
}

/// A function on the classes of one table.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    table: Arc<CharacterTable>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Cyclotomic>) -> Result<Self, TableError> {
        if values.len() != table.class_count() {
            return Err(TableError::RowLengthMismatch {
                line: 0,
                name: "class function".into(),
                expected: table.class_count(),
                found: values.len(),
            });
        }
        Ok(ClassFunction { table, values })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Cyclotomic {
        &self.values[i]
    }

    /// Value on the identity class.
    pub fn degree(&self) -> Option<&Cyclotomic> {
        self.table.identity_class().map(|i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub(crate) fn same_table(&self, other: &ClassFunction) -> Result<(), TableError> {
        if Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table {
            Ok(())
        } else {
            Err(TableError::TableMismatch(self.table.name.clone(), other.table.name.clone()))
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.same_table(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { table: Arc::clone(&self.table), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.same_table(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { table: Arc::clone(&self.table), values })
    }

    pub fn scale(&self, c: &Cyclotomic) -> ClassFunction {
        ClassFunction { table: Arc::clone(&self.table), values: self.values.iter().map(|v| v * c).collect() }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other).is_ok() && self.values == other.values
    }
}
