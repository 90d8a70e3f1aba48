//! Class-function algebra over a character table.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{Cyclotomic, CyclotomicSum, ExactError, Rational};
use crate::tables::{inner_raw, CharacterTable, ClassFunction, FusionMap, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassOpsError {
    #[error("table {0} is PARTIAL; this operation needs every class")]
    PartialTable(String),
    #[error("multiplicity of {name} is {value}, not an integer")]
    NonIntegral { name: String, value: String },
    #[error("{what} is {value}, not a non-negative integer")]
    BadStructureConstant { what: String, value: String },
    #[error("class size must be positive")]
    ZeroClassSize,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn require_full(t: &CharacterTable) -> Result<(), ClassOpsError> {
    if t.partial {
        Err(ClassOpsError::PartialTable(t.name.clone()))
    } else {
        Ok(())
    }
}

pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational, ClassOpsError> {
    f.same_table(g)?;
    require_full(f.table())?;
    Ok(inner_raw(f.table(), f.values(), g.values()).to_rational()?)
}

/// Multiplicities of every irreducible, plus what is left over.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Irreducibles with non-zero multiplicity, in table order.
    pub parts: Vec<(String, BigInt)>,
    pub remainder: ClassFunction,
}

impl Decomposition {
    /// True when the input was a genuine character.
    pub fn is_character(&self) -> bool {
        self.remainder.is_zero() && self.parts.iter().all(|(_, m)| !m.is_negative())
    }

    pub fn multiplicity(&self, name: &str) -> BigInt {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone()).unwrap_or_default()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (name, m)) in self.parts.iter().enumerate() {
            let sep = if k == 0 { "" } else { " + " };
            if m.is_one() {
                write!(f, "{sep}{name}")?;
            } else {
                write!(f, "{sep}{m}*{name}")?;
            }
        }
        if !self.remainder.is_zero() {
            write!(f, " + remainder")?;
        }
        Ok(())
    }
}

pub fn decompose(f: &ClassFunction) -> Result<Decomposition, ClassOpsError> {
    let t = f.table();
    require_full(t)?;
    let mut parts = Vec::new();
    let mut remainder = f.clone();
    for irr in &t.irreducibles {
        let m = inner_raw(t, f.values(), &irr.values);
        let m = m
            .to_rational()
            .ok()
            .filter(|q| q.is_integer())
            .ok_or_else(|| ClassOpsError::NonIntegral { name: irr.name.clone(), value: m.to_string() })?
            .to_integer();
        if !m.is_zero() {
            let chi = t.character(&irr.name)?;
            remainder = remainder.sub(&chi.scale(&Cyclotomic::from_rational(Rational::from_integer(m.clone()))))?;
            parts.push((irr.name.clone(), m));
        }
    }
    Ok(Decomposition { parts, remainder })
}

pub fn tensor(f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction, ClassOpsError> {
    f.same_table(g)?;
    let values = f.values().iter().zip(g.values()).map(|(a, b)| a * b).collect();
    Ok(ClassFunction::new(Arc::clone(f.table()), values)?)
}

/// Pulls a class function on the target of `fu` back to its source.
pub fn restrict(fu: &FusionMap, f: &ClassFunction) -> Result<ClassFunction, ClassOpsError> {
    if !(Arc::ptr_eq(fu.target(), f.table()) || **fu.target() == **f.table()) {
        return Err(TableError::TableMismatch(fu.target().name.clone(), f.table().name.clone()).into());
    }
    let values = fu.map().iter().map(|&j| f.value(j).clone()).collect();
    Ok(ClassFunction::new(Arc::clone(fu.source()), values)?)
}

pub fn value_on(f: &ClassFunction, label: &str) -> Result<Cyclotomic, ClassOpsError> {
    Ok(f.value(f.table().class_index(label)?).clone())
}

pub fn class_of_power(t: &CharacterTable, label: &str, n: u64) -> Result<String, ClassOpsError> {
    let i = t.class_index(label)?;
    Ok(t.label(t.power_class(i, n)?).to_string())
}

/// Sum of the named irreducibles (names may repeat).
pub fn sum_of_irreducibles(t: &Arc<CharacterTable>, names: &[&str]) -> Result<ClassFunction, ClassOpsError> {
    let mut acc: Vec<CyclotomicSum> = Vec::new();
    acc.resize_with(t.class_count(), CyclotomicSum::new);
    for name in names {
        let row = t.irreducible(name)?;
        for (a, v) in acc.iter_mut().zip(&row.values) {
            a.add(v);
        }
    }
    Ok(ClassFunction::new(Arc::clone(t), acc.into_iter().map(CyclotomicSum::finish).collect())?)
}

/// Number of pairs `(x, y)` with `x` in `c1`, `y` in `c2` and `x*y = z` for
/// one fixed `z` in `c3`:
///
/// `|C1| |C2| / |G| * sum_chi chi(c1) chi(c2) conj(chi(c3)) / chi(1)`.
pub fn cmc(t: &CharacterTable, c1: &str, c2: &str, c3: &str) -> Result<Rational, ClassOpsError> {
    require_full(t)?;
    let (i, j, k) = (t.class_index(c1)?, t.class_index(c2)?, t.class_index(c3)?);
    let id = t.identity_class().ok_or(TableError::MissingHeader("identity class"))?;
    let mut acc = CyclotomicSum::new();
    for irr in &t.irreducibles {
        let deg = irr.values[id].to_rational()?;
        if deg.is_zero() {
            return Err(ClassOpsError::BadStructureConstant { what: format!("degree of {}", irr.name), value: "0".into() });
        }
        let w = deg.recip();
        let ab = &irr.values[i] * &irr.values[j];
        acc.add_product(&ab, &irr.values[k].conj(), &w);
    }
    let sum = acc.finish();
    let size = |x: usize| -> Result<BigInt, ClassOpsError> {
        t.class_size(x).map(BigInt::from).ok_or(ClassOpsError::ZeroClassSize)
    };
    let scale = Rational::new(size(i)? * size(j)?, BigInt::from(t.group_order.clone()));
    let value = sum.to_rational().map_err(|_| ClassOpsError::BadStructureConstant {
        what: format!("cmc({c1},{c2},{c3})"),
        value: sum.to_string(),
    })? * scale;
    if !value.is_integer() || value.is_negative() {
        return Err(ClassOpsError::BadStructureConstant { what: format!("cmc({c1},{c2},{c3})"), value: value.to_string() });
    }
    Ok(value)
}

/// Lower bound `symmetry_order / class_size` for a centralizer order, with
/// its ceiling.
pub fn min_centralizer_bound(symmetry_order: &BigInt, class_size: &BigInt) -> Result<(Rational, BigInt), ClassOpsError> {
    if !class_size.is_positive() || !symmetry_order.is_positive() {
        return Err(ClassOpsError::ZeroClassSize);
    }
    let bound = Rational::new(symmetry_order.clone(), class_size.clone());
    let ceil = symmetry_order.div_ceil(class_size);
    Ok((bound, ceil))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::tables::{parse_fusion, parse_table};

    const S3: &str = "GROUP S3\nORDER 6\nCLASSES 3\nCLASS 1A ORDER=1 CENT=6\nCLASS 2A ORDER=2 CENT=2\n\
CLASS 3A ORDER=3 CENT=3\nPOWERMAP 2 : 1A->1A, 2A->1A, 3A->3A\nPOWERMAP 3 : 1A->1A, 2A->2A, 3A->1A\n\
IRR 1 : 1 1 1\nIRR 1- : 1 -1 1\nIRR 2 : 2 0 -1\n";

    fn s3() -> Arc<CharacterTable> {
        Arc::new(parse_table(S3).unwrap())
    }

    fn cf(t: &Arc<CharacterTable>, v: &[i64]) -> ClassFunction {
        ClassFunction::new(Arc::clone(t), v.iter().map(|&x| Cyclotomic::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn inner_products() {
        let t = s3();
        let chi = t.character("2").unwrap();
        assert_eq!(inner_product(&chi, &chi).unwrap(), rational(1, 1));
        let regular = cf(&t, &[6, 0, 0]);
        assert_eq!(inner_product(&regular, &t.trivial()).unwrap(), rational(1, 1));
    }

    #[test]
    fn decompositions() {
        let t = s3();
        let d = decompose(&cf(&t, &[6, 0, 0])).unwrap();
        assert_eq!(d.to_string(), "1 + 1- + 2*2");
        assert!(d.is_character());
        let d = decompose(&t.trivial()).unwrap();
        assert_eq!(d.parts, vec![("1".to_string(), BigInt::one())]);
        assert!(matches!(decompose(&cf(&t, &[1, 0, 0])), Err(ClassOpsError::NonIntegral { .. })));
    }

    #[test]
    fn tensor_and_restrict() {
        let t = s3();
        let sign = t.character("1-").unwrap();
        assert_eq!(tensor(&sign, &sign).unwrap(), t.trivial());
        let c3 = Arc::new(
            parse_table(
                "GROUP C3\nORDER 3\nCLASSES 3\nCLASS 1A ORDER=1 CENT=3\nCLASS 3A ORDER=3 CENT=3\n\
CLASS 3B ORDER=3 CENT=3\nPOWERMAP 3 : 1A->1A, 3A->1A, 3B->1A\n\
IRR 1 : 1 1 1\nIRR z : 1 E(3) E(3)^2\nIRR z2 : 1 E(3)^2 E(3)\n",
            )
            .unwrap(),
        );
        let fu = parse_fusion("FUSION C3 -> S3\n1A -> 1A\n3A -> 3A\n3B -> 3A\n", Arc::clone(&c3), Arc::clone(&t)).unwrap();
        let r = restrict(&fu, &t.character("2").unwrap()).unwrap();
        assert_eq!(r, cf(&c3, &[2, -1, -1]));
        assert_eq!(restrict(&fu, &t.trivial()).unwrap(), c3.trivial());
    }

    #[test]
    fn powers_and_values() {
        let t = s3();
        assert_eq!(class_of_power(&t, "2A", 2).unwrap(), "1A");
        assert_eq!(class_of_power(&t, "1A", 5).unwrap(), "1A");
        assert_eq!(class_of_power(&t, "3A", 2).unwrap(), "3A");
        assert_eq!(value_on(&t.character("2").unwrap(), "3A").unwrap(), Cyclotomic::from_int(-1));
        assert!(matches!(value_on(&t.trivial(), "5A"), Err(ClassOpsError::Table(TableError::UnknownLabel(_)))));
    }

    #[test]
    fn structure_constants() {
        let t = s3();
        assert_eq!(cmc(&t, "2A", "2A", "3A").unwrap(), rational(3, 1));
        assert_eq!(cmc(&t, "2A", "2A", "1A").unwrap(), rational(3, 1));
        assert_eq!(cmc(&t, "3A", "3A", "1A").unwrap(), rational(2, 1));
    }

    #[test]
    fn bound() {
        let b = |x: i64, y: i64| min_centralizer_bound(&x.into(), &y.into()).unwrap();
        assert_eq!(b(9720, 729), (rational(40, 3), BigInt::from(14)));
        assert_eq!(b(60, 60), (rational(1, 1), BigInt::from(1)));
        assert_eq!(min_centralizer_bound(&60.into(), &0.into()), Err(ClassOpsError::ZeroClassSize));
    }
}
