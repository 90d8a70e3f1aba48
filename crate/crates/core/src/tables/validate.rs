use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::CharacterTable;
use crate::exact::{gcd_u64, Cyclotomic, CyclotomicSum, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub table: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}", self.table)?;
        for c in &self.checks {
            let status = match &c.status {
                CheckStatus::Pass => "pass".to_string(),
                CheckStatus::Fail => "FAIL".to_string(),
                CheckStatus::Skipped(why) => format!("skipped ({why})"),
            };
            writeln!(f, "  {:<20} {:<10} {}", c.name, status, c.detail)?;
        }
        write!(f, "overall {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

fn pass(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: CheckStatus::Pass, detail: detail.into() }
}

fn fail(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: CheckStatus::Fail, detail: detail.into() }
}

fn skip(name: &'static str, why: &str) -> Check {
    Check { name, status: CheckStatus::Skipped(why.to_string()), detail: String::new() }
}

/// `sum_i a_i * conj(b_i) / |C(g_i)|`, the normalised inner product.
pub(crate) fn inner_raw(t: &CharacterTable, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = CyclotomicSum::new();
    for (i, c) in t.classes.iter().enumerate() {
        let w = Rational::new(BigInt::one(), BigInt::from(c.centralizer_order.clone()));
        acc.add_product(&a[i], &b[i].conj(), &w);
    }
    acc.finish()
}

fn check_centralizers(t: &CharacterTable) -> Check {
    const NAME: &str = "centralizers";
    let Some(id) = t.identity_class() else {
        return fail(NAME, "no class of element order 1");
    };
    if t.classes[id].centralizer_order != t.group_order {
        return fail(NAME, format!("identity class {} has centralizer {}", t.label(id), t.classes[id].centralizer_order));
    }
    for (i, c) in t.classes.iter().enumerate() {
        if t.class_size(i).is_none() {
            return fail(NAME, format!("CENT of {} does not divide ORDER", c.label));
        }
        if c.element_order > 1 && !(&c.centralizer_order % c.element_order).is_zero() {
            return fail(NAME, format!("element order of {} does not divide its centralizer", c.label));
        }
    }
    pass(NAME, format!("{} classes", t.class_count()))
}

fn check_class_equation(t: &CharacterTable) -> Check {
    const NAME: &str = "class equation";
    let mut total = BigUint::zero();
    let mut sizes = Vec::new();
    for i in 0..t.class_count() {
        match t.class_size(i) {
            Some(s) => {
                sizes.push(s.to_string());
                total += s;
            }
            None => return fail(NAME, "class size not integral"),
        }
    }
    let shown = if sizes.len() <= 12 { sizes.join("+") } else { format!("{} class sizes", sizes.len()) };
    if total == t.group_order {
        pass(NAME, format!("{shown} = {total}"))
    } else {
        fail(NAME, format!("{shown} = {total} != {}", t.group_order))
    }
}

fn check_power_maps(t: &CharacterTable) -> Check {
    const NAME: &str = "power maps";
    if !t.partial {
        for p in t.primes() {
            if !t.power_maps.contains_key(&p) {
                return fail(NAME, format!("missing power map for prime {p}"));
            }
        }
    }
    for (&p, map) in &t.power_maps {
        for (i, &j) in map.iter().enumerate() {
            let o = t.classes[i].element_order;
            let want = o / gcd_u64(o, p);
            if t.classes[j].element_order != want {
                return fail(
                    NAME,
                    format!("{}^{p} = {} has order {}, expected {want}", t.label(i), t.label(j), t.classes[j].element_order),
                );
            }
        }
    }
    let primes: Vec<String> = t.power_maps.keys().map(ToString::to_string).collect();
    pass(NAME, format!("primes {}", primes.join(",")))
}

fn check_degrees(t: &CharacterTable) -> Check {
    const NAME: &str = "degrees";
    let Some(id) = t.identity_class() else {
        return fail(NAME, "no identity class");
    };
    let mut degs = Vec::new();
    for irr in &t.irreducibles {
        match irr.values[id].to_integer() {
            Some(d) if d > BigInt::zero() => degs.push(d.to_string()),
            _ => return fail(NAME, format!("{} has degree {}", irr.name, irr.values[id])),
        }
    }
    pass(NAME, degs.join(","))
}

fn check_degree_sum(t: &CharacterTable) -> Check {
    const NAME: &str = "degree sum";
    let Some(id) = t.identity_class() else {
        return fail(NAME, "no identity class");
    };
    let mut total = BigInt::zero();
    for irr in &t.irreducibles {
        match irr.values[id].to_integer() {
            Some(d) => total += &d * &d,
            None => return fail(NAME, format!("{} has non-integral degree", irr.name)),
        }
    }
    if total == BigInt::from(t.group_order.clone()) {
        pass(NAME, format!("sum of squares = {total}"))
    } else {
        fail(NAME, format!("sum of squares = {total} != {}", t.group_order))
    }
}

fn check_irreducible_count(t: &CharacterTable) -> Check {
    const NAME: &str = "square table";
    if t.irreducibles.len() == t.class_count() {
        pass(NAME, format!("{} irreducibles", t.irreducibles.len()))
    } else {
        fail(NAME, format!("{} irreducibles for {} classes", t.irreducibles.len(), t.class_count()))
    }
}

fn check_rows(t: &CharacterTable) -> Check {
    const NAME: &str = "row orthogonality";
    let n = t.irreducibles.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let ip = inner_raw(t, &t.irreducibles[i].values, &t.irreducibles[j].values);
        let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
        ip != want
    });
    match bad {
        None => pass(NAME, format!("{} pairs", pairs.len())),
        Some(&(i, j)) => {
            let ip = inner_raw(t, &t.irreducibles[i].values, &t.irreducibles[j].values);
            fail(NAME, format!("<{}, {}> = {ip}", t.irreducibles[i].name, t.irreducibles[j].name))
        }
    }
}

fn check_columns(t: &CharacterTable) -> Check {
    const NAME: &str = "column orthogonality";
    let k = t.class_count();
    let conj: Vec<Vec<Cyclotomic>> =
        t.irreducibles.iter().map(|r| r.values.iter().map(Cyclotomic::conj).collect()).collect();
    let col = |g: usize, h: usize| {
        let mut acc = CyclotomicSum::new();
        let one = Rational::one();
        for (r, c) in t.irreducibles.iter().zip(&conj) {
            acc.add_product(&r.values[g], &c[h], &one);
        }
        acc.finish()
    };
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let want = |g: usize, h: usize| {
        if g == h {
            Cyclotomic::from_rational(Rational::from_integer(BigInt::from(t.classes[g].centralizer_order.clone())))
        } else {
            Cyclotomic::zero()
        }
    };
    match pairs.par_iter().find_first(|&&(g, h)| col(g, h) != want(g, h)) {
        None => pass(NAME, format!("{} pairs", pairs.len())),
        Some(&(g, h)) => fail(NAME, format!("columns {}, {} give {}", t.label(g), t.label(h), col(g, h))),
    }
}

fn check_inverse_classes(t: &CharacterTable) -> Check {
    const NAME: &str = "inverse classes";
    let mut checked = 0;
    for i in 0..t.class_count() {
        let Some(inv) = t.inverse_class(i) else { continue };
        checked += 1;
        for irr in &t.irreducibles {
            if irr.values[inv] != irr.values[i].conj() {
                return fail(NAME, format!("{} on {} is not the conjugate of its value on {}", irr.name, t.label(inv), t.label(i)));
            }
        }
    }
    if checked == 0 {
        skip(NAME, "no power maps")
    } else {
        pass(NAME, format!("{checked} classes"))
    }
}

/// Checks every table invariant that the present data allows. PARTIAL tables
/// record the checks needing all rows or columns as skipped.
pub fn validate_table(t: &CharacterTable) -> ValidationReport {
    let mut checks = vec![check_centralizers(t)];
    const PARTIAL: &str = "partial table";
    if t.partial {
        checks.push(skip("class equation", PARTIAL));
    } else {
        checks.push(check_class_equation(t));
    }
    checks.push(check_power_maps(t));
    checks.push(check_degrees(t));
    if t.partial {
        for name in ["degree sum", "square table", "row orthogonality", "column orthogonality"] {
            checks.push(skip(name, PARTIAL));
        }
    } else {
        checks.push(check_degree_sum(t));
        checks.push(check_irreducible_count(t));
        checks.push(check_rows(t));
        checks.push(check_columns(t));
    }
    checks.push(check_inverse_classes(t));
    ValidationReport { table: t.name.clone(), checks }
}
