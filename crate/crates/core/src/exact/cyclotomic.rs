use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{factorize, gcd_u64, lcm_u64, ExactError, Rational};

/// An element of a cyclotomic field, `sum c_e * E(n)^e`.
///
/// The representation is canonical: exponents index the Zumbroich basis of
/// `Q(E(n))` and `n` is the conductor of the value (never `2 mod 4`, and `1`
/// for rationals). Two values are equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    coeffs: BTreeMap<u64, Rational>,
}

type Raw = BTreeMap<u64, Rational>;

fn add_into(map: &mut Raw, k: u64, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// Data describing the `p`-component of exponents modulo `n`.
struct PrimePart {
    p: u64,
    a: u32,
    q: u64,
    h: u64,
    unit: u64,
    step: u64,
}

impl PrimePart {
    fn new(n: u64, p: u64, a: u32) -> Self {
        let q = p.pow(a);
        PrimePart {
            p,
            a,
            q,
            h: q / p,
            unit: inv_mod((n / q) % q, q),
            step: n / p,
        }
    }

    /// Exponent of `E(q)` in the CRT decomposition of `E(n)^k`.
    fn component(&self, k: u64) -> u64 {
        ((k as u128 * self.unit as u128) % self.q as u128) as u64
    }

    /// Leading base-`p` digit of the component; adding `step` to `k`
    /// increments it modulo `p`.
    fn digit(&self, k: u64) -> u64 {
        self.component(k) / self.h
    }

    fn forbidden(&self, k: u64) -> bool {
        let d = self.digit(k);
        if self.p == 2 {
            d == 1
        } else {
            d == 0
        }
    }
}

/// Rewrite a raw combination of powers of `E(n)` in the Zumbroich basis.
fn zumbroich(n: u64, raw: &mut Raw) {
    for (p, a) in factorize(n) {
        let part = PrimePart::new(n, p, a);
        let bad: Vec<u64> = raw.keys().copied().filter(|&k| part.forbidden(k)).collect();
        for k in bad {
            let c = raw.remove(&k).expect("key present");
            if p == 2 {
                add_into(raw, (k + part.step) % n, -c);
            } else {
                for j in 1..p {
                    add_into(raw, (k + j * part.step) % n, -c.clone());
                }
            }
        }
    }
}

/// Try to rewrite a Zumbroich-canonical element of `Q(E(n))` inside
/// `Q(E(n/p))`.
fn shrink(n: u64, part: &PrimePart, coeffs: &Raw) -> Option<Raw> {
    if part.p == 2 && part.a == 1 {
        return Some(coeffs.iter().map(|(k, c)| (k / 2, c.clone())).collect());
    }
    if part.a >= 2 {
        if coeffs.keys().all(|&k| part.component(k).is_multiple_of(part.p)) {
            return Some(
                coeffs
                    .iter()
                    .map(|(k, c)| {
                        debug_assert_eq!(k % part.p, 0);
                        (k / part.p, c.clone())
                    })
                    .collect(),
            );
        }
        return None;
    }
    // p odd, exactly dividing n: every rest class must carry the same
    // coefficient on all p - 1 digits.
    let mut groups: BTreeMap<u64, Vec<&Rational>> = BTreeMap::new();
    for (&k, c) in coeffs {
        let d = part.digit(k);
        let rest = (k + n - (d * part.step) % n) % n;
        groups.entry(rest).or_default().push(c);
    }
    let mut out = Raw::new();
    for (rest, cs) in groups {
        if cs.len() as u64 != part.p - 1 || cs.iter().any(|c| *c != cs[0]) {
            return None;
        }
        debug_assert_eq!(rest % part.p, 0);
        out.insert(rest / part.p, -cs[0].clone());
    }
    Some(out)
}

fn canonical(mut n: u64, mut raw: Raw) -> Cyclotomic {
    raw.retain(|_, c| !c.is_zero());
    if raw.is_empty() {
        return Cyclotomic::zero();
    }
    if n == 1 {
        let c = raw.into_values().fold(Rational::zero(), |acc, c| acc + c);
        return Cyclotomic::from_rational(c);
    }
    zumbroich(n, &mut raw);
    'outer: loop {
        if raw.is_empty() {
            return Cyclotomic::zero();
        }
        if n == 1 {
            break;
        }
        for (p, a) in factorize(n) {
            let part = PrimePart::new(n, p, a);
            if let Some(smaller) = shrink(n, &part, &raw) {
                n /= p;
                raw = smaller;
                continue 'outer;
            }
        }
        break;
    }
    Cyclotomic { order: n, coeffs: raw }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        Cyclotomic { order: 1, coeffs }
    }

    /// `E(n)^k`, the `k`-th power of `exp(2*pi*i/n)`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as u64;
        let mut raw = Raw::new();
        raw.insert(e, Rational::one());
        canonical(n, raw)
    }

    /// Conductor of the smallest cyclotomic field containing the value.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Zumbroich-basis coefficients keyed by exponent of `E(order)`.
    pub fn coefficients(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Result<Rational, ExactError> {
        if self.order == 1 {
            Ok(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
        } else {
            Err(ExactError::NotRational(self.to_string()))
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().ok().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn lift(&self, n: u64) -> Raw {
        let f = n / self.order;
        self.coeffs.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    /// Image under the Galois automorphism `E(n) -> E(n)^k`; `k` must be
    /// coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order;
        if n == 1 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(gcd_u64(k, n), 1, "Galois exponent must be coprime to the conductor");
        let raw = self.coeffs.iter().map(|(e, c)| ((e * k) % n, c.clone())).collect();
        canonical(n, raw)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Re-run canonicalisation on an already canonical value.
    pub fn recanonicalize(&self) -> Self {
        canonical(self.order, self.coeffs.clone())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[&0] + &rhs.coeffs[&0]);
        }
        let n = lcm_u64(self.order, rhs.order);
        let mut raw = self.lift(n);
        for (k, c) in rhs.lift(n) {
            add_into(&mut raw, k, c);
        }
        canonical(n, raw)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return rhs.scale(&self.to_rational().expect("rational"));
        }
        if rhs.order == 1 {
            return self.scale(&rhs.to_rational().expect("rational"));
        }
        let n = lcm_u64(self.order, rhs.order);
        let mut raw = Raw::new();
        convolve_into(&mut raw, n, self, rhs, None);
        canonical(n, raw)
    }
}

fn convolve_into(raw: &mut Raw, n: u64, a: &Cyclotomic, b: &Cyclotomic, w: Option<&Rational>) {
    let fa = n / a.order;
    let fb = n / b.order;
    for (ka, ca) in &a.coeffs {
        for (kb, cb) in &b.coeffs {
            let mut c = ca * cb;
            if let Some(w) = w {
                c *= w;
            }
            add_into(raw, (ka * fa + kb * fb) % n, c);
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = CyclotomicSum::new();
        for x in iter {
            acc.add(&x);
        }
        acc.finish()
    }
}

/// Accumulates many terms without canonicalising after every addition.
///
/// Terms are bucketed by the field they live in, so a long sum over values
/// from unrelated fields never has to expand into their compositum until
/// the very end (where most of it usually cancels to a rational).
#[derive(Default)]
pub struct CyclotomicSum {
    rational: Rational,
    buckets: BTreeMap<u64, Raw>,
}

impl CyclotomicSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &Cyclotomic) {
        self.add_scaled(x, &Rational::one());
    }

    pub fn add_scaled(&mut self, x: &Cyclotomic, w: &Rational) {
        if x.order == 1 {
            if let Some(c) = x.coeffs.get(&0) {
                self.rational += c * w;
            }
            return;
        }
        let raw = self.buckets.entry(x.order).or_default();
        for (k, c) in &x.coeffs {
            add_into(raw, *k, c * w);
        }
    }

    /// Adds `w * a * b`.
    pub fn add_product(&mut self, a: &Cyclotomic, b: &Cyclotomic, w: &Rational) {
        if a.order == 1 {
            let s = a.to_rational().expect("rational") * w;
            self.add_scaled(b, &s);
        } else if b.order == 1 {
            let s = b.to_rational().expect("rational") * w;
            self.add_scaled(a, &s);
        } else {
            let n = lcm_u64(a.order, b.order);
            let raw = self.buckets.entry(n).or_default();
            convolve_into(raw, n, a, b, Some(w));
        }
    }

    pub fn finish(self) -> Cyclotomic {
        let mut parts: Vec<Cyclotomic> = self
            .buckets
            .into_iter()
            .map(|(n, raw)| canonical(n, raw))
            .filter(|c| !c.is_zero())
            .collect();
        parts.sort_by_key(|c| c.order);
        let mut total = Cyclotomic::zero();
        for p in &parts {
            total = &total + p;
        }
        &total + &Cyclotomic::from_rational(self.rational)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        if self.order == 1 {
            return write!(f, "{}", fmt_rational(&self.coeffs[&0]));
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if *k == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", fmt_rational(&abs))?;
            }
            if *k == 1 {
                write!(f, "E({})", self.order)?;
            } else {
                write!(f, "E({})^{}", self.order, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn e(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2u64, 3, 4, 5, 6, 8, 9, 12, 15, 16, 21, 27, 30, 36] {
            let s: Cyclotomic = (0..n as i64).map(|k| e(n, k)).sum();
            assert!(s.is_zero(), "sum of all {n}-th roots = {s}");
        }
    }

    #[test]
    fn primitive_seventh_roots() {
        let a = &(&e(7, 1) + &e(7, 2)) + &e(7, 4);
        let b = &(&e(7, 3) + &e(7, 5)) + &e(7, 6);
        assert_eq!(&a + &b, Cyclotomic::from_int(-1));
        assert_eq!(a.conj(), b);
        assert!(!a.is_rational());
        // (b7)(b7bar) = 2 for b7 = (-1 + sqrt(-7))/2
        assert_eq!(&a * &b, Cyclotomic::from_int(2));
    }

    #[test]
    fn conductor_reduction() {
        // E(9)^3 = E(3)
        assert_eq!(e(9, 3), e(3, 1));
        assert_eq!(e(9, 3).order(), 3);
        // E(6) = -E(3)^2
        assert_eq!(e(6, 1), -&e(3, 2));
        assert_eq!(e(2, 1), Cyclotomic::from_int(-1));
        // E(12)^3 = E(4)
        assert_eq!(e(12, 3), e(4, 1));
        // sqrt(5) lives in Q(E(5))
        let s5 = &(&e(5, 1) - &e(5, 2)) + &(&e(5, 4) - &e(5, 3));
        assert_eq!(s5.order(), 5);
        assert_eq!(&s5 * &s5, Cyclotomic::from_int(5));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::from_rational(rational(-3, 4)).to_string(), "-3/4");
        assert_eq!(e(3, 1).to_string(), "E(3)");
        assert_eq!((&e(4, 1) + &Cyclotomic::one()).to_string(), "1+E(4)");
        let x = e(5, 2).scale(&rational(-2, 3));
        assert_eq!(x.to_string(), "-2/3*E(5)^2");
    }

    #[test]
    fn accumulator_matches_naive_sum() {
        let xs = [e(31, 3), e(39, 7), Cyclotomic::from_int(4), e(24, 5), e(15, 2)];
        let mut acc = CyclotomicSum::new();
        let mut naive = Cyclotomic::zero();
        for a in &xs {
            for b in &xs {
                acc.add_product(a, &b.conj(), &rational(2, 1));
                naive = &naive + &(&(a * &b.conj()) * &Cyclotomic::from_int(2));
            }
        }
        assert_eq!(acc.finish(), naive);
    }
}
