use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use cgt_core::classops::{decompose, restrict, tensor};
use cgt_core::exact::{parse_value, rational};
use cgt_core::permgrp::{
    centralizer, is_conjugate, parse_gens, sylow3_by_ascent, Budget, ExhaustiveClasses, Permutation, StabilizerChain,
};
use cgt_core::tables::{parse_fusion, parse_table, CharacterTable, ClassFunction};
use cgt_core::{Cyclotomic, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(p).unwrap()
}

const ORDERS: [u64; 12] = [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24];

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(ORDERS.to_vec()), prop::collection::vec((small_rational(), 0i64..24), 0..5)).prop_map(
        |(n, terms)| terms.iter().map(|(c, k)| Cyclotomic::root_of_unity(n, *k).scale(c)).sum(),
    )
}

proptest! {
    #[test]
    fn ring_laws(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert_eq!(&a + &Cyclotomic::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_involutive_homomorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        // a * conj(a) is a real value
        let n = &a * &a.conj();
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn canonical_form_is_stable(a in cyclotomic()) {
        prop_assert_eq!(a.recanonicalize(), a.clone());
        prop_assert_eq!(parse_value(&a.to_string()).unwrap(), a.clone());
        if a.is_rational() {
            prop_assert_eq!(a.order(), 1);
        }
    }
}

/// Independent model of Q(zeta_N): polynomials in t reduced modulo the
/// cyclotomic polynomial Phi_N, computed by exact division of t^N - 1.
mod polymod {
    use super::*;

    pub type Poly = Vec<Rational>;

    fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    /// Quotient and remainder of `a / b` (b monic up to a unit).
    pub fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let b = trim(b.clone());
        let mut r = trim(a.clone());
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
            q[k] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn cyclotomic_poly(n: u64) -> Poly {
        let mut p: Poly = vec![Rational::zero(); n as usize + 1];
        p[0] = -Rational::one();
        p[n as usize] = Rational::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = divmod(&p, &cyclotomic_poly(d)).0;
            }
        }
        p
    }

    pub fn reduce(coeffs: &[Rational], n: u64) -> Poly {
        divmod(&coeffs.to_vec(), &cyclotomic_poly(n)).1
    }

    /// Coefficient vector over exponents 0..n of a canonical value whose
    /// conductor divides `n`.
    pub fn embed(x: &Cyclotomic, n: u64) -> Poly {
        let mut v = vec![Rational::zero(); n as usize];
        let f = n / x.order();
        for (k, c) in x.coefficients() {
            v[(k * f % n) as usize] += c;
        }
        v
    }
}

fn from_vector(v: &[Rational], n: u64) -> Cyclotomic {
    v.iter().enumerate().map(|(k, c)| Cyclotomic::root_of_unity(n, k as i64).scale(c)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_agrees_with_polynomial_model(
        n in prop::sample::select(vec![6u64, 9, 12, 15, 18, 20, 21, 24, 36]),
        raw in prop::collection::vec(small_rational(), 36),
        mult in prop::collection::vec(-2i64..=2, 0..4),
        shift in 0usize..36,
    ) {
        let c: Vec<Rational> = raw[..n as usize].to_vec();
        let x = from_vector(&c, n);
        // the canonical form denotes the same field element
        prop_assert!(x.order() > 0 && n % x.order() == 0);
        let diff: Vec<Rational> = polymod::embed(&x, n).iter().zip(&c).map(|(a, b)| a - b).collect();
        prop_assert!(polymod::reduce(&diff, n).is_empty());

        // adding a multiple of Phi_N (folded mod t^N - 1) leaves the value unchanged
        let phi = polymod::cyclotomic_poly(n);
        let mut d = c.clone();
        for (j, m) in mult.iter().enumerate() {
            for (i, p) in phi.iter().enumerate() {
                let k = (i + j + shift) % n as usize;
                d[k] += p * rational(*m, 1);
            }
        }
        let y = from_vector(&d, n);
        prop_assert_eq!(&y, &x);

        // equality agrees with the model on unrelated vectors
        let other: Vec<Rational> = raw[36 - n as usize..].to_vec();
        let z = from_vector(&other, n);
        let delta: Vec<Rational> = c.iter().zip(&other).map(|(a, b)| a - b).collect();
        prop_assert_eq!(z == x, polymod::reduce(&delta, n).is_empty());
    }
}

fn table(name: &str) -> Arc<CharacterTable> {
    Arc::new(parse_table(&data(name)).unwrap())
}

fn combination(t: &Arc<CharacterTable>, mult: &[i64]) -> ClassFunction {
    let mut f = ClassFunction::new(Arc::clone(t), vec![Cyclotomic::zero(); t.class_count()]).unwrap();
    for (irr, m) in t.irreducibles.iter().zip(mult) {
        f = f.add(&t.character(&irr.name).unwrap().scale(&Cyclotomic::from_int(*m))).unwrap();
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reconstructs(
        name in prop::sample::select(vec!["s3.ct", "d18.ct", "a5.ct", "psl28.ct", "c9xc3.ct"]),
        mult in prop::collection::vec(-3i64..=4, 27),
    ) {
        let t = table(name);
        let f = combination(&t, &mult);
        let d = decompose(&f).unwrap();
        prop_assert!(d.remainder.is_zero());
        for (irr, m) in t.irreducibles.iter().zip(&mult) {
            prop_assert_eq!(d.multiplicity(&irr.name), BigInt::from(*m));
        }
        let mut back = d.remainder.clone();
        for (n, m) in &d.parts {
            back = back.add(&t.character(n).unwrap().scale(&Cyclotomic::from_rational(Rational::from_integer(m.clone())))).unwrap();
        }
        prop_assert_eq!(back, f.clone());
        prop_assert_eq!(d.is_character(), mult.iter().take(t.irreducibles.len()).all(|m| *m >= 0));
    }

    #[test]
    fn restriction_is_linear_and_multiplicative(
        a in prop::collection::vec(-3i64..=3, 3),
        b in prop::collection::vec(-3i64..=3, 3),
        s in -3i64..=3,
    ) {
        let s3 = table("s3.ct");
        let c3 = table("c3.ct");
        let fu = parse_fusion(&data("c3_s3.fus"), Arc::clone(&c3), Arc::clone(&s3)).unwrap();
        let (f, g) = (combination(&s3, &a), combination(&s3, &b));
        let k = Cyclotomic::from_int(s);
        let lhs = restrict(&fu, &f.scale(&k).add(&g).unwrap()).unwrap();
        let rhs = restrict(&fu, &f).unwrap().scale(&k).add(&restrict(&fu, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = restrict(&fu, &tensor(&f, &g).unwrap()).unwrap();
        let rhs = tensor(&restrict(&fu, &f).unwrap(), &restrict(&fu, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn conj_matches_inverse_class_in_every_table() {
    for name in ["s3.ct", "c3.ct", "c9.ct", "c9xc3.ct", "d18.ct", "a5.ct", "psl28.ct", "psu38.ct", "th.ct"] {
        let t = table(name);
        for i in 0..t.class_count() {
            let j = t.inverse_class(i).unwrap();
            for irr in &t.irreducibles {
                assert_eq!(irr.values[i].conj(), irr.values[j], "{name} {} {}", irr.name, t.label(i));
            }
        }
    }
}

struct Small {
    chain: StabilizerChain,
    ex: ExhaustiveClasses,
}

fn small(name: &'static str) -> &'static Small {
    static CELLS: OnceLock<Vec<(&'static str, Small)>> = OnceLock::new();
    let all = CELLS.get_or_init(|| {
        ["a5.gens", "psl28.gens", "d18.gens"]
            .into_iter()
            .map(|n| {
                let (d, g) = parse_gens(&data(n)).unwrap();
                let chain = StabilizerChain::new(d, &g).unwrap();
                let ex = ExhaustiveClasses::compute(&chain, 10_000).unwrap();
                (n, Small { chain, ex })
            })
            .collect()
    });
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn pick(s: &Small, k: usize) -> Permutation {
    s.ex.elements[k % s.ex.elements.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugacy_agrees_with_brute_force(
        name in prop::sample::select(vec!["a5.gens", "psl28.gens", "d18.gens"]),
        i in 0usize..10_000,
        j in 0usize..10_000,
    ) {
        let s = small(name);
        let (x, y) = (pick(s, i), pick(s, j));
        match is_conjugate(&s.chain, &x, &y, &mut Budget::unlimited()).unwrap() {
            Some(w) => {
                prop_assert!(s.chain.contains(&w));
                prop_assert_eq!(x.conj(&w), y.clone());
            }
            None => prop_assert!(s.ex.elements.iter().all(|g| x.conj(g) != y)),
        }
        prop_assert_eq!(
            is_conjugate(&s.chain, &x, &y, &mut Budget::unlimited()).unwrap().is_some(),
            s.ex.class_of(&x) == s.ex.class_of(&y)
        );
    }

    #[test]
    fn centralizer_times_class_size_is_group_order(
        name in prop::sample::select(vec!["a5.gens", "psl28.gens", "d18.gens"]),
        i in 0usize..10_000,
    ) {
        let s = small(name);
        let x = pick(s, i);
        let c = centralizer(&s.chain, &x, &mut Budget::unlimited()).unwrap();
        let brute = s.ex.elements.iter().filter(|g| x.conj(g) == x).count();
        prop_assert_eq!(c.order_u64(), Some(brute as u64));
        let size = &s.ex.classes[s.ex.class_of(&x).unwrap()].size;
        prop_assert_eq!(size * c.order(), s.chain.order());
    }

    #[test]
    fn chain_order_matches_closure(
        name in prop::sample::select(vec!["a5.gens", "psl28.gens", "d18.gens"]),
        i in 0usize..10_000,
        j in 0usize..10_000,
    ) {
        let s = small(name);
        let gens = [pick(s, i), pick(s, j)];
        let sub = StabilizerChain::new(s.chain.degree(), &gens).unwrap();
        // closure by right multiplication with the generators
        let mut seen = std::collections::HashSet::from([s.chain.identity()]);
        let mut queue = vec![s.chain.identity()];
        while let Some(g) = queue.pop() {
            for h in &gens {
                let gh = &g * h;
                if seen.insert(gh.clone()) {
                    queue.push(gh);
                }
            }
        }
        prop_assert_eq!(sub.order_u64(), Some(seen.len() as u64));
        prop_assert!(seen.iter().all(|g| sub.contains(g)));
    }

    #[test]
    fn sylow_ascent_reaches_the_three_part(seed in 0u64..1000) {
        let s = small("psl28.gens");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = s.chain.random_element(&mut rng);
        let mut m = g.order();
        while m.is_multiple_of(3) {
            m /= 3;
        }
        let p = sylow3_by_ascent(&s.chain, &g.pow(m as i64), &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(p.order_u64(), Some(9));
    }
}
