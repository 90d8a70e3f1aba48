use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Inputs, Status, Step, VerifyOptions};
use crate::classops::{cmc, decompose, min_centralizer_bound, sum_of_irreducibles, value_on};
use crate::exact::{rational, Cyclotomic};
use crate::permgrp::{
    all_subgroups, brute_structure_constant, c9_conjugacy_census, centralizer, d18_extension_census,
    find_element_of_order, fusion_prerequisites, generation_check, match_table_classes, Budget, ExhaustiveClasses,
    Permutation, StabilizerChain, ENUMERATION_LIMIT,
};
use crate::tables::{direct_product, CharacterTable};

/// Th-side constituents of the three summed characters.
const SUMS: [(&str, &[&str]); 3] =
    [("34999", &["30875", "4123", "1"]), ("30628", &["30628"]), ("65628", &["61256", "4123", "248", "1"])];

/// Values of the summed characters on 2A and 7A.
const VALUES_2A_7A: [(i64, i64); 3] = [(183, 13), (-92, 3), (92, 17)];

/// The S3 x Th character: 2 (x) 65628 + 1 (x) 34999 + 1- (x) 30628.
const PRODUCT_PARTS: [(&str, usize); 3] = [("2", 2), ("1", 0), ("1-", 1)];

const NINE_CLASSES: [&str; 3] = ["9A", "9B", "9C"];
const INNER_VALUES: [i64; 3] = [-1, -1, 26];
const DIAGONAL_VALUES: [i64; 3] = [26, 26, -1];

struct Builder {
    step: Step,
    ok: bool,
}

impl Builder {
    fn new(id: &str, claim: &str, anchor: &str) -> Self {
        Builder {
            step: Step { id: id.into(), claim: claim.into(), anchor: anchor.into(), status: Status::Pass, witnesses: vec![] },
            ok: true,
        }
    }

    fn w(&mut self, k: impl Into<String>, v: impl ToString) -> &mut Self {
        self.step.witnesses.push((k.into(), v.to_string()));
        self
    }

    fn check(&mut self, cond: bool) -> &mut Self {
        self.ok &= cond;
        self
    }

    fn fail(mut self, error: impl ToString) -> Step {
        self.step.witnesses.push(("error".into(), error.to_string()));
        self.step.status = Status::Fail;
        self.step
    }

    fn finish(mut self) -> Step {
        self.step.status = if self.ok { Status::Pass } else { Status::Fail };
        self.step
    }

    fn with(mut self, status: Status) -> Step {
        self.step.status = status;
        self.step
    }
}

pub(super) fn run(id: &str, inp: &Inputs, opts: &VerifyOptions) -> Option<Step> {
    Some(match id {
        "R1" => r1(inp),
        "R2" => r2(inp),
        "R3" => r3(inp),
        "R4" => r4(inp),
        "C1" => c1(),
        "C2" => c2(),
        "P1" => p1(inp),
        "U1" => u1(inp, opts),
        "U2" => u2(inp, opts),
        "U3" => u3(inp, opts),
        "U4" => u4(inp),
        "F1" => f1(inp),
        "A1" => assumed(
            "A1",
            "3 x PSL2(8) lies in exactly four Monster classes; the 3A-type normalizer is PSL2(8):3 x 3S6 (Norton)",
            "Norton: classes of 3 x PSL2(8)",
        ),
        "A2" => assumed(
            "A2",
            "for the three 3A-centralized cases, PSL2(8) order-9 elements lie in Baby Monster 9B and, in two cases, the diagonal ones in 9A",
            "Baby Monster 9A/9B fusion",
        ),
        "A3" => assumed(
            "A3",
            "the Monster centralizer of an element of order 19 is 19 x A5 with classes 2A, 3C, 5A",
            "19 x A5 centralizer",
        ),
        "A4" => assumed(
            "A4",
            "the 9A centralizer 9 o 3^6.O5(3) is a non-split extension",
            "9A centralizer: non-split",
        ),
        _ => return None,
    })
}

fn assumed(id: &str, claim: &str, anchor: &str) -> Step {
    let mut b = Builder::new(id, claim, anchor);
    b.w("source", "literature; not recomputed");
    b.with(Status::Assumed)
}

fn sum_label(target: &str, names: &[&str]) -> String {
    format!("{target} = {}", names.join("+"))
}

fn degree_of(t: &CharacterTable, name: &str) -> Option<BigInt> {
    let id = t.identity_class()?;
    t.irreducible(name).ok()?.values[id].to_integer()
}

fn r1(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "R1",
        "2*65628 + 34999 + 30628 = 196883, with each summand the degree of its Th constituents",
        "restriction to S3 x Th: degree identity",
    );
    let total = 2 * 65628 + 34999 + 30628;
    b.w("2*65628 + 34999 + 30628", total).check(total == 196_883);
    for (target, names) in SUMS {
        let degrees: Option<Vec<BigInt>> = names.iter().map(|n| degree_of(&inp.th, n)).collect();
        match degrees {
            Some(d) => {
                let s: BigInt = d.iter().sum();
                b.w(sum_label(target, names), &s).check(s.to_string() == target);
            }
            None => {
                b.w(sum_label(target, names), "constituent missing from Th table").check(false);
            }
        }
    }
    b.finish()
}

fn r2(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "R2",
        "the summed Th characters 34999, 30628, 65628 take values (183, 13), (-92, 3), (92, 17) on (2A, 7A)",
        "values on Th classes 2A and 7A",
    );
    b.w("table", &inp.th.name).w("partial", inp.th.partial);
    for ((target, names), (e2, e7)) in SUMS.iter().zip(VALUES_2A_7A) {
        let label = sum_label(target, names);
        let got = sum_of_irreducibles(&inp.th, names)
            .and_then(|f| Ok((value_on(&f, "2A")?, value_on(&f, "7A")?, f.degree().cloned())));
        match got {
            Ok((v2, v7, deg)) => {
                let ok = v2 == Cyclotomic::from_int(e2)
                    && v7 == Cyclotomic::from_int(e7)
                    && deg.is_some_and(|d| d.to_string() == *target);
                b.w(format!("{label} on (2A, 7A)"), format!("({v2}, {v7})")).check(ok);
                if !ok {
                    b.w("mismatch", format!("{label}: expected ({e2}, {e7})"));
                }
            }
            Err(e) => {
                b.w(format!("{label} on (2A, 7A)"), e).check(false);
            }
        }
    }
    b.finish()
}

/// Non-negative integer combinations of irreducibles with the given degree
/// and the given integer values on `classes`. `None` if some candidate
/// irreducible has a non-integral value there.
fn matching_combinations(t: &CharacterTable, degree: i64, classes: &[usize], values: &[i64]) -> Option<Vec<String>> {
    let id = t.identity_class()?;
    let mut items: Vec<(String, i64, Vec<i64>)> = Vec::new();
    let mut trivial: Option<Vec<i64>> = None;
    for irr in &t.irreducibles {
        let d = irr.values[id].to_integer()?.to_i64()?;
        if d > degree {
            continue;
        }
        let v: Vec<i64> =
            classes.iter().map(|&c| irr.values[c].to_integer().and_then(|x| x.to_i64())).collect::<Option<_>>()?;
        if d == 1 && v.iter().all(|&x| x == 1) {
            trivial = Some(v);
        } else {
            items.push((irr.name.clone(), d, v));
        }
    }
    let trivial = trivial?;
    items.sort_by_key(|(_, d, _)| std::cmp::Reverse(*d));

    #[allow(clippy::too_many_arguments)]
    fn go(
        items: &[(String, i64, Vec<i64>)],
        k: usize,
        rest: i64,
        acc: &mut Vec<i64>,
        chosen: &mut Vec<(usize, i64)>,
        trivial: &[i64],
        target: &[i64],
        out: &mut Vec<String>,
    ) {
        if k == items.len() {
            let ok = (0..target.len()).all(|c| acc[c] + rest * trivial[c] == target[c]);
            if ok {
                let mut parts: Vec<String> =
                    chosen.iter().map(|&(i, m)| if m == 1 { items[i].0.clone() } else { format!("{m}*{}", items[i].0) }).collect();
                if rest > 0 {
                    parts.push(if rest == 1 { "1".into() } else { format!("{rest}*1") });
                }
                out.push(parts.join("+"));
            }
            return;
        }
        let (_, d, v) = &items[k];
        for m in 0..=rest / d {
            for c in 0..acc.len() {
                acc[c] += m * v[c];
            }
            if m > 0 {
                chosen.push((k, m));
            }
            go(items, k + 1, rest - m * d, acc, chosen, trivial, target, out);
            if m > 0 {
                chosen.pop();
            }
            for c in 0..acc.len() {
                acc[c] -= m * v[c];
            }
        }
    }
    let mut out = Vec::new();
    go(&items, 0, degree, &mut vec![0; classes.len()], &mut Vec::new(), &trivial, values, &mut out);
    Some(out)
}

fn r3(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "R3",
        "decomposing the three summed characters over the full Th table gives 30875+4123+1, 30628 and 61256+4123+248+1 with zero remainder",
        "decomposition into Th irreducibles",
    );
    if inp.th.partial {
        return b.with(Status::Skipped("partial-table".into()));
    }
    let th = &inp.th;
    let (Ok(c2), Ok(c7)) = (th.class_index("2A"), th.class_index("7A")) else {
        return b.fail("Th table lacks class 2A or 7A");
    };
    for ((target, names), (e2, e7)) in SUMS.iter().zip(VALUES_2A_7A) {
        let d = match sum_of_irreducibles(th, names).and_then(|f| decompose(&f)) {
            Ok(d) => d,
            Err(e) => return b.fail(e),
        };
        let mut expected: Vec<&str> = names.to_vec();
        expected.sort();
        let mut got: Vec<&str> = d.parts.iter().map(|(n, _)| n.as_str()).collect();
        got.sort();
        let ones = d.parts.iter().all(|(_, m)| *m == BigInt::from(1));
        b.w(*target, &d).check(d.is_character() && ones && got == expected);
        // every way to reach this degree and these (2A, 7A) values
        let degree: i64 = target.parse().expect("numeric label");
        match matching_combinations(th, degree, &[c2, c7], &[e2, e7]) {
            Some(all) => {
                b.w(format!("{target}: combinations matching degree, 2A, 7A"), all.join(" | "));
            }
            None => {
                b.w(format!("{target}: combinations matching degree, 2A, 7A"), "not enumerable (irrational values)");
            }
        }
    }
    b.finish()
}

fn r4(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "R4",
        "on S3 x Th the degree-196883 character takes (-1, -1, 26) on (1, 9X) and (26, 26, -1) on (3A, 9X) for X = A, B, C, so each diagonal order-9 class differs from the Th class",
        "inner versus diagonal order-9 values",
    );
    let product = Arc::new(direct_product(&inp.s3, &inp.th));
    let mut names: Vec<String> = Vec::new();
    for (s3_name, k) in PRODUCT_PARTS {
        for th_name in SUMS[k].1 {
            names.push(format!("{s3_name}*{th_name}"));
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let chi = match sum_of_irreducibles(&product, &refs) {
        Ok(f) => f,
        Err(e) => return b.fail(e),
    };
    b.w("product classes", product.class_count());
    let degree = chi.degree().cloned();
    b.w("degree", degree.as_ref().map(|d| d.to_string()).unwrap_or_default())
        .check(degree == Some(Cyclotomic::from_int(196_883)));
    for (k, x) in NINE_CLASSES.iter().enumerate() {
        let inner = value_on(&chi, &format!("1A,{x}"));
        let diag = value_on(&chi, &format!("3A,{x}"));
        match (inner, diag) {
            (Ok(i), Ok(d)) => {
                let ok = i == Cyclotomic::from_int(INNER_VALUES[k]) && d == Cyclotomic::from_int(DIAGONAL_VALUES[k]) && i != d;
                b.w(format!("(1A,{x}) vs (3A,{x})"), format!("{i} vs {d}")).check(ok);
            }
            (Err(e), _) | (_, Err(e)) => return b.fail(e),
        }
    }
    b.finish()
}

fn c1() -> Step {
    let mut b = Builder::new(
        "C1",
        "order bookkeeping for [3^7].PSU4(2) (informational)",
        "9A centralizer shape",
    );
    let psu42: u64 = 25_920;
    let order = 3u64.pow(7) * psu42;
    let central = 9 * 3u64.pow(6) * psu42 / 3;
    b.w("3^7 * |PSU4(2)|", order)
        .w("|9 o 3^6.O5(3)| = 9 * 3^6 * 25920 / 3", central)
        .check(order == 56_687_040 && central == order);
    b.finish()
}

fn c2() -> Step {
    let mut b = Builder::new(
        "C2",
        "an involution class of 3^6 = 729 elements acted on by a group of order 9720 forces a centralizer of order at least 40/3, hence at least 14",
        "9 x 3 centralizer counting bound",
    );
    let class_size = BigInt::from(3u32.pow(6));
    let symmetry = BigInt::from(9 * 1080);
    b.w("class size", &class_size).w("symmetry order", &symmetry);
    match min_centralizer_bound(&symmetry, &class_size) {
        Ok((bound, ceil)) => {
            b.w("bound", &bound).w("integer bound", &ceil);
            b.check(bound == rational(40, 3) && ceil == BigInt::from(14));
        }
        Err(e) => return b.fail(e),
    }
    // (9 o 3^6).(A6 x 2) has the same order as (9 x 3).3^4.(2 x A6)
    let lhs = 9 * 729 * 720 / 3;
    let rhs = 27 * 81 * 720;
    b.w("|(9 o 3^6).(A6 x 2)|", lhs).check(lhs == rhs);
    b.finish()
}

fn p1(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "P1",
        "every subgroup of A5 of order at least 14 is A5 itself; the largest proper subgroup has order 12",
        "A5 subgroups of order at least 14",
    );
    let chain = match StabilizerChain::new(inp.a5.degree, &inp.a5.gens) {
        Ok(c) => c,
        Err(e) => return b.fail(e),
    };
    let subs = match all_subgroups(&chain) {
        Ok(s) => s,
        Err(e) => return b.fail(e),
    };
    let order = chain.order_u64().unwrap_or(0) as usize;
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &subs {
        *by_order.entry(s.order).or_default() += 1;
    }
    let census: Vec<String> = by_order.iter().map(|(o, n)| format!("{o}x{n}")).collect();
    let max_proper = subs.iter().map(|s| s.order).filter(|&o| o < order).max().unwrap_or(0);
    let large: Vec<usize> = subs.iter().map(|s| s.order).filter(|&o| o >= 14).collect();
    b.w("group order", order)
        .w("subgroups", subs.len())
        .w("orders", census.join(", "))
        .w("largest proper order", max_proper)
        .w("orders >= 14", format!("{large:?}"))
        .check(order == 60 && subs.len() == 59 && max_proper == 12 && large == vec![60]);
    b.finish()
}

fn psu38<'a>(inp: &'a Inputs, b: &mut Builder) -> Result<&'a StabilizerChain, Option<String>> {
    match inp.psu38_chain() {
        None => Err(None),
        Some(Err(e)) => Err(Some(e)),
        Some(Ok(c)) => {
            b.w("group order", c.order());
            Ok(c)
        }
    }
}

macro_rules! psu38_or_return {
    ($inp:expr, $b:ident) => {
        match psu38($inp, &mut $b) {
            Ok(c) => c,
            Err(None) => return $b.with(Status::Skipped("psu38.gens absent".into())),
            Err(Some(e)) => return $b.fail(e),
        }
    };
}

fn order_nine(chain: &StabilizerChain, seed: u64) -> Result<Permutation, String> {
    find_element_of_order(chain, 9, seed).map_err(|e| e.to_string())
}

fn u1(inp: &Inputs, opts: &VerifyOptions) -> Step {
    let mut b = Builder::new(
        "U1",
        "all cyclic subgroups of order 9 in PSU3(8) are conjugate",
        "PSU3(8): cyclic 9-subgroups conjugate",
    );
    let chain = psu38_or_return!(inp, b);
    b.check(chain.order() == 5_515_776u64.into());
    let census = match c9_conjugacy_census(chain, opts.seed, &mut Budget::new(opts.budget)) {
        Ok(c) => c,
        Err(e) => return b.fail(e),
    };
    let verified = census.witnesses.iter().all(|(i, j, k, w)| census.generators[*i].conj(w) == census.generators[*j].pow(*k));
    let exps: Vec<String> = census.witnesses.iter().map(|(i, j, k, _)| format!("x{i}^w = x{j}^{k}")).collect();
    b.w("Sylow 3-subgroup order", &census.sylow_order)
        .w("cyclic 9-subgroups in the Sylow subgroup", census.generators.len())
        .w("verdict", census.verdict())
        .w("conjugators", exps.join(", "))
        .w("conjugators verified", verified)
        .check(census.sylow_order == 81u32.into() && census.all_conjugate() && verified);
    b.finish()
}

fn u2(inp: &Inputs, opts: &VerifyOptions) -> Step {
    let mut b = Builder::new(
        "U2",
        "the centralizer of an order-9 element of PSU3(8) is 9 x 3, with 3 cyclic subgroups of order 9 and 3 complements of order 3 to each",
        "PSU3(8): subgroups of 9 x 3",
    );
    let chain = psu38_or_return!(inp, b);
    let x = match order_nine(chain, opts.seed) {
        Ok(x) => x,
        Err(e) => return b.fail(e),
    };
    let c = match centralizer(chain, &x, &mut Budget::new(opts.budget)) {
        Ok(c) => c,
        Err(e) => return b.fail(e),
    };
    let gens = c.generators();
    let abelian = gens.iter().all(|g| gens.iter().all(|h| g * h == h * g));
    let subs = match all_subgroups(&c) {
        Ok(s) => s,
        Err(e) => return b.fail(e),
    };
    let c9: Vec<_> = subs.iter().filter(|s| s.order == 9 && s.is_cyclic()).collect();
    let c3: Vec<_> = subs.iter().filter(|s| s.order == 3).collect();
    let x_group: Vec<Permutation> = (0..9).map(|i| x.pow(i)).collect();
    let complements = c3.iter().filter(|s| !s.elements.iter().all(|g| x_group.contains(g))).count();
    let exponent = c.elements(ENUMERATION_LIMIT).map(|e| e.iter().map(|g| g.order()).max().unwrap_or(1)).unwrap_or(0);
    b.w("centralizer order", c.order())
        .w("abelian", abelian)
        .w("exponent", exponent)
        .w("cyclic subgroups of order 9", c9.len())
        .w("subgroups of order 3", c3.len())
        .w("order-3 complements to <x>", complements)
        .check(c.order() == 27u32.into() && abelian && exponent == 9 && c9.len() == 3 && c3.len() == 4 && complements == 3);
    b.finish()
}

fn u3(inp: &Inputs, opts: &VerifyOptions) -> Step {
    let mut b = Builder::new(
        "U3",
        "a cyclic subgroup of order 9 in PSU3(8) lies in exactly one D18 up to conjugacy by its normalizer",
        "PSU3(8): unique D18",
    );
    let chain = psu38_or_return!(inp, b);
    let x = match order_nine(chain, opts.seed) {
        Ok(x) => x,
        Err(e) => return b.fail(e),
    };
    match d18_extension_census(chain, &x, &mut Budget::new(opts.budget)) {
        Ok(d) => {
            b.w("|C(x)|", &d.centralizer_order)
                .w("|N(<x>)|", &d.normalizer_order)
                .w("inverting involutions", d.inverting_involutions)
                .w("D18 subgroups containing <x>", d.dihedral_subgroups)
                .w("classes under N(<x>)", d.classes)
                .check(d.classes == 1);
            b.finish()
        }
        Err(e) => b.fail(e),
    }
}

fn u4(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "U4",
        "a PSL2(8) x 3 of order 1512 together with one involution normalizing a 9 x 3 generates PSU3(8)",
        "PSU3(8): generation from PSL2(8) x 3",
    );
    let chain = psu38_or_return!(inp, b);
    let (sub, ext) = match (&inp.psu38_sub, &inp.psu38_ext) {
        (Some(Ok(s)), Some(Ok(e))) => (s, e),
        (Some(Err(e)), _) | (_, Some(Err(e))) => return b.fail(e),
        _ => return b.with(Status::Skipped("psu38_sub.gens or psu38_ext.gens absent".into())),
    };
    let Some(t) = ext.gens.first() else {
        return b.fail("psu38_ext.gens has no generator");
    };
    match generation_check(chain, &sub.gens, t) {
        Ok(r) => {
            b.w("|H|", &r.sub_order)
                .w("|H'|", &r.derived_order)
                .w("extender order", t.order())
                .w("extender in H", r.extender_in_sub)
                .w("|<H, t>|", &r.generated_order)
                .w("|H meet H^t|", r.intersection_order)
                .w("|N_H(H meet H^t)|", r.intersection_normalizer_order)
                .w("|<N_H(H meet H^t), t>|", &r.extended_normalizer_order)
                .check(r.generates_group() && t.order() == 2);
            b.finish()
        }
        Err(e) => b.fail(e),
    }
}

fn f1(inp: &Inputs) -> Step {
    let mut b = Builder::new(
        "F1",
        "PSL2(8) has elements of order 9, a single class of 63 involutions, and an elementary abelian 2^3 whose involutions are all conjugate",
        "PSL2(8): order-9 elements and a pure 2^3",
    );
    let chain = match StabilizerChain::new(inp.psl28.degree, &inp.psl28.gens) {
        Ok(c) => c,
        Err(e) => return b.fail(e),
    };
    let f = match fusion_prerequisites(&chain) {
        Ok(f) => f,
        Err(e) => return b.fail(e),
    };
    let sizes: Vec<String> = f.involution_classes.iter().map(|s| s.to_string()).collect();
    b.w("group order", &f.group_order)
        .w("order-9 element", f.order_nine_element.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "none".into()))
        .w("involution class sizes", sizes.join(", "))
        .w(
            "2^3 involutions",
            f.elementary_abelian_8
                .as_ref()
                .map(|v| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" "))
                .unwrap_or_else(|| "none".into()),
        )
        .w("pure", f.pure)
        .check(
            f.group_order == 504u32.into()
                && f.order_nine_element.is_some()
                && sizes == ["63"]
                && f.elementary_abelian_8.is_some()
                && f.pure,
        );
    if let Some(t) = &inp.psl28_table {
        match structure_constants_237(t, &chain) {
            Ok(lines) => {
                for (k, v, ok) in lines {
                    b.w(k, v).check(ok);
                }
            }
            Err(e) => return b.fail(e),
        }
    }
    b.finish()
}

/// `(2A, 3A, 7X)` structure constants from the table against pair counts in
/// the group.
fn structure_constants_237(t: &CharacterTable, chain: &StabilizerChain) -> Result<Vec<(String, String, bool)>, String> {
    let ex = ExhaustiveClasses::compute(chain, ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
    let map = match_table_classes(t, &ex).ok_or("no class matching between psl28.ct and the group")?;
    let idx = |l: &str| t.class_index(l).map_err(|e| e.to_string());
    let (a, c) = (idx("2A")?, idx("3A")?);
    let mut out = Vec::new();
    for (k, cl) in t.classes.iter().enumerate().filter(|(_, c)| c.element_order == 7) {
        let from_table = cmc(t, "2A", "3A", &cl.label).map_err(|e| e.to_string())?;
        let z = &ex.classes[map[k]].representative;
        let brute = brute_structure_constant(&ex, map[a], map[c], z);
        out.push((
            format!("cmc(2A, 3A, {}) table / brute", cl.label),
            format!("{from_table} / {brute}"),
            from_table == rational(brute as i64, 1),
        ));
    }
    Ok(out)
}
