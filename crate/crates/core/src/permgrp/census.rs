use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classes::ExhaustiveClasses;
use super::{
    centralizer, is_conjugate, normalizer, normalizer_of_cyclic, Budget, PermError, Permutation, StabilizerChain,
    ENUMERATION_LIMIT,
};
use crate::exact::gcd_u64;

const RANDOM_SAMPLES: u64 = 20_000;

/// An element of order exactly `ord`: the first one in element order for
/// enumerable groups, otherwise a power of a seeded random element.
pub fn find_element_of_order(chain: &StabilizerChain, ord: u64, seed: u64) -> Result<Permutation, PermError> {
    if chain.order_u64().is_some_and(|o| o <= ENUMERATION_LIMIT) {
        return chain
            .elements(ENUMERATION_LIMIT)?
            .into_iter()
            .find(|g| g.order() == ord)
            .ok_or(PermError::NoElementOfOrder(ord));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        let g = chain.random_element(&mut rng);
        let o = g.order();
        if o.is_multiple_of(ord) {
            return Ok(g.pow((o / ord) as i64));
        }
    }
    Err(PermError::NoElementOfOrder(ord))
}

fn three_part(n: &BigUint) -> BigUint {
    let three = BigUint::from(3u32);
    let mut n = n.clone();
    let mut part = BigUint::from(1u32);
    while (&n % &three) == BigUint::ZERO {
        n /= &three;
        part *= &three;
    }
    part
}

/// Grows `<seed>` to a Sylow 3-subgroup: while `P` is not Sylow, a 3-element
/// of `N(P)` outside `P` exists and is adjoined.
pub fn sylow3_by_ascent(chain: &StabilizerChain, seed: &Permutation, budget: &mut Budget) -> Result<StabilizerChain, PermError> {
    let target = three_part(&chain.order());
    let mut p = if seed.is_identity() {
        if target == BigUint::from(1u32) {
            return chain.subgroup(&[]);
        }
        let x = find_element_of_order(chain, 3, 1)?;
        chain.subgroup(&[x])?
    } else {
        let o = seed.order();
        if three_part(&BigUint::from(o)) != BigUint::from(o) {
            return Err(PermError::AscentStalled(format!("seed of order {o} is not a 3-element")));
        }
        chain.subgroup(std::slice::from_ref(seed))?
    };
    while p.order() != target {
        let n = normalizer(chain, p.generators(), budget)?;
        let mut grown = None;
        for g in n.elements(ENUMERATION_LIMIT)? {
            if p.contains(&g) {
                continue;
            }
            let mut m = g.order();
            while m % 3 == 0 {
                m /= 3;
            }
            let g3 = g.pow(m as i64);
            if !g3.is_identity() && !p.contains(&g3) {
                grown = Some(g3);
                break;
            }
        }
        match grown {
            Some(g3) => p = p.join(&[g3])?,
            None => return Err(PermError::AscentStalled(p.order().to_string())),
        }
    }
    Ok(p)
}

fn units(n: u64) -> Vec<i64> {
    (1..n).filter(|&k| gcd_u64(k, n) == 1).map(|k| k as i64).collect()
}

/// Cyclic subgroups of order 9 in one Sylow 3-subgroup, grouped into
/// conjugacy classes of the ambient group.
#[derive(Debug, Clone)]
pub struct C9Census {
    pub group_order: BigUint,
    pub sylow_order: BigUint,
    /// One generator per cyclic subgroup of order 9 in the Sylow subgroup.
    pub generators: Vec<Permutation>,
    pub class_of: Vec<usize>,
    pub classes: usize,
    /// `(i, j, k, w)`: `generators[i]^w = generators[j]^k`.
    pub witnesses: Vec<(usize, usize, i64, Permutation)>,
}

impl C9Census {
    pub fn all_conjugate(&self) -> bool {
        self.classes == 1
    }

    pub fn verdict(&self) -> String {
        if self.all_conjugate() {
            "all conjugate".to_string()
        } else {
            format!("{} classes", self.classes)
        }
    }
}

/// Every cyclic subgroup of order 9 lies in a Sylow 3-subgroup and those are
/// conjugate, so testing the ones inside a single Sylow subgroup settles
/// conjugacy of all of them.
pub fn c9_conjugacy_census(chain: &StabilizerChain, seed: u64, budget: &mut Budget) -> Result<C9Census, PermError> {
    let x = find_element_of_order(chain, 9, seed)?;
    let p = sylow3_by_ascent(chain, &x, budget)?;
    let mut generators: Vec<Permutation> = Vec::new();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut elts = p.elements(ENUMERATION_LIMIT)?;
    elts.sort();
    for g in elts {
        if g.order() != 9 || seen.contains(&g) {
            continue;
        }
        for k in units(9) {
            seen.insert(g.pow(k));
        }
        generators.push(g);
    }
    let mut class_of: Vec<usize> = Vec::with_capacity(generators.len());
    let mut reps: Vec<usize> = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..generators.len() {
        let mut hit = None;
        'reps: for (r, &j) in reps.iter().enumerate() {
            for k in units(9) {
                if let Some(w) = is_conjugate(chain, &generators[j], &generators[i].pow(k), budget)? {
                    witnesses.push((j, i, k, w));
                    hit = Some(r);
                    break 'reps;
                }
            }
        }
        match hit {
            Some(r) => class_of.push(r),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    Ok(C9Census { group_order: chain.order(), sylow_order: p.order(), generators, class_of, classes: reps.len(), witnesses })
}

/// Dihedral subgroups `<x, t>` with `t` an involution inverting `x`.
#[derive(Debug, Clone)]
pub struct D18Census {
    pub centralizer_order: BigUint,
    pub normalizer_order: BigUint,
    pub inverting_involutions: usize,
    pub dihedral_subgroups: usize,
    /// Orbits of the normalizer of `<x>` on those subgroups.
    pub classes: usize,
    pub example: Option<Permutation>,
}

pub fn d18_extension_census(chain: &StabilizerChain, x: &Permutation, budget: &mut Budget) -> Result<D18Census, PermError> {
    if !chain.contains(x) {
        return Err(PermError::NotInGroup(x.to_string()));
    }
    let c = centralizer(chain, x, budget)?;
    let n = normalizer_of_cyclic(chain, x, budget)?;
    let xinv = x.inverse();
    let mut involutions = Vec::new();
    if let Some(w0) = is_conjugate(chain, x, &xinv, budget)? {
        for cc in c.elements(ENUMERATION_LIMIT)? {
            let t = &cc * &w0;
            if !t.is_identity() && (&t * &t).is_identity() {
                involutions.push(t);
            }
        }
    }
    involutions.sort();
    let ord = x.order() as i64;
    let powers: Vec<Permutation> = (0..ord).map(|i| x.pow(i)).collect();
    let dihedral = |t: &Permutation| -> BTreeSet<Permutation> {
        powers.iter().flat_map(|p| [p.clone(), p * t]).collect()
    };
    let mut subgroups: Vec<BTreeSet<Permutation>> = Vec::new();
    let mut index: HashMap<BTreeSet<Permutation>, usize> = HashMap::new();
    for t in &involutions {
        let d = dihedral(t);
        if !index.contains_key(&d) {
            index.insert(d.clone(), subgroups.len());
            subgroups.push(d);
        }
    }
    // orbits under conjugation by the normalizer
    let mut parent: Vec<usize> = (0..subgroups.len()).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (i, d) in subgroups.iter().enumerate() {
        for g in n.generators() {
            let image: BTreeSet<Permutation> = d.iter().map(|e| e.conj(g)).collect();
            let j = *index.get(&image).expect("normalizer permutes the dihedral subgroups");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let classes = (0..subgroups.len()).filter(|&i| find(&mut parent, i) == i).count();
    Ok(D18Census {
        centralizer_order: c.order(),
        normalizer_order: n.order(),
        inverting_involutions: involutions.len(),
        dihedral_subgroups: subgroups.len(),
        classes,
        example: involutions.first().cloned(),
    })
}

#[derive(Debug, Clone)]
pub struct FusionPrerequisites {
    pub group_order: BigUint,
    pub order_nine_element: Option<Permutation>,
    /// Sizes of the classes of involutions.
    pub involution_classes: Vec<BigUint>,
    /// The seven involutions of an elementary abelian subgroup of order 8.
    pub elementary_abelian_8: Option<Vec<Permutation>>,
    /// All seven lie in one class of the group.
    pub pure: bool,
}

impl FusionPrerequisites {
    pub fn single_involution_class(&self) -> bool {
        self.involution_classes.len() == 1
    }
}

/// Exhaustive checks on an enumerable group: order-9 elements, involution
/// classes, and an explicit elementary abelian subgroup of order 8.
pub fn fusion_prerequisites(chain: &StabilizerChain) -> Result<FusionPrerequisites, PermError> {
    let ex = ExhaustiveClasses::compute(chain, ENUMERATION_LIMIT)?;
    let order_nine_element = ex.elements.iter().find(|g| g.order() == 9).cloned();
    let involution_classes = ex.classes.iter().filter(|c| c.element_order == 2).map(|c| c.size.clone()).collect();
    let involutions: Vec<&Permutation> = ex.elements.iter().filter(|g| g.order() == 2).collect();
    let commute = |a: &Permutation, b: &Permutation| a * b == b * a;
    let mut e8 = None;
    'search: for (i, t1) in involutions.iter().enumerate() {
        for (j, t2) in involutions.iter().enumerate().skip(i + 1) {
            if !commute(t1, t2) {
                continue;
            }
            let t12 = *t1 * *t2;
            for t3 in involutions.iter().skip(j + 1) {
                if **t3 == t12 || !commute(t1, t3) || !commute(t2, t3) {
                    continue;
                }
                let t13 = *t1 * *t3;
                let t23 = *t2 * *t3;
                let t123 = &t12 * *t3;
                e8 = Some(vec![(*t1).clone(), (*t2).clone(), t12, (*t3).clone(), t13, t23, t123]);
                break 'search;
            }
        }
    }
    let pure = e8.as_ref().is_some_and(|v| {
        let first = ex.class_of(&v[0]);
        v.iter().all(|g| ex.class_of(g) == first)
    });
    Ok(FusionPrerequisites { group_order: chain.order(), order_nine_element, involution_classes, elementary_abelian_8: e8, pure })
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub group_order: BigUint,
    pub sub_order: BigUint,
    pub derived_order: BigUint,
    pub extender_in_sub: bool,
    pub generated_order: BigUint,
    /// `H` intersected with its conjugate by the extender.
    pub intersection_order: usize,
    /// Normalizer in `H` of that intersection.
    pub intersection_normalizer_order: usize,
    /// Order of the group generated by that normalizer and the extender.
    pub extended_normalizer_order: BigUint,
}

impl GenerationReport {
    pub fn generates_group(&self) -> bool {
        self.generated_order == self.group_order
    }
}

pub const SUB_ORDER: u64 = 1512;
pub const SUB_DERIVED_ORDER: u64 = 504;

/// Checks that `sub_gens` generate a subgroup of order 1512 whose derived
/// subgroup has order 504, then computes the order of the group generated
/// together with `extender`.
pub fn generation_check(
    chain: &StabilizerChain,
    sub_gens: &[Permutation],
    extender: &Permutation,
) -> Result<GenerationReport, PermError> {
    let h = chain.subgroup(sub_gens)?;
    if h.order() != BigUint::from(SUB_ORDER) {
        return Err(PermError::SubgroupOrderMismatch { expected: SUB_ORDER.to_string(), found: h.order().to_string() });
    }
    let derived = h.derived_subgroup()?;
    if derived.order() != BigUint::from(SUB_DERIVED_ORDER) {
        return Err(PermError::SubgroupOrderMismatch {
            expected: format!("{SUB_DERIVED_ORDER} (derived subgroup)"),
            found: derived.order().to_string(),
        });
    }
    if !chain.contains(extender) {
        return Err(PermError::NotInGroup(extender.to_string()));
    }
    let k = h.join(std::slice::from_ref(extender))?;

    let helts = h.elements(ENUMERATION_LIMIT)?;
    let tinv = extender.inverse();
    let inter: Vec<&Permutation> = helts.iter().filter(|g| h.contains(&g.conj(&tinv))).collect();
    let inter_set: HashSet<&Permutation> = inter.iter().copied().collect();
    let owned_inter: HashSet<Permutation> = inter.iter().map(|g| (*g).clone()).collect();
    let norm: Vec<Permutation> =
        helts.iter().filter(|g| inter.iter().all(|e| owned_inter.contains(&e.conj(g)))).cloned().collect();
    let mut ext_gens = norm.clone();
    ext_gens.push(extender.clone());
    let extended = StabilizerChain::new(chain.degree(), &ext_gens)?;
    debug_assert_eq!(inter_set.len(), inter.len());

    Ok(GenerationReport {
        group_order: chain.order(),
        sub_order: h.order(),
        derived_order: derived.order(),
        extender_in_sub: h.contains(extender),
        generated_order: k.order(),
        intersection_order: inter.len(),
        intersection_normalizer_order: norm.len(),
        extended_normalizer_order: extended.order(),
    })
}
