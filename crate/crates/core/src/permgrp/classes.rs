use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{centralizer, is_conjugate, Budget, PermError, Permutation, StabilizerChain, ENUMERATION_LIMIT};
use crate::tables::CharacterTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassData {
    pub representative: Permutation,
    pub size: BigUint,
    pub element_order: u64,
    pub centralizer_order: BigUint,
}

#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<ConjClassData>,
    /// Class sizes add up to the group order.
    pub complete: bool,
    /// Obtained by enumerating every element.
    pub exhaustive: bool,
}

/// Conjugacy classes of an enumerable group, with every element indexed.
#[derive(Debug, Clone)]
pub struct ExhaustiveClasses {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_of: Vec<usize>,
    pub classes: Vec<ConjClassData>,
}

impl ExhaustiveClasses {
    /// Orbits of the conjugation action of the generators on all elements.
    /// Classes are sorted by element order, then by decreasing centralizer.
    pub fn compute(chain: &StabilizerChain, limit: u64) -> Result<Self, PermError> {
        let elements = chain.elements(limit)?;
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let order = elements.len();
        let mut raw_class = vec![usize::MAX; order];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let gens: Vec<&Permutation> = chain.generators().iter().filter(|g| !g.is_identity()).collect();
        for start in 0..order {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            raw_class[start] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let g = &elements[orbit[k]];
                for s in &gens {
                    let h = index[&g.conj(s)];
                    if raw_class[h] == usize::MAX {
                        raw_class[h] = id;
                        orbit.push(h);
                    }
                }
                k += 1;
            }
            orbits.push(orbit);
        }
        let mut perm: Vec<usize> = (0..orbits.len()).collect();
        perm.sort_by_key(|&c| (elements[orbits[c][0]].order(), orbits[c].len()));
        let mut renumber = vec![0; orbits.len()];
        for (new, &old) in perm.iter().enumerate() {
            renumber[old] = new;
        }
        let class_of = raw_class.iter().map(|&c| renumber[c]).collect();
        let classes = perm
            .iter()
            .map(|&c| {
                let rep = elements[orbits[c][0]].clone();
                ConjClassData {
                    element_order: rep.order(),
                    representative: rep,
                    size: BigUint::from(orbits[c].len()),
                    centralizer_order: BigUint::from(order / orbits[c].len()),
                }
            })
            .collect();
        Ok(ExhaustiveClasses { elements, index, class_of, classes })
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| self.class_of[i])
    }

    /// Class of `rep^n` for the representative of class `c`.
    pub fn power_class(&self, c: usize, n: i64) -> usize {
        self.class_of(&self.classes[c].representative.pow(n)).expect("powers stay in the group")
    }

    pub fn members(&self, c: usize) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().zip(&self.class_of).filter(move |(_, &k)| k == c).map(|(g, _)| g)
    }
}

/// Conjugacy classes. Groups up to the enumeration limit are handled
/// exhaustively; larger ones by sampling seeded random elements and their
/// powers, certifying each new class by a centralizer computation. The
/// result is marked complete only when the class sizes sum to `|G|`.
pub fn conjugacy_classes(
    chain: &StabilizerChain,
    seed: u64,
    max_samples: u64,
    budget: &mut Budget,
) -> Result<ConjugacyClasses, PermError> {
    if chain.order_u64().is_some_and(|o| o <= ENUMERATION_LIMIT) {
        let ex = ExhaustiveClasses::compute(chain, ENUMERATION_LIMIT)?;
        return Ok(ConjugacyClasses { classes: ex.classes, complete: true, exhaustive: true });
    }
    let order = chain.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: Vec<ConjClassData> = Vec::new();
    let mut covered = BigUint::zero();
    let mut samples = 0;
    while covered < order && samples < max_samples {
        samples += 1;
        let g = chain.random_element(&mut rng);
        let o = g.order();
        let mut divisors: Vec<u64> = (1..=o).filter(|d| o.is_multiple_of(*d)).collect();
        divisors.reverse();
        for d in divisors {
            let h = g.pow((o / d) as i64);
            let ct = h.cycle_type();
            let mut known = false;
            for c in classes.iter().filter(|c| c.element_order == d && c.representative.cycle_type() == ct) {
                if is_conjugate(chain, &c.representative, &h, budget)?.is_some() {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let cent = centralizer(chain, &h, budget)?.order();
            let size = &order / &cent;
            covered += &size;
            classes.push(ConjClassData { representative: h, size, element_order: d, centralizer_order: cent });
        }
    }
    classes.sort_by(|a, b| (a.element_order, &a.size).cmp(&(b.element_order, &b.size)));
    Ok(ConjugacyClasses { complete: covered == order, classes, exhaustive: false })
}

/// Number of `x` in class `c1` with `x^-1 z` in class `c2`, i.e. of pairs
/// `(x, y)` in `c1 x c2` with `x y = z`.
pub fn brute_structure_constant(ex: &ExhaustiveClasses, c1: usize, c2: usize, z: &Permutation) -> u64 {
    ex.members(c1).filter(|x| ex.class_of(&(&x.inverse() * z)) == Some(c2)).count() as u64
}

/// A bijection from table classes to group classes that respects element
/// orders, centralizer orders and every power map stored in the table.
pub fn match_table_classes(t: &CharacterTable, ex: &ExhaustiveClasses) -> Option<Vec<usize>> {
    if t.class_count() != ex.classes.len() {
        return None;
    }
    fn consistent(t: &CharacterTable, ex: &ExhaustiveClasses, map: &[usize], i: usize) -> bool {
        t.power_maps.iter().all(|(&p, pm)| {
            (0..map.len()).all(|a| {
                let b = pm[a];
                if (a != i && b != i) || b >= map.len() {
                    return true;
                }
                ex.power_class(map[a], p as i64) == map[b]
            })
        })
    }
    // number of classes each power map sends onto a class, on both sides
    let mut t_in: Vec<Vec<usize>> = vec![Vec::new(); t.class_count()];
    let mut g_in: Vec<Vec<usize>> = vec![Vec::new(); ex.classes.len()];
    for (&p, pm) in &t.power_maps {
        let mut tc = vec![0; t.class_count()];
        let mut gc = vec![0; ex.classes.len()];
        for (a, &b) in pm.iter().enumerate() {
            if b < tc.len() {
                tc[b] += 1;
            }
            gc[ex.power_class(a, p as i64)] += 1;
        }
        t_in.iter_mut().zip(tc).for_each(|(v, n)| v.push(n));
        g_in.iter_mut().zip(gc).for_each(|(v, n)| v.push(n));
    }
    let go = |map: &mut Vec<usize>, used: &mut [bool]| -> bool {
        fn rec(
            t: &CharacterTable,
            ex: &ExhaustiveClasses,
            t_in: &[Vec<usize>],
            g_in: &[Vec<usize>],
            map: &mut Vec<usize>,
            used: &mut [bool],
        ) -> bool {
            let i = map.len();
            if i == t.class_count() {
                return true;
            }
            let ci = &t.classes[i];
            for (c, data) in ex.classes.iter().enumerate() {
                if used[c]
                    || data.element_order != ci.element_order
                    || data.centralizer_order != ci.centralizer_order
                    || t_in[i] != g_in[c]
                {
                    continue;
                }
                map.push(c);
                used[c] = true;
                if consistent(t, ex, map, i) && rec(t, ex, t_in, g_in, map, used) {
                    return true;
                }
                used[c] = false;
                map.pop();
            }
            false
        }
        rec(t, ex, &t_in, &g_in, map, used)
    };
    let mut map = Vec::new();
    let mut used = vec![false; ex.classes.len()];
    go(&mut map, &mut used).then_some(map)
}

impl ConjugacyClasses {
    pub fn sizes_u64(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::parse_gens;

    #[test]
    fn a5_classes() {
        let (n, g) = parse_gens("DEGREE 5\nGEN (1,2,3,4,5)\nGEN (1,2,3)").unwrap();
        let c = StabilizerChain::new(n, &g).unwrap();
        let cl = conjugacy_classes(&c, 1, 0, &mut Budget::unlimited()).unwrap();
        assert!(cl.complete && cl.exhaustive);
        assert_eq!(cl.sizes_u64(), vec![1, 15, 20, 12, 12]);
        for k in &cl.classes {
            assert_eq!(&k.size * &k.centralizer_order, BigUint::from(60u32));
        }
    }

    #[test]
    fn s3_structure_constant() {
        let (n, g) = parse_gens("DEGREE 3\nGEN (1,2)\nGEN (1,2,3)").unwrap();
        let c = StabilizerChain::new(n, &g).unwrap();
        let ex = ExhaustiveClasses::compute(&c, 100).unwrap();
        let z = Permutation::parse("(1,2,3)", 3).unwrap();
        let t = ex.class_of(&Permutation::parse("(1,2)", 3).unwrap()).unwrap();
        assert_eq!(brute_structure_constant(&ex, t, t, &z), 3);
    }
}
