use std::collections::{HashMap, HashSet, VecDeque};

use super::{PermError, Permutation, StabilizerChain};

#[derive(Debug, Clone)]
pub struct Subgroup {
    pub order: usize,
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
}

impl Subgroup {
    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|g| g.order() as usize == self.order)
    }

    pub fn chain(&self) -> StabilizerChain {
        let n = self.elements[0].degree();
        StabilizerChain::new(n, &self.generators).expect("generators share a degree")
    }
}

const ALL_SUBGROUPS_LIMIT: u64 = 1000;

type Bits = Vec<u64>;

fn has(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Every subgroup of a group of order at most 1000: cyclic subgroups are
/// joined pairwise (breadth first) until no new element set appears.
pub fn all_subgroups(chain: &StabilizerChain) -> Result<Vec<Subgroup>, PermError> {
    let elements = chain.elements(ALL_SUBGROUPS_LIMIT)?;
    let n = elements.len();
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mul: Vec<u16> = elements
        .iter()
        .flat_map(|a| elements.iter().map(|b| index[&(a * b)] as u16).collect::<Vec<_>>())
        .collect();
    let identity = index[&chain.identity()];
    let words = n.div_ceil(64);

    let closure = |gens: &[usize]| -> Bits {
        let mut bits = vec![0u64; words];
        set(&mut bits, identity);
        let mut list = vec![identity];
        let mut k = 0;
        while k < list.len() {
            let e = list[k];
            for &g in gens {
                let h = mul[e * n + g] as usize;
                if !has(&bits, h) {
                    set(&mut bits, h);
                    list.push(h);
                }
            }
            k += 1;
        }
        bits
    };

    let mut cyclic: Vec<(Bits, usize)> = Vec::new();
    let mut seen_cyclic: HashSet<Bits> = HashSet::new();
    for g in 0..n {
        let bits = closure(&[g]);
        if seen_cyclic.insert(bits.clone()) {
            cyclic.push((bits, g));
        }
    }

    let mut found: HashMap<Bits, Vec<usize>> = HashMap::new();
    let mut queue: VecDeque<Bits> = VecDeque::new();
    for (bits, g) in &cyclic {
        found.insert(bits.clone(), if *g == identity { vec![] } else { vec![*g] });
        queue.push_back(bits.clone());
    }
    while let Some(s) = queue.pop_front() {
        let gens = found[&s].clone();
        for (_, z) in &cyclic {
            if has(&s, *z) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(*z);
            let t = closure(&g2);
            if !found.contains_key(&t) {
                found.insert(t.clone(), g2);
                queue.push_back(t);
            }
        }
    }

    let mut out: Vec<(Bits, Vec<usize>)> = found.into_iter().collect();
    out.sort_by(|a, b| {
        let ca = a.0.iter().map(|w| w.count_ones()).sum::<u32>();
        let cb = b.0.iter().map(|w| w.count_ones()).sum::<u32>();
        (ca, &a.0).cmp(&(cb, &b.0))
    });
    Ok(out
        .into_iter()
        .map(|(bits, gens)| {
            let elts: Vec<Permutation> = (0..n).filter(|&i| has(&bits, i)).map(|i| elements[i].clone()).collect();
            Subgroup {
                order: elts.len(),
                generators: if gens.is_empty() { vec![chain.identity()] } else { gens.iter().map(|&i| elements[i].clone()).collect() },
                elements: elts,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::parse_gens;
    use std::collections::BTreeMap;

    fn orders(text: &str) -> BTreeMap<usize, usize> {
        let (n, g) = parse_gens(text).unwrap();
        let c = StabilizerChain::new(n, &g).unwrap();
        let mut m = BTreeMap::new();
        for s in all_subgroups(&c).unwrap() {
            *m.entry(s.order).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn s3_lattice() {
        let m = orders("DEGREE 3\nGEN (1,2)\nGEN (1,2,3)");
        assert_eq!(m, BTreeMap::from([(1, 1), (2, 3), (3, 1), (6, 1)]));
    }

    #[test]
    fn trivial_group() {
        let m = orders("DEGREE 2\nGEN ()");
        assert_eq!(m, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn klein_four() {
        let m = orders("DEGREE 4\nGEN (1,2)(3,4)\nGEN (1,3)(2,4)");
        assert_eq!(m, BTreeMap::from([(1, 1), (2, 3), (4, 1)]));
    }
}
