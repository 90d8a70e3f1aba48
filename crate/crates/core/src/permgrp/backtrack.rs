use std::collections::HashSet;

use super::{Budget, PermError, Permutation, StabilizerChain, ENUMERATION_LIMIT};
use crate::exact::gcd_u64;

/// Cycle decomposition including fixed points.
struct Cycles {
    id: Vec<usize>,
    pos: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl Cycles {
    fn of(p: &Permutation) -> Self {
        let n = p.degree();
        let (mut id, mut pos) = (vec![usize::MAX; n], vec![0; n]);
        let mut cycles = Vec::new();
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut c = Vec::new();
            let mut a = start;
            loop {
                id[a] = cycles.len();
                pos[a] = c.len();
                c.push(a);
                a = p.image(a);
                if a == start {
                    break;
                }
            }
            cycles.push(c);
        }
        Cycles { id, pos, cycles }
    }

    fn len_of(&self, a: usize) -> usize {
        self.cycles[self.id[a]].len()
    }

    /// `a^(p^m)`.
    fn step(&self, a: usize, m: usize) -> usize {
        let c = &self.cycles[self.id[a]];
        c[(self.pos[a] + m) % c.len()]
    }

    /// Points ordered cycle by cycle, longest cycles first, so that a base
    /// drawn from this list has most of its points forced.
    fn base_preference(&self) -> Vec<usize> {
        let mut order: Vec<&Vec<usize>> = self.cycles.iter().collect();
        order.sort_by_key(|c| std::cmp::Reverse(c.len()));
        order.into_iter().flatten().copied().collect()
    }
}

/// Searches `{g in G : x^g = y}` over a chain whose base is adapted to the
/// cycles of `x`: once one point of an `x`-cycle has an image, the images of
/// the rest of that cycle follow from `y`.
struct Searcher<'a> {
    chain: &'a StabilizerChain,
    x: &'a Permutation,
    y: &'a Permutation,
    xc: Cycles,
    yc: Cycles,
    /// level -> (earlier level, m) with base_i = base_j^(x^m)
    forced: Vec<Option<(usize, usize)>>,
}

impl<'a> Searcher<'a> {
    fn new(chain: &'a StabilizerChain, x: &'a Permutation, y: &'a Permutation) -> Self {
        let xc = Cycles::of(x);
        let yc = Cycles::of(y);
        let base = chain.base();
        let forced = (0..base.len())
            .map(|i| {
                (0..i).find(|&j| xc.id[base[j]] == xc.id[base[i]]).map(|j| {
                    let len = xc.len_of(base[i]);
                    (j, (xc.pos[base[i]] + len - xc.pos[base[j]]) % len)
                })
            })
            .collect();
        Searcher { chain, x, y, xc, yc, forced }
    }

    fn is_solution(&self, g: &Permutation) -> bool {
        (0..g.degree()).all(|a| g.image(self.x.image(a)) == self.y.image(g.image(a)))
    }

    /// Depth-first search below `level`. `p` is the product of the
    /// transversal elements chosen so far and `images[j]` the image of base
    /// point `j`. `only` restricts the transversal choice at `level`.
    fn dfs(
        &self,
        level: usize,
        p: &Permutation,
        pinv: &Permutation,
        images: &mut Vec<usize>,
        only: Option<usize>,
        budget: &mut Budget,
    ) -> Result<Option<Permutation>, PermError> {
        budget.tick("backtrack search")?;
        if level == self.chain.level_count() {
            return Ok(self.is_solution(p).then(|| p.clone()));
        }
        let beta = self.chain.base_point(level);
        let candidates: Vec<usize> = match self.forced[level] {
            Some((j, m)) => {
                let gamma = self.yc.step(images[j], m);
                let delta = pinv.image(gamma);
                if self.chain.rep(level, delta).is_none() || only.is_some_and(|d| d != delta) {
                    return Ok(None);
                }
                vec![delta]
            }
            None => {
                let want = self.xc.len_of(beta);
                let pool: Vec<usize> = match only {
                    Some(d) => vec![d],
                    None => self.chain.orbit(level).to_vec(),
                };
                pool.into_iter().filter(|&d| self.yc.len_of(p.image(d)) == want).collect()
            }
        };
        for delta in candidates {
            let u = self.chain.rep(level, delta).expect("orbit point");
            let next = u * p;
            let next_inv = pinv * &u.inverse();
            images.push(p.image(delta));
            let found = self.dfs(level + 1, &next, &next_inv, images, None, budget)?;
            images.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// An element `w` of the group with `x^w = y`, or `None` if there is none.
pub fn is_conjugate(
    chain: &StabilizerChain,
    x: &Permutation,
    y: &Permutation,
    budget: &mut Budget,
) -> Result<Option<Permutation>, PermError> {
    if x.degree() != chain.degree() || y.degree() != chain.degree() {
        return Err(PermError::DegreeMismatch(chain.degree(), x.degree().max(y.degree())));
    }
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    let adapted = chain.rebase(&Cycles::of(x).base_preference());
    let s = Searcher::new(&adapted, x, y);
    let id = chain.identity();
    s.dfs(0, &id, &id, &mut Vec::new(), None, budget)
}

fn orbit_mask(point: usize, gens: &[&Permutation], n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    mask[point] = true;
    let mut queue = vec![point];
    while let Some(a) = queue.pop() {
        for g in gens {
            let b = g.image(a);
            if !mask[b] {
                mask[b] = true;
                queue.push(b);
            }
        }
    }
    mask
}

/// Centralizer of `x`, built level by level from the bottom of an adapted
/// chain: at each level only orbit points not yet reached by the generators
/// found so far are searched.
pub fn centralizer(chain: &StabilizerChain, x: &Permutation, budget: &mut Budget) -> Result<StabilizerChain, PermError> {
    if x.degree() != chain.degree() {
        return Err(PermError::DegreeMismatch(chain.degree(), x.degree()));
    }
    let adapted = chain.rebase(&Cycles::of(x).base_preference());
    let s = Searcher::new(&adapted, x, x);
    let base = adapted.base();
    let id = chain.identity();
    let mut gens: Vec<Permutation> = if chain.contains(x) && !x.is_identity() { vec![x.clone()] } else { Vec::new() };
    for i in (0..adapted.level_count()).rev() {
        let fixes_prefix = |g: &Permutation| base[..i].iter().all(|&b| g.image(b) == b);
        let level_gens = |gens: &[Permutation]| -> Vec<Permutation> { gens.iter().filter(|g| fixes_prefix(g)).cloned().collect() };
        let mut local = level_gens(&gens);
        let mut reached = orbit_mask(base[i], &local.iter().collect::<Vec<_>>(), chain.degree());
        for &d in adapted.orbit(i) {
            if reached[d] {
                continue;
            }
            let mut images = base[..i].to_vec();
            if let Some(g) = s.dfs(i, &id, &id, &mut images, Some(d), budget)? {
                gens.push(g);
                local = level_gens(&gens);
                reached = orbit_mask(base[i], &local.iter().collect::<Vec<_>>(), chain.degree());
            }
        }
    }
    StabilizerChain::new(chain.degree(), &gens)
}

/// Normalizer of `<x>`: the centralizer together with one element realising
/// each attainable automorphism `x -> x^k`.
pub fn normalizer_of_cyclic(
    chain: &StabilizerChain,
    x: &Permutation,
    budget: &mut Budget,
) -> Result<StabilizerChain, PermError> {
    let c = centralizer(chain, x, budget)?;
    let ord = x.order();
    let mut gens = c.generators().to_vec();
    let mut reached: HashSet<u64> = HashSet::from([1]);
    for k in 2..ord {
        if gcd_u64(k, ord) != 1 || reached.contains(&k) {
            continue;
        }
        if let Some(w) = is_conjugate(chain, x, &x.pow(k as i64), budget)? {
            gens.push(w);
            // close the set of attained exponents under multiplication
            let mut frontier: Vec<u64> = reached.iter().copied().collect();
            reached.insert(k);
            frontier.push(k);
            while let Some(a) = frontier.pop() {
                for b in reached.clone() {
                    let ab = a * b % ord;
                    if reached.insert(ab) {
                        frontier.push(ab);
                    }
                }
            }
        }
    }
    StabilizerChain::new(chain.degree(), &gens)
}

/// Normalizer of the subgroup generated by `hgens` (which must be small
/// enough to enumerate). Every normalizing element maps a fixed generator `x`
/// to some `y` in `H`, and the elements doing so form a coset `C(x) w`.
pub fn normalizer(chain: &StabilizerChain, hgens: &[Permutation], budget: &mut Budget) -> Result<StabilizerChain, PermError> {
    let h = chain.subgroup(hgens)?;
    let nontrivial: Vec<&Permutation> = hgens.iter().filter(|g| !g.is_identity()).collect();
    if nontrivial.is_empty() {
        return Ok(chain.clone());
    }
    let helts = h.elements(ENUMERATION_LIMIT)?;
    let hset: HashSet<&Permutation> = helts.iter().collect();

    let mut best: Option<(StabilizerChain, &Permutation)> = None;
    for &g in &nontrivial {
        let c = centralizer(chain, g, budget)?;
        if best.as_ref().is_none_or(|(b, _)| c.order() < b.order()) {
            best = Some((c, g));
        }
    }
    let (cx, x) = best.expect("a non-trivial generator");
    let celts = cx.elements(ENUMERATION_LIMIT)?;
    let xt = x.cycle_type();
    let mut n = h.clone();
    for y in &helts {
        if y.cycle_type() != xt {
            continue;
        }
        let Some(w0) = is_conjugate(chain, x, y, budget)? else { continue };
        for c in &celts {
            let g = c * &w0;
            if n.contains(&g) {
                continue;
            }
            if nontrivial.iter().all(|s| hset.contains(&s.conj(&g))) {
                n = n.join(std::slice::from_ref(&g))?;
            }
        }
    }
    Ok(n)
}
