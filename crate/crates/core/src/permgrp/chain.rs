use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Permutation, PermError};

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `rep[p]` maps the base point to `p`
    rep: Vec<Option<Permutation>>,
    rep_inv: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut lv = Level { base, gens: Vec::new(), orbit: Vec::new(), rep: vec![None; n], rep_inv: vec![None; n] };
        lv.recompute();
        lv
    }

    fn recompute(&mut self) {
        let n = self.rep.len();
        self.rep.iter_mut().for_each(|r| *r = None);
        self.rep_inv.iter_mut().for_each(|r| *r = None);
        self.rep[self.base] = Some(Permutation::identity(n));
        self.rep_inv[self.base] = Some(Permutation::identity(n));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for s in &self.gens {
                let q = s.image(p);
                if self.rep[q].is_none() {
                    let u = self.rep[p].as_ref().expect("orbit point has a representative") * s;
                    self.rep_inv[q] = Some(u.inverse());
                    self.rep[q] = Some(u);
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

fn choose_point(h: &Permutation, prefs: &[usize]) -> usize {
    prefs
        .iter()
        .copied()
        .find(|&p| p < h.degree() && h.image(p) != p)
        .or_else(|| h.moved_points().next())
        .expect("non-identity permutation moves a point")
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        Self::with_base_preference(degree, gens, &[])
    }

    /// Deterministic Schreier-Sims. New base points are taken from `prefs`
    /// when possible.
    pub fn with_base_preference(degree: usize, gens: &[Permutation], prefs: &[usize]) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let mut chain = StabilizerChain { degree, generators: gens.to_vec(), levels: Vec::new() };
        let nontrivial: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &nontrivial {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                chain.levels.push(Level::new(choose_point(g, prefs), degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base).collect();
            chain.levels[i].gens =
                nontrivial.iter().filter(|g| fixed.iter().all(|&b| g.image(b) == b)).cloned().collect();
            chain.levels[i].recompute();
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.missing_schreier_generator(lvl) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        chain.levels.push(Level::new(choose_point(&h, prefs), degree));
                    }
                    for l in lvl + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].recompute();
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        Ok(chain)
    }

    /// A Schreier generator of level `i` that does not sift through the
    /// levels below, with the level where sifting stopped.
    fn missing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[i];
        for &b in &lv.orbit {
            let ub = lv.rep[b].as_ref().expect("orbit point");
            for s in &lv.gens {
                let ubs = ub * s;
                let c = s.image(b);
                if Some(&ubs) == lv.rep[c].as_ref() {
                    continue;
                }
                let h = &ubs * lv.rep_inv[c].as_ref().expect("orbit point");
                let (res, j) = self.strip(&h, i + 1);
                if j < self.levels.len() || !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `start`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way).
    fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(lv.base);
            match &lv.rep_inv[b] {
                Some(inv) => h = &h * inv,
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn sift_insert(&mut self, g: &Permutation, prefs: &[usize]) -> bool {
        let (h, j) = self.strip(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        if j == self.levels.len() {
            self.levels.push(Level::new(choose_point(&h, prefs), self.degree));
        }
        for l in 0..=j {
            self.levels[l].gens.push(h.clone());
            self.levels[l].recompute();
        }
        true
    }

    /// Same group with a base chosen from `prefs`, built by sifting uniform
    /// random elements until the known order is reached. The product of
    /// fundamental orbit lengths never exceeds the order of the group the
    /// strong generators generate, so reaching `|G|` certifies the result.
    pub fn rebase(&self, prefs: &[usize]) -> StabilizerChain {
        let target = self.order();
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
        let mut out = StabilizerChain { degree: self.degree, generators: self.generators.clone(), levels: Vec::new() };
        for g in self.strong_generators() {
            if out.order() == target {
                break;
            }
            out.sift_insert(g, prefs);
        }
        while out.order() != target {
            let g = self.random_element(&mut rng);
            out.sift_insert(&g, prefs);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for lv in self.levels.iter().rev() {
            let p = lv.orbit[rng.gen_range(0..lv.orbit.len())];
            g = &g * lv.rep[p].as_ref().expect("orbit point");
        }
        g
    }

    /// All elements, in a fixed order. Fails above `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>, PermError> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= limit => {}
            _ => return Err(PermError::TooLarge { what: "element enumeration", order: order.to_string(), limit }),
        }
        let mut out = vec![self.identity()];
        for lv in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.orbit.len());
            for g in &out {
                for &p in &lv.orbit {
                    next.push(g * lv.rep[p].as_ref().expect("orbit point"));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub(crate) fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn base_point(&self, i: usize) -> usize {
        self.levels[i].base
    }

    pub(crate) fn orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    pub(crate) fn rep(&self, i: usize, p: usize) -> Option<&Permutation> {
        self.levels[i].rep[p].as_ref()
    }

    /// Chain of the subgroup generated by `gens`; they must lie in `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<StabilizerChain, PermError> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(PermError::NotInGroup(g.to_string()));
        }
        StabilizerChain::new(self.degree, gens)
    }

    /// Chain of the group generated by `self` and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<StabilizerChain, PermError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        StabilizerChain::new(self.degree, &gens)
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &StabilizerChain) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Normal closure of `gens` under `self`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> Result<StabilizerChain, PermError> {
        let mut closure = StabilizerChain::new(self.degree, gens)?;
        let mut queue: Vec<Permutation> = gens.to_vec();
        while let Some(h) = queue.pop() {
            for g in &self.generators {
                let c = h.conj(g);
                if !closure.contains(&c) {
                    closure = closure.join(std::slice::from_ref(&c))?;
                    queue.push(c);
                }
            }
        }
        Ok(closure)
    }

    pub fn derived_subgroup(&self) -> Result<StabilizerChain, PermError> {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        if comms.is_empty() {
            return StabilizerChain::new(self.degree, &[]);
        }
        self.normal_closure(&comms)
    }
}
