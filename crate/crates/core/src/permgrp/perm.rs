use std::fmt;
use std::ops::Mul;

use super::PermError;
use crate::exact::lcm_u64;

/// A permutation of `{0, .., n-1}`, acting on the right: `i^(p*q) = (i^p)^q`.
///
/// Text forms (`Display`, [`parse_gens`]) use 1-based cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(PermError::PointOutOfRange { line: 0, point: i + 1, degree: n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PermError::RepeatedPoint { line: 0, point: i + 1 });
            }
        }
        Ok(Permutation { images })
    }

    /// Builds from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(PermError::PointOutOfRange { line: 0, point: a + 1, degree: n });
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(PermError::RepeatedPoint { line: 0, point: a + 1 });
                }
                images[a] = c[(k + 1) % c.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `()`.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text).map_err(|msg| PermError::Parse { line: 0, msg })?;
        let cycles: Vec<Vec<usize>> = cycles
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|p| if p == 0 { Err(PermError::PointOutOfRange { line: 0, point: 0, degree }) } else { Ok(p - 1) })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conj(&self, g: &Permutation) -> Self {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.image(i)] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn commutator(&self, other: &Permutation) -> Self {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    /// Cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for i in 0..self.degree() {
            if seen[i] || self.image(i) == i {
                continue;
            }
            let mut c = vec![i];
            seen[i] = true;
            let mut j = self.image(i);
            while j != i {
                seen[j] = true;
                c.push(j);
                j = self.image(j);
            }
            out.push(c);
        }
        out
    }

    /// Multiset of cycle lengths including fixed points, sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm_u64(acc, c.len() as u64))
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().enumerate().filter(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation { images: self.images.iter().map(|&i| rhs.images[i as usize]).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw 1-based cycles; repeated points are left for the caller to reject.
fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    let mut out = Vec::new();
    if rest.is_empty() {
        return Err("empty permutation".into());
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let end = body.find(')').ok_or("unclosed cycle")?;
        let inner = &body[..end];
        rest = &body[end + 1..];
        if inner.is_empty() {
            continue;
        }
        let pts = inner
            .split(',')
            .map(|p| p.parse::<usize>().map_err(|_| format!("bad point {p:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(pts);
    }
    Ok(out)
}

/// Parses a generator file: an optional `DEGREE n` line, then `GEN` lines.
/// Without `DEGREE` the largest point mentioned is used.
pub fn parse_gens(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut degree: Option<usize> = None;
    let mut raw: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for (idx, line_text) in text.lines().enumerate() {
        let line = idx + 1;
        let content = line_text.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(d) = content.strip_prefix("DEGREE") {
            if !raw.is_empty() || degree.is_some() {
                return Err(PermError::Parse { line, msg: "DEGREE must come first, once".into() });
            }
            degree = Some(d.trim().parse().map_err(|_| PermError::Parse { line, msg: format!("bad degree {d:?}") })?);
        } else if let Some(g) = content.strip_prefix("GEN") {
            let cycles = parse_cycles(g).map_err(|msg| PermError::Parse { line, msg })?;
            let mut seen = std::collections::HashSet::new();
            for &p in cycles.iter().flatten() {
                if !seen.insert(p) {
                    return Err(PermError::RepeatedPoint { line, point: p });
                }
                if p == 0 || degree.is_some_and(|n| p > n) {
                    return Err(PermError::PointOutOfRange { line, point: p, degree: degree.unwrap_or(0) });
                }
            }
            raw.push((line, cycles));
        } else {
            return Err(PermError::Parse { line, msg: format!("unexpected line {content:?}") });
        }
    }
    let n = degree.unwrap_or_else(|| raw.iter().flat_map(|(_, c)| c.iter().flatten()).copied().max().unwrap_or(0));
    let gens = raw
        .into_iter()
        .map(|(line, cycles)| {
            let zero: Vec<Vec<usize>> = cycles.into_iter().map(|c| c.into_iter().map(|p| p - 1).collect()).collect();
            Permutation::from_cycles(n, &zero).map_err(|e| e.at_line(line))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_act_on_the_right() {
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(2,3)", 3).unwrap();
        // 1 -> 2 -> 3
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!((&a * &b).to_string(), "(1,3,2)");
        let c = Permutation::parse("(1,2,3)", 3).unwrap();
        assert_eq!(c.conj(&a), a.inverse().mul(&c).mul(&a));
        assert_eq!(c.pow(3), Permutation::identity(3));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn parse_gens_file() {
        let (n, g) = parse_gens("DEGREE 5\nGEN (1,2,3,4,5)\nGEN (1,2,3)\n").unwrap();
        assert_eq!(n, 5);
        assert_eq!(g[0].order(), 5);
        let (n, g) = parse_gens("DEGREE 3\nGEN (1,2)").unwrap();
        assert_eq!((n, g[0].to_string()), (3, "(1,2)".to_string()));
        assert_eq!(parse_gens("GEN (1,1,2)"), Err(PermError::RepeatedPoint { line: 1, point: 1 }));
        assert!(matches!(parse_gens("DEGREE 3\nGEN (1,4)"), Err(PermError::PointOutOfRange { line: 2, point: 4, .. })));
        assert!(matches!(parse_gens("DEGREE 3\nGEN (1,2"), Err(PermError::Parse { line: 2, .. })));
        let (_, g) = parse_gens("DEGREE 4\nGEN ()").unwrap();
        assert!(g[0].is_identity());
    }

    #[test]
    fn cycle_type_counts_fixed_points() {
        let p = Permutation::parse("(1,2)(3,4,5)", 7).unwrap();
        assert_eq!(p.cycle_type(), vec![1, 1, 2, 3]);
        assert_eq!(p.order(), 6);
    }
}
