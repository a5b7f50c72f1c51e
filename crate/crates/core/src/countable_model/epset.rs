//! Eventually periodic subsets of the natural numbers.

use std::fmt;

use super::function::{interpolate, lcm, ConcreteFunction, Rule, SIZE_LIMIT};
use crate::error::{Error, Result};

/// A set given by membership below `threshold` and a periodic pattern from there on.
#[derive(Clone, PartialEq, Eq)]
pub struct EpSet {
    head: Vec<bool>,
    pattern: Vec<bool>,
    // Derived lookup tables.
    head_rank: Vec<u64>,
    head_members: Vec<u64>,
    pattern_rank: Vec<u64>,
    pattern_members: Vec<u64>,
}

impl EpSet {
    /// Samples `pred` on `[0, threshold + period)` and normalizes.
    pub fn from_fn(threshold: u64, period: u64, mut pred: impl FnMut(u64) -> bool) -> Result<EpSet> {
        let period = period.max(1);
        if threshold > SIZE_LIMIT || period > SIZE_LIMIT {
            return Err(Error::Invariant(format!("set presentation too large: threshold {threshold}, period {period}")));
        }
        let head = (0..threshold).map(&mut pred).collect();
        let pattern = (threshold..threshold + period).map(&mut pred).collect();
        Ok(EpSet::normalized(head, pattern))
    }

    pub fn empty() -> EpSet {
        EpSet::normalized(vec![], vec![false])
    }

    pub fn all() -> EpSet {
        EpSet::normalized(vec![], vec![true])
    }

    pub fn finite(elements: &[u64]) -> EpSet {
        let t = elements.iter().max().map_or(0, |m| m + 1);
        let mut head = vec![false; t as usize];
        for &e in elements {
            head[e as usize] = true;
        }
        EpSet::normalized(head, vec![false])
    }

    /// `{n >= from : n % modulus == residue}`.
    pub fn residue_class(residue: u64, modulus: u64, from: u64) -> EpSet {
        let t = from;
        let head = vec![false; t as usize];
        let pattern = (t..t + modulus).map(|n| n % modulus == residue).collect();
        EpSet::normalized(head, pattern)
    }

    fn normalized(mut head: Vec<bool>, mut pattern: Vec<bool>) -> EpSet {
        let p = pattern.len();
        if let Some(d) = (1..p).find(|&d| p % d == 0 && (0..p).all(|i| pattern[i] == pattern[i % d])) {
            pattern.truncate(d);
        }
        while let Some(&last) = head.last() {
            if last != *pattern.last().expect("nonempty pattern") {
                break;
            }
            head.pop();
            pattern.rotate_right(1);
        }
        let mut head_rank = Vec::with_capacity(head.len() + 1);
        let mut acc = 0;
        for &b in &head {
            head_rank.push(acc);
            acc += b as u64;
        }
        head_rank.push(acc);
        let head_members = (0..head.len() as u64).filter(|&i| head[i as usize]).collect();
        let mut pattern_rank = Vec::with_capacity(pattern.len() + 1);
        let mut acc = 0;
        for &b in &pattern {
            pattern_rank.push(acc);
            acc += b as u64;
        }
        pattern_rank.push(acc);
        let pattern_members = (0..pattern.len() as u64).filter(|&i| pattern[i as usize]).collect();
        EpSet { head, pattern, head_rank, head_members, pattern_rank, pattern_members }
    }

    pub fn threshold(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.pattern.len() as u64
    }

    /// Members per period in the periodic part.
    pub fn density(&self) -> u64 {
        self.pattern_members.len() as u64
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        match self.head.get(x as usize) {
            Some(&b) => b,
            None => self.pattern[((x - self.threshold()) % self.period()) as usize],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.pattern_members.is_empty()
    }

    /// Number of members, `None` when infinite.
    pub fn len(&self) -> Option<u64> {
        self.is_finite().then_some(self.head_members.len() as u64)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// `#{a in self : a < x}`.
    pub fn rank(&self, x: u64) -> u64 {
        let t = self.threshold();
        if x <= t {
            return self.head_rank[x as usize];
        }
        let d = x - t;
        let p = self.period();
        self.head_members.len() as u64 + (d / p) * self.density() + self.pattern_rank[(d % p) as usize]
    }

    /// The member of rank `i`.
    pub fn select(&self, i: u64) -> Option<u64> {
        let h = self.head_members.len() as u64;
        if i < h {
            return Some(self.head_members[i as usize]);
        }
        let c = self.density();
        if c == 0 {
            return None;
        }
        let j = i - h;
        Some(self.threshold() + (j / c) * self.period() + self.pattern_members[(j % c) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..).map_while(move |i| self.select(i))
    }

    fn combine(&self, other: &EpSet, op: impl Fn(bool, bool) -> bool) -> EpSet {
        let t = self.threshold().max(other.threshold());
        let p = lcm(self.period(), other.period());
        EpSet::from_fn(t, p, |x| op(self.contains(x), other.contains(x))).expect("combined set within limits")
    }

    pub fn union(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &EpSet) -> EpSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> EpSet {
        EpSet::normalized(self.head.iter().map(|b| !b).collect(), self.pattern.iter().map(|b| !b).collect())
    }

    pub fn is_disjoint(&self, other: &EpSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Members of even rank.
    pub fn even_indexed(&self) -> EpSet {
        EpSet::from_fn(self.threshold(), 2 * self.period(), |x| self.contains(x) && self.rank(x) % 2 == 0)
            .expect("doubled period within limits")
    }

    /// The first `n` members (all of them if fewer).
    pub fn take(&self, n: u64) -> EpSet {
        let members: Vec<u64> = self.iter().take(n as usize).collect();
        EpSet::finite(&members)
    }

    /// `{n : f(n) in self}`.
    pub fn preimage(&self, f: &ConcreteFunction) -> Result<EpSet> {
        let k = f.modulus();
        let mut t = f.threshold();
        for (_, _, rule) in f.tail_classes() {
            if let Rule::Affine { base, stride } = rule {
                let need = self.threshold() as i128 - base as i128;
                let q0 = if need <= 0 { 0 } else { (need + stride as i128 - 1) / stride as i128 };
                t = t.max(k.saturating_mul(q0 as u64));
            }
        }
        EpSet::from_fn(t, k.saturating_mul(self.period()), |n| self.contains(f.apply(n)))
    }

    /// `f[self]`.
    pub fn image(&self, f: &ConcreteFunction) -> Result<EpSet> {
        let t0 = f.threshold().max(self.threshold());
        let m = lcm(f.modulus(), self.period());
        let mut values: Vec<u64> = (0..t0).filter(|&n| self.contains(n)).map(|n| f.apply(n)).collect();
        let mut progs = Vec::new();
        for r in 0..m {
            let n1 = t0 + (r + m - t0 % m) % m;
            if !self.contains(n1) {
                continue;
            }
            let v1 = f.apply(n1);
            let d = f.apply(n1 + m) - v1;
            if d == 0 {
                values.push(v1);
            } else {
                progs.push((v1, d));
            }
        }
        values.sort_unstable();
        values.dedup();
        let t = values.last().map_or(0, |v| v + 1).max(progs.iter().map(|p| p.0).max().unwrap_or(0));
        let p = progs.iter().fold(1, |acc, pr| lcm(acc, pr.1));
        EpSet::from_fn(t, p, |y| {
            values.binary_search(&y).is_ok() || progs.iter().any(|&(s, d)| y >= s && (y - s) % d == 0)
        })
    }

    /// `x ↦ rank(x)` as a concrete function.
    pub fn rank_map(&self) -> Result<ConcreteFunction> {
        interpolate(self.threshold(), self.period(), |x| Ok(self.rank(x)))
    }

    /// `i ↦ select(i)`, and 0 past the end of a finite set.
    pub fn select_map(&self) -> Result<ConcreteFunction> {
        match self.len() {
            Some(n) => interpolate(n, 1, |i| Ok(self.select(i).unwrap_or(0))),
            None => {
                let h = self.head_members.len() as u64;
                interpolate(h, self.density(), |i| Ok(self.select(i).expect("infinite set")))
            }
        }
    }
}

/// Same cardinality, both finite or both infinite.
pub fn equinumerous(a: &EpSet, b: &EpSet) -> bool {
    a.len() == b.len()
}

/// A map that agrees with each part's function on the part's domain.
/// Domains must be pairwise disjoint and cover the natural numbers.
pub fn piecewise(parts: &[(EpSet, ConcreteFunction)]) -> Result<ConcreteFunction> {
    let mut t = 0;
    let mut k = 1;
    for (a, f) in parts {
        t = t.max(a.threshold()).max(f.threshold());
        k = lcm(k, lcm(a.period(), f.modulus()));
        if k > SIZE_LIMIT {
            return Err(Error::Invariant(format!("piecewise period {k} too large")));
        }
    }
    interpolate(t, k, |x| {
        parts
            .iter()
            .find(|(a, _)| a.contains(x))
            .map(|(_, f)| f.apply(x))
            .ok_or_else(|| Error::Invariant(format!("piecewise domains do not cover {x}")))
    })
}

/// Extends partial injections (domain set, map on it) to a permutation: the
/// complement of all domains goes onto the complement of all images in
/// increasing order. Fails unless the result is certified bijective.
pub fn extend_to_permutation(parts: Vec<(EpSet, ConcreteFunction)>) -> Result<ConcreteFunction> {
    let mut dom = EpSet::empty();
    let mut cod = EpSet::empty();
    let mut all = Vec::with_capacity(parts.len() + 1);
    for (a, map) in parts {
        if a.is_empty() {
            continue;
        }
        let b = a.image(&map)?;
        if !equinumerous(&a, &b) || !dom.is_disjoint(&a) || !cod.is_disjoint(&b) {
            return Err(Error::Invariant("partial maps are not jointly injective".into()));
        }
        dom = dom.union(&a);
        cod = cod.union(&b);
        all.push((a, map));
    }
    let (rest_dom, rest_cod) = (dom.complement(), cod.complement());
    if !equinumerous(&rest_dom, &rest_cod) {
        return Err(Error::Invariant("complements differ in size; cannot extend to a permutation".into()));
    }
    if !rest_dom.is_empty() {
        let map = super::function::compose(&rest_cod.select_map()?, &rest_dom.rank_map()?)?;
        all.push((rest_dom, map));
    }
    let alpha = piecewise(&all)?;
    if !alpha.is_permutation() {
        return Err(Error::Invariant("extension is not a permutation".into()));
    }
    Ok(alpha)
}

/// The permutation mapping each domain set onto its target set in increasing
/// order, and the rest onto the rest.
pub fn matching(pairs: &[(EpSet, EpSet)]) -> Result<ConcreteFunction> {
    let mut parts = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        if !equinumerous(a, b) {
            return Err(Error::Invariant(format!("matched sets differ in size: {:?} vs {:?}", a.len(), b.len())));
        }
        parts.push((a.clone(), super::function::compose(&b.select_map()?, &a.rank_map()?)?));
    }
    extend_to_permutation(parts)
}

impl fmt::Debug for EpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "EpSet({} | ({})*)", bits(&self.head), bits(&self.pattern))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(s: &EpSet, n: u64) -> Vec<u64> {
        (0..n).filter(|&x| s.contains(x)).collect()
    }

    #[test]
    fn normalization_is_canonical() {
        let a = EpSet::from_fn(7, 6, |x| x % 2 == 0).unwrap();
        let b = EpSet::from_fn(0, 2, |x| x % 2 == 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.threshold(), 0);
        assert_eq!(a.period(), 2);
    }

    #[test]
    fn rank_select_agree_with_enumeration() {
        let s = EpSet::from_fn(10, 6, |x| x == 3 || x == 7 || (x >= 10 && x % 6 != 1 && x % 3 == 1)).unwrap();
        let members = brute(&s, 500);
        for (i, &m) in members.iter().enumerate() {
            assert_eq!(s.select(i as u64), Some(m));
            assert_eq!(s.rank(m), i as u64);
        }
        for x in 0..500 {
            assert_eq!(s.rank(x), members.iter().filter(|&&m| m < x).count() as u64);
        }
    }

    #[test]
    fn boolean_ops() {
        let a = EpSet::residue_class(0, 2, 0);
        let b = EpSet::residue_class(0, 3, 4);
        let u = a.union(&b);
        let i = a.intersection(&b);
        for x in 0..200 {
            assert_eq!(u.contains(x), x % 2 == 0 || (x >= 4 && x % 3 == 0));
            assert_eq!(i.contains(x), x % 2 == 0 && x >= 4 && x % 3 == 0);
            assert_eq!(a.complement().contains(x), x % 2 == 1);
        }
        assert_eq!(EpSet::finite(&[1, 4]).len(), Some(2));
        assert_eq!(a.len(), None);
    }

    #[test]
    fn even_indexed_members() {
        let s = EpSet::from_fn(3, 5, |x| x == 1 || (x >= 3 && x % 5 < 3)).unwrap();
        let e = s.even_indexed();
        let m = brute(&s, 300);
        let want: Vec<u64> = m.iter().step_by(2).copied().collect();
        assert_eq!(brute(&e, 300), want);
    }

    #[test]
    fn preimage_and_image() {
        let f = ConcreteFunction::new(vec![9, 1], 3, vec![Rule::Constant(4), Rule::Affine { base: 0, stride: 2 }, Rule::Affine { base: 1, stride: 5 }]).unwrap();
        let a = EpSet::from_fn(5, 4, |x| x == 2 || x % 4 == 1).unwrap();
        let pre = a.preimage(&f).unwrap();
        let img = a.image(&f).unwrap();
        for n in 0..2000 {
            assert_eq!(pre.contains(n), a.contains(f.apply(n)), "preimage at {n}");
        }
        let mut want = std::collections::BTreeSet::new();
        for n in 0..20000 {
            if a.contains(n) {
                want.insert(f.apply(n));
            }
        }
        for y in 0..1000 {
            assert_eq!(img.contains(y), want.contains(&y), "image at {y}");
        }
    }

    #[test]
    fn rank_and_select_maps() {
        let s = EpSet::from_fn(4, 3, |x| x == 0 || (x >= 4 && x % 3 != 0)).unwrap();
        let r = s.rank_map().unwrap();
        let q = s.select_map().unwrap();
        for x in 0..300 {
            assert_eq!(r.apply(x), s.rank(x));
            assert_eq!(q.apply(x), s.select(x).unwrap());
        }
    }

    #[test]
    fn matching_builds_permutations() {
        let evens = EpSet::residue_class(0, 2, 0);
        let thirds = EpSet::residue_class(1, 3, 0);
        let alpha = matching(&[(evens.clone(), thirds.clone())]).unwrap();
        assert!(alpha.is_permutation());
        for x in 0..300 {
            assert_eq!(evens.contains(x), thirds.contains(alpha.apply(x)));
        }
        let fin = matching(&[(EpSet::finite(&[0, 5]), EpSet::finite(&[7, 8]))]).unwrap();
        assert_eq!((fin.apply(0), fin.apply(5)), (7, 8));
        assert!(matching(&[(EpSet::finite(&[0]), evens)]).is_err());
    }
}
