//! Exact fiber structure of a concrete function.

use std::collections::BTreeMap;

use super::epset::EpSet;
use super::function::{lcm, ConcreteFunction, Rule, SIZE_LIMIT};
use crate::error::{Error, Result};
use crate::kernel_sequence::{KernelProfile, Segment};
use crate::ordinal_cardinal::Cardinal;

/// Fiber size marker for infinite fibers.
pub const INFINITE: u64 = u64::MAX;

/// An injective progression of tail values: residue class `n = first_n + k*j`
/// is sent onto `start + stride*j`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Progression {
    pub first_n: u64,
    pub start: u64,
    pub stride: u64,
}

/// Fiber sizes of every target: exact below `y0`, periodic with `period` from there.
#[derive(Clone, Debug)]
pub struct FiberTable {
    y0: u64,
    head: Vec<u64>,
    pattern: Vec<u64>,
    modulus: u64,
    /// Prefix as (value, argument), sorted.
    prefix_index: Vec<(u64, u64)>,
    progressions: Vec<Progression>,
    /// Constant tail rules as (target, residue).
    constants: Vec<(u64, u64)>,
    prefix_len: u64,
}

impl FiberTable {
    pub(crate) fn build(prefix: &[u64], k: u64, rules: &[Rule]) -> Result<FiberTable> {
        let n = prefix.len() as u64;
        let mut progressions = Vec::new();
        let mut constants = Vec::new();
        for (r, &rule) in rules.iter().enumerate() {
            let r = r as u64;
            let first_n = n + (r + k - n % k) % k;
            match rule {
                Rule::Constant(c) => constants.push((c, r)),
                Rule::Affine { stride, .. } => {
                    progressions.push(Progression { first_n, start: rule.eval(first_n / k), stride })
                }
            }
        }
        let y0 = prefix
            .iter()
            .chain(constants.iter().map(|c| &c.0))
            .map(|v| v + 1)
            .chain(progressions.iter().map(|p| p.start))
            .max()
            .unwrap_or(0);
        let period = progressions.iter().fold(1, |acc, p| lcm(acc, p.stride));
        if y0 > SIZE_LIMIT || period > SIZE_LIMIT {
            return Err(Error::Presentation(format!("fiber structure too large to certify (y0 {y0}, period {period})")));
        }
        let mut head = vec![0u64; y0 as usize];
        for &v in prefix {
            head[v as usize] += 1;
        }
        let mut pattern = vec![0u64; period as usize];
        for p in &progressions {
            let mut y = p.start;
            while y < y0 {
                head[y as usize] += 1;
                y += p.stride;
            }
            // y is now the first member >= y0.
            let mut t = (y - y0) % p.stride;
            while t < period {
                pattern[t as usize] += 1;
                t += p.stride;
            }
        }
        for &(c, _) in &constants {
            head[c as usize] = INFINITE;
        }
        let mut prefix_index: Vec<(u64, u64)> = prefix.iter().enumerate().map(|(i, &v)| (v, i as u64)).collect();
        prefix_index.sort_unstable();
        Ok(FiberTable { y0, head, pattern, modulus: k, prefix_index, progressions, constants, prefix_len: n })
    }

    pub fn threshold(&self) -> u64 {
        self.y0
    }

    pub fn period(&self) -> u64 {
        self.pattern.len() as u64
    }

    /// `|f^{-1}[y]|`, or [`INFINITE`].
    #[inline]
    pub fn size(&self, y: u64) -> u64 {
        match self.head.get(y as usize) {
            Some(&s) => s,
            None => self.pattern[((y - self.y0) % self.period()) as usize],
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.head.iter().chain(&self.pattern).all(|&s| s == 1)
    }

    pub(crate) fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Kernel profile over the alphabet {finite, aleph(0)}.
    pub fn profile(&self) -> KernelProfile {
        let a0 = Cardinal::ALEPH_0;
        let mut counts: BTreeMap<u64, Cardinal> = BTreeMap::new();
        let mut nu = Cardinal::ZERO;
        for &s in &self.head {
            let slot = if s == 0 { &mut nu } else { counts.entry(s).or_insert(Cardinal::ZERO) };
            *slot = &*slot + &Cardinal::ONE;
        }
        for &s in &self.pattern {
            if s == 0 {
                nu = a0.clone();
            } else {
                counts.insert(s, a0.clone());
            }
        }
        let segments = counts
            .into_iter()
            .map(|(s, v)| {
                let size = if s == INFINITE { a0.clone() } else { Cardinal::fin(s) };
                Segment::new(size.clone(), size, v)
            })
            .collect();
        KernelProfile::new(a0, nu, segments).canonical()
    }

    /// Targets whose fiber has the given size (0 for non-range points).
    pub fn level_set(&self, size: u64) -> EpSet {
        EpSet::from_fn(self.y0, self.period(), |y| self.size(y) == size).expect("table within limits")
    }

    /// Distinct fiber sizes that occur, [`INFINITE`] included.
    pub fn sizes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.head.iter().chain(&self.pattern).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn fiber(&self, y: u64) -> Fiber {
        let lo = self.prefix_index.partition_point(|&(v, _)| v < y);
        let hi = self.prefix_index.partition_point(|&(v, _)| v <= y);
        let mut finite: Vec<u64> = self.prefix_index[lo..hi].iter().map(|&(_, i)| i).collect();
        for p in &self.progressions {
            if y >= p.start && (y - p.start) % p.stride == 0 {
                finite.push(p.first_n + self.modulus * ((y - p.start) / p.stride));
            }
        }
        finite.sort_unstable();
        let residues: Vec<u64> = self.constants.iter().filter(|c| c.0 == y).map(|c| c.1).collect();
        Fiber { finite, from: self.prefix_len, modulus: self.modulus, residues }
    }
}

/// One fiber `f^{-1}[y]`: finitely many points plus possibly whole residue classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    finite: Vec<u64>,
    from: u64,
    modulus: u64,
    residues: Vec<u64>,
}

impl Fiber {
    pub fn len(&self) -> Option<u64> {
        self.residues.is_empty().then_some(self.finite.len() as u64)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    fn periodic_below(&self, x: u64) -> u64 {
        if x <= self.from {
            return 0;
        }
        let k = self.modulus;
        self.residues
            .iter()
            .map(|&r| {
                let first = self.from + (r + k - self.from % k) % k;
                if x <= first { 0 } else { (x - first).div_ceil(k) }
            })
            .sum()
    }

    /// Members below `x`.
    pub fn rank(&self, x: u64) -> u64 {
        self.finite.partition_point(|&m| m < x) as u64 + self.periodic_below(x)
    }

    pub fn select(&self, i: u64) -> Option<u64> {
        if self.residues.is_empty() {
            return self.finite.get(i as usize).copied();
        }
        // Smallest x with rank(x + 1) > i.
        let (mut lo, mut hi) = (0u64, 1u64);
        while self.rank(hi) <= i {
            hi *= 2;
        }
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if self.rank(mid) <= i { lo = mid } else { hi = mid }
        }
        Some(lo)
    }
}

impl ConcreteFunction {
    pub fn level_set(&self, size: u64) -> EpSet {
        self.table().level_set(size)
    }

    pub fn fiber(&self, y: u64) -> Fiber {
        self.table().fiber(y)
    }

    /// `f[N]`.
    pub fn range(&self) -> EpSet {
        self.level_set(0).complement()
    }

    /// `y ↦ ` the member of rank `i` in `f^{-1}[y]`, and 0 where the fiber is smaller.
    pub fn fiber_pick(&self, i: u64) -> Result<ConcreteFunction> {
        let t = self.table();
        let k = t.modulus();
        let period = t.period();
        // Beyond y0 each covering progression contributes n = a + b*m on
        // y = y0 + r + period*m. Ranks are stable once all crossings are passed.
        let mut m_star = 0u64;
        for r in 0..period {
            let y = t.threshold() + r;
            let lines: Vec<(i128, i128)> = t
                .progressions()
                .iter()
                .filter(|p| (y - p.start) % p.stride == 0)
                .map(|p| {
                    let a = p.first_n as i128 + (k * ((y - p.start) / p.stride)) as i128;
                    (a, (k * period / p.stride) as i128)
                })
                .collect();
            for (x, &(a1, b1)) in lines.iter().enumerate() {
                for &(a2, b2) in &lines[x + 1..] {
                    if b1 != b2 {
                        let m = ((a1 - a2).abs() + (b1 - b2).abs() - 1) / (b1 - b2).abs();
                        m_star = m_star.max(m as u64 + 1);
                    }
                }
            }
        }
        let threshold = t.threshold() + period * m_star;
        super::function::interpolate(threshold, period, |y| Ok(self.fiber(y).select(i).unwrap_or(0)))
    }
}
