//! Finitely presented kernel sequences.
//!
//! A profile lists the base-set size, the size of the complement of the
//! range, and constant-valued segments of cardinals. `s(xi)` is the segment
//! value when `xi` is covered and zero otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal_cardinal::{Cardinal, Interval, Ordinal};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub lo: Cardinal,
    pub hi: Cardinal,
    pub value: Cardinal,
}

impl Segment {
    pub fn new(lo: Cardinal, hi: Cardinal, value: Cardinal) -> Self {
        Segment { lo, hi, value }
    }

    pub fn interval(&self) -> Interval {
        Interval::closed(self.lo.clone(), self.hi.clone())
    }

    pub fn contains(&self, x: &Cardinal) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelProfile {
    pub kappa: Cardinal,
    pub nu: Cardinal,
    pub segments: Vec<Segment>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    KappaInfinite,
    NuAtMostKappa,
    SegmentOrdered,
    PositiveValue,
    ClassSizePositive,
    HiAtMostKappa,
    ValueAtMostKappa,
    SortedDisjoint,
    Mass,
    Range,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    /// Offending segment index; `None` for laws about the whole profile.
    pub segment: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.segment {
            Some(i) => write!(f, "{:?} (segment {i}): {}", self.law, self.detail),
            None => write!(f, "{:?}: {}", self.law, self.detail),
        }
    }
}

/// The tuple of characteristic values of a profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicValues {
    pub mu: Cardinal,
    pub sigma: Cardinal,
    pub rho: Cardinal,
    pub nu: Cardinal,
    pub epsilon: Cardinal,
    pub epsilon_prime: Cardinal,
    pub lambda_prime: Cardinal,
    pub chi: Cardinal,
    pub epsilon_attained: bool,
}

/// A weakly decreasing step function on `[1, kappa]`.
///
/// Each step holds from its threshold up to the next threshold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StepFunction {
    pub steps: Vec<(Cardinal, Cardinal)>,
}

impl StepFunction {
    pub fn value_at(&self, x: &Cardinal) -> Cardinal {
        let i = self.steps.partition_point(|(t, _)| t <= x);
        assert!(i > 0, "step function queried below its first threshold");
        self.steps[i - 1].1.clone()
    }

    /// Thresholds where the value changes (every threshold after the first).
    pub fn drop_points(&self) -> impl Iterator<Item = &Cardinal> {
        self.steps.iter().skip(1).map(|(t, _)| t)
    }

    /// Steps whose threshold lies strictly below `x`.
    pub fn truncated_below(&self, x: &Cardinal) -> StepFunction {
        StepFunction { steps: self.steps.iter().filter(|(t, _)| t < x).cloned().collect() }
    }
}

impl KernelProfile {
    pub fn new(kappa: Cardinal, nu: Cardinal, segments: Vec<Segment>) -> Self {
        KernelProfile { kappa, nu, segments }
    }

    /// Shorthand for `(lo, hi, value)` triples.
    pub fn from_triples(kappa: Cardinal, nu: Cardinal, triples: &[(Cardinal, Cardinal, Cardinal)]) -> Self {
        let segments = triples.iter().map(|(l, h, v)| Segment::new(l.clone(), h.clone(), v.clone())).collect();
        KernelProfile { kappa, nu, segments }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |law, segment, detail: String| out.push(Violation { law, segment, detail });
        if self.kappa.is_finite() {
            bad(Law::KappaInfinite, None, format!("kappa = {} is finite", self.kappa));
        }
        if self.nu > self.kappa {
            bad(Law::NuAtMostKappa, None, format!("nu = {} exceeds kappa", self.nu));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if s.lo > s.hi {
                bad(Law::SegmentOrdered, Some(i), format!("lo {} > hi {}", s.lo, s.hi));
            }
            if s.value.is_zero() {
                bad(Law::PositiveValue, Some(i), "value is 0".into());
            }
            if s.lo.is_zero() {
                bad(Law::ClassSizePositive, Some(i), "class size 0 is not a kernel class".into());
            }
            if s.hi > self.kappa {
                bad(Law::HiAtMostKappa, Some(i), format!("hi {} exceeds kappa", s.hi));
            }
            if s.value > self.kappa {
                bad(Law::ValueAtMostKappa, Some(i), format!("value {} exceeds kappa", s.value));
            }
            if i > 0 && self.segments[i - 1].hi >= s.lo {
                bad(Law::SortedDisjoint, Some(i), format!("starts at {} before previous end {}", s.lo, self.segments[i - 1].hi));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mass = self.mass();
        if mass != self.kappa {
            out.push(Violation { law: Law::Mass, segment: None, detail: format!("sum of class sizes is {mass}, not {}", self.kappa) });
        }
        let range = &self.range_size() + &self.nu;
        if range != self.kappa {
            out.push(Violation { law: Law::Range, segment: None, detail: format!("range plus nu is {range}, not {}", self.kappa) });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `sum over classes of their sizes`, i.e. the size of the domain.
    pub fn mass(&self) -> Cardinal {
        self.segments.iter().map(|s| &s.interval().sum() * &s.value).sum()
    }

    /// Number of kernel classes, i.e. the size of the range.
    pub fn range_size(&self) -> Cardinal {
        self.segments.iter().map(|s| &s.interval().count() * &s.value).sum()
    }

    /// Sorted, with adjacent equal-valued segments merged.
    pub fn canonical(&self) -> KernelProfile {
        let mut segs = self.segments.clone();
        segs.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            match out.last_mut() {
                Some(prev) if prev.value == s.value && prev.hi.succ() == s.lo => prev.hi = s.hi,
                _ => out.push(s),
            }
        }
        KernelProfile { kappa: self.kappa.clone(), nu: self.nu.clone(), segments: out }
    }

    pub fn eval(&self, x: &Cardinal) -> Result<Cardinal> {
        if x.is_zero() || *x > self.kappa {
            return Err(Error::Precondition(format!("{x} is outside [1, {}]", self.kappa)));
        }
        Ok(self.value_at(x))
    }

    /// `s(x)` without the range check.
    pub fn value_at(&self, x: &Cardinal) -> Cardinal {
        let i = self.segments.partition_point(|s| s.lo <= *x);
        match i.checked_sub(1).map(|i| &self.segments[i]) {
            Some(s) if s.hi >= *x => s.value.clone(),
            _ => Cardinal::ZERO,
        }
    }

    /// Cardinal sum of `s` over a range.
    pub fn sum_range(&self, range: &Interval) -> Cardinal {
        let mut total = Cardinal::ZERO;
        for s in &self.segments {
            if let Some(part) = s.interval().intersect(range) {
                total = &total + &(&part.count() * &s.value);
            }
        }
        total
    }

    /// `s(>= x)`.
    pub fn sum_ge(&self, x: &Cardinal) -> Cardinal {
        self.sum_range(&Interval::new(x.clone(), self.kappa.clone(), false, false))
    }

    /// `s(> x)`.
    pub fn sum_gt(&self, x: &Cardinal) -> Cardinal {
        self.sum_range(&Interval::new(x.clone(), self.kappa.clone(), true, false))
    }

    /// `s(> a, <= b)`.
    pub fn sum_gt_le(&self, a: &Cardinal, b: &Cardinal) -> Cardinal {
        self.sum_range(&Interval::new(a.clone(), b.clone(), true, false))
    }

    /// Least class size from which a segment is in the strong support.
    fn strong_threshold(&self, s: &Segment) -> Cardinal {
        if s.value > self.nu {
            return s.lo.clone();
        }
        let t = match (&self.nu, &s.value) {
            (Cardinal::Finite(nu), Cardinal::Finite(v)) => Cardinal::Finite(nu / v + 1),
            _ => self.nu.succ(),
        };
        t.max(s.lo.clone())
    }

    /// Pieces where `s(xi) * xi > nu`.
    pub fn strong_support(&self) -> Vec<Segment> {
        self.segments
            .iter()
            .filter_map(|s| {
                let t = self.strong_threshold(s);
                (t <= s.hi).then(|| Segment::new(t, s.hi.clone(), s.value.clone()))
            })
            .collect()
    }

    /// Pieces of the support outside the strong support.
    pub fn weak_support(&self) -> Vec<Segment> {
        self.segments
            .iter()
            .filter_map(|s| {
                let t = self.strong_threshold(s);
                if t == s.lo {
                    return None;
                }
                let end = if t > s.hi { s.hi.clone() } else { t.pred().expect("threshold above lo has a predecessor") };
                Some(Segment::new(s.lo.clone(), end, s.value.clone()))
            })
            .collect()
    }

    /// Candidate thresholds that bracket every change of `xi -> s(>= xi)`.
    fn step_candidates(&self) -> Vec<Cardinal> {
        let mut c = vec![Cardinal::ONE];
        for s in &self.segments {
            c.push(s.lo.clone());
            let next = s.hi.succ();
            if next <= self.kappa {
                c.push(next);
            }
            // Between lo and hi the count of [xi, hi] only changes where it is finite.
            match &s.hi {
                Cardinal::Finite(h) => {
                    let l = s.lo.as_finite().expect("finite hi implies finite lo");
                    c.extend((l + 1..=*h).map(Cardinal::Finite));
                }
                Cardinal::Aleph(b) => {
                    let base = b.limit_part();
                    for i in 0..=b.finite_part() {
                        let x = Cardinal::Aleph(base.add(&Ordinal::finite(i)));
                        if x > s.lo {
                            c.push(x);
                        }
                    }
                }
            }
        }
        c.sort();
        c.dedup();
        c
    }

    /// The step function `xi -> s(>= xi)` on `[1, kappa]`.
    pub fn accumulated(&self) -> StepFunction {
        let mut steps: Vec<(Cardinal, Cardinal)> = Vec::new();
        for t in self.step_candidates() {
            let v = self.sum_ge(&t);
            if steps.last().map_or(true, |(_, prev)| *prev != v) {
                steps.push((t, v));
            }
        }
        StepFunction { steps }
    }

    pub fn characteristic_values(&self) -> Result<CharacteristicValues> {
        let (Some(first), Some(last)) = (self.segments.first(), self.segments.last()) else {
            return Err(Error::Profile("not a function profile: empty support".into()));
        };
        let mu = first.lo.clone();
        let epsilon = last.hi.clone();
        let strong = self.strong_support();
        let epsilon_prime = strong.last().map_or_else(|| mu.clone(), |s| s.hi.clone());
        let lambda_prime = strong
            .iter()
            .rev()
            .find(|s| s.lo <= self.nu)
            .map_or_else(|| mu.clone(), |s| s.hi.clone().min(self.nu.clone()));
        let epsilon_attained = !self.value_at(&epsilon).is_zero();
        let acc = self.accumulated();
        let chi = acc
            .steps
            .iter()
            .find(|(_, v)| if epsilon_attained { *v <= epsilon } else { *v < epsilon })
            .map(|(t, _)| t.clone())
            .expect("s(>= xi) reaches 0 or kappa stays dominated");
        Ok(CharacteristicValues {
            sigma: first.value.clone(),
            rho: self.sum_gt(&mu),
            nu: self.nu.clone(),
            mu,
            epsilon,
            epsilon_prime,
            lambda_prime,
            chi,
            epsilon_attained,
        })
    }

    /// Whether the strong support contains infinitely many cardinals.
    pub fn strong_support_is_infinite(&self) -> bool {
        self.strong_support().iter().any(|s| s.interval().count().is_infinite())
    }

    pub fn from_json(text: &str, origin: &str) -> Result<KernelProfile> {
        serde_json::from_str(text).map_err(|e| Error::File {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON of the canonical form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical()).expect("profiles serialize")
    }
}

impl fmt::Display for KernelProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kappa={} nu={} [", self.kappa, self.nu)?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {}, {})", s.lo, s.hi, s.value)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A0: Cardinal = Cardinal::ALEPH_0;

    fn f(n: u64) -> Cardinal {
        Cardinal::fin(n)
    }

    fn prof(nu: Cardinal, t: &[(Cardinal, Cardinal, Cardinal)]) -> KernelProfile {
        KernelProfile::from_triples(A0, nu, t)
    }

    #[test]
    fn validation_examples() {
        assert!(prof(f(0), &[(f(1), f(1), A0)]).is_valid());
        assert!(prof(f(2), &[(A0, A0, A0)]).is_valid());
        let v = prof(f(0), &[(f(2), f(2), f(3))]).validate();
        assert!(v.iter().any(|x| x.law == Law::Mass));
        let v = prof(f(0), &[(f(1), f(3), A0), (f(3), A0, f(1))]).validate();
        assert_eq!(v[0].law, Law::SortedDisjoint);
        assert_eq!(v[0].segment, Some(1));
    }

    #[test]
    fn eval_and_sums() {
        let p = prof(A0, &[(f(1), f(1), A0), (f(2), f(5), f(1))]);
        assert_eq!(p.eval(&f(3)).unwrap(), f(1));
        assert_eq!(p.eval(&A0).unwrap(), f(0));
        assert!(p.eval(&f(0)).is_err());
        assert!(p.eval(&Cardinal::aleph_n(1)).is_err());
        assert_eq!(p.sum_gt(&f(1)), f(4));
        let q = prof(A0, &[(A0, A0, A0)]);
        assert_eq!(q.sum_ge(&f(1)), A0);
        assert_eq!(q.sum_gt_le(&A0, &A0), f(0));
        let c = KernelProfile::from_triples(A0, A0, &[(A0, A0, f(1))]);
        assert_eq!(c.eval(&A0).unwrap(), f(1));
    }

    #[test]
    fn strong_support_examples() {
        let p = prof(f(2), &[(A0, A0, A0)]);
        assert_eq!(p.strong_support(), vec![Segment::new(A0, A0, A0)]);
        let h = prof(A0, &[(f(1), f(1), A0)]);
        assert!(h.strong_support().is_empty());
        assert_eq!(h.weak_support(), h.segments);
        let z = prof(f(0), &[(f(1), f(1), A0), (f(2), f(2), A0)]);
        assert_eq!(z.strong_support(), z.segments);
        // value 3 with nu 7 is strong from 3 on
        let s = prof(f(7), &[(f(1), f(5), f(3)), (A0, A0, A0)]);
        assert_eq!(s.strong_support()[0], Segment::new(f(3), f(5), f(3)));
        assert_eq!(s.weak_support()[0], Segment::new(f(1), f(2), f(3)));
    }

    #[test]
    fn characteristic_value_examples() {
        let p = prof(A0, &[(f(1), f(1), A0), (f(2), f(2), f(5))]);
        let cv = p.characteristic_values().unwrap();
        assert_eq!((cv.mu.clone(), cv.sigma.clone(), cv.rho.clone(), cv.epsilon.clone()), (f(1), A0, f(5), f(2)));
        assert_eq!((cv.epsilon_prime.clone(), cv.lambda_prime.clone(), cv.chi.clone()), (f(1), f(1), f(3)));

        let i2 = prof(f(2), &[(A0, A0, A0)]);
        let cv = i2.characteristic_values().unwrap();
        assert_eq!((cv.mu, cv.sigma, cv.rho, cv.epsilon), (A0, A0, f(0), A0));
        assert_eq!((cv.epsilon_prime, cv.lambda_prime, cv.chi), (A0, A0, f(1)));

        let c = KernelProfile::from_triples(A0, A0, &[(A0, A0, f(1))]);
        let cv = c.characteristic_values().unwrap();
        assert_eq!((cv.mu, cv.epsilon, cv.sigma, cv.rho, cv.chi), (A0, A0, f(1), f(0), f(1)));
        assert!(cv.epsilon_attained);

        assert!(prof(A0, &[]).characteristic_values().is_err());
    }

    #[test]
    fn accumulated_examples() {
        let p = prof(A0, &[(f(1), f(1), A0), (f(2), f(2), f(5))]);
        assert_eq!(p.accumulated().steps, vec![(f(1), A0), (f(2), f(5)), (f(3), f(0))]);
        let perm = prof(f(0), &[(f(1), f(1), A0)]);
        assert_eq!(perm.accumulated().steps, vec![(f(1), A0), (f(2), f(0))]);
        let i = prof(f(0), &[(A0, A0, A0)]);
        assert_eq!(i.accumulated().steps, vec![(f(1), A0)]);
    }

    #[test]
    fn chi_scans_inside_segments() {
        // s(>= xi) = 3 * (11 - xi) on [2, 10]; first value <= 10 is at xi = 8.
        let p = prof(f(0), &[(f(1), f(1), A0), (f(2), f(10), f(3))]);
        assert_eq!(p.characteristic_values().unwrap().chi, f(8));
    }

    #[test]
    fn canonical_merges_adjacent() {
        let p = prof(f(2), &[(f(3), f(4), f(2)), (f(1), f(2), f(2)), (A0, A0, A0)]);
        let c = p.canonical();
        assert_eq!(c.segments, vec![Segment::new(f(1), f(4), f(2)), Segment::new(A0, A0, A0)]);
        let q = prof(f(2), &[(f(8), f(8), f(1)), (A0, A0, f(1))]);
        assert_eq!(q.canonical().segments.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let p = prof(f(2), &[(A0, A0, A0)]);
        let text = p.to_json();
        assert!(text.contains("\"aleph(0)\""));
        assert_eq!(KernelProfile::from_json(&text, "mem").unwrap(), p);
        match KernelProfile::from_json("{\"kappa\": \"aleph(\"}", "x.json") {
            Err(Error::File { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
