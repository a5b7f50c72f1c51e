use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fibers::FiberTable;
use crate::error::{Error, Result};
use crate::kernel_sequence::KernelProfile;

/// Tail rule for one residue class: for `n >= N` with `n % k == r`,
/// the value is `target` or `base + stride * (n / k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Constant(u64),
    Affine { base: i64, stride: u64 },
}

impl Rule {
    fn from_parts(base: i128, stride: i128) -> Result<Rule> {
        if stride < 0 {
            return Err(Error::Presentation(format!("negative stride {stride}")));
        }
        if stride == 0 {
            let t = u64::try_from(base).map_err(|_| Error::Presentation(format!("constant {base} out of range")))?;
            return Ok(Rule::Constant(t));
        }
        let base = i64::try_from(base).map_err(|_| Error::Presentation(format!("base {base} out of range")))?;
        let stride = u64::try_from(stride).map_err(|_| Error::Presentation("stride out of range".into()))?;
        Ok(Rule::Affine { base, stride })
    }

    pub(crate) fn parts(self) -> (i128, i128) {
        match self {
            Rule::Constant(c) => (c as i128, 0),
            Rule::Affine { base, stride } => (base as i128, stride as i128),
        }
    }

    #[inline]
    pub(crate) fn eval(self, q: u64) -> u64 {
        match self {
            Rule::Constant(c) => c,
            Rule::Affine { base, stride } => (base as i128 + stride as i128 * q as i128) as u64,
        }
    }
}

/// A total function on the natural numbers given by a finite prefix and
/// residue rules, together with its certified kernel profile.
#[derive(Clone)]
pub struct ConcreteFunction {
    prefix: Vec<u64>,
    modulus: u64,
    rules: Vec<Rule>,
    table: Arc<FiberTable>,
    profile: KernelProfile,
}

impl PartialEq for ConcreteFunction {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix && self.modulus == other.modulus && self.rules == other.rules
    }
}

impl Eq for ConcreteFunction {}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Bound on presentation sizes; keeps a runaway composition from exhausting memory.
pub const SIZE_LIMIT: u64 = 1 << 24;

impl ConcreteFunction {
    /// Validates, normalizes (least modulus, then shortest prefix) and certifies.
    pub fn new(prefix: Vec<u64>, modulus: u64, rules: Vec<Rule>) -> Result<ConcreteFunction> {
        if modulus == 0 {
            return Err(Error::Presentation("modulus must be positive".into()));
        }
        if rules.len() as u64 != modulus {
            return Err(Error::Presentation(format!("{} rules for modulus {modulus}", rules.len())));
        }
        if modulus > SIZE_LIMIT || prefix.len() as u64 > SIZE_LIMIT {
            return Err(Error::Presentation("presentation exceeds the size limit".into()));
        }
        let n = prefix.len() as u64;
        for (r, rule) in rules.iter().enumerate() {
            let first = n + (r as u64 + modulus - n % modulus) % modulus;
            let (b, s) = rule.parts();
            if b + s * ((first / modulus) as i128) < 0 {
                return Err(Error::Presentation(format!("rule for residue {r} is negative at {first}")));
            }
        }
        let (modulus, rules) = reduce_modulus(modulus, rules)?;
        let mut prefix = prefix;
        while let Some(&last) = prefix.last() {
            let at = prefix.len() as u64 - 1;
            let rule = rules[(at % modulus) as usize];
            let (b, s) = rule.parts();
            if b + s * (at / modulus) as i128 == last as i128 {
                prefix.pop();
            } else {
                break;
            }
        }
        let table = FiberTable::build(&prefix, modulus, &rules)?;
        let profile = table.profile();
        Ok(ConcreteFunction { prefix, modulus, rules, table: Arc::new(table), profile })
    }

    pub fn identity() -> ConcreteFunction {
        ConcreteFunction::new(vec![], 1, vec![Rule::Affine { base: 0, stride: 1 }]).expect("identity")
    }

    pub fn constant(c: u64) -> ConcreteFunction {
        ConcreteFunction::new(vec![], 1, vec![Rule::Constant(c)]).expect("constant")
    }

    /// `n ↦ stride * n + offset`.
    pub fn linear(stride: u64, offset: u64) -> ConcreteFunction {
        ConcreteFunction::new(vec![], 1, vec![Rule::Affine { base: offset as i64, stride }]).expect("linear")
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The certified kernel profile (kappa is aleph(0)).
    pub fn profile(&self) -> &KernelProfile {
        &self.profile
    }

    pub(crate) fn table(&self) -> &FiberTable {
        &self.table
    }

    /// Start of the tail: rules govern every `n >= threshold()`.
    pub fn threshold(&self) -> u64 {
        self.prefix.len() as u64
    }

    #[inline]
    pub fn apply(&self, n: u64) -> u64 {
        match self.prefix.get(n as usize) {
            Some(&v) if (n as usize) < self.prefix.len() => v,
            _ => self.rules[(n % self.modulus) as usize].eval(n / self.modulus),
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.table.is_permutation()
    }

    /// Residue classes of the tail as (residue, first member, rule).
    pub(crate) fn tail_classes(&self) -> impl Iterator<Item = (u64, u64, Rule)> + '_ {
        let n = self.threshold();
        let k = self.modulus;
        self.rules.iter().enumerate().map(move |(r, &rule)| {
            let r = r as u64;
            (r, n + (r + k - n % k) % k, rule)
        })
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation {
            prefix: self.prefix.clone(),
            modulus: self.modulus,
            rules: self
                .rules
                .iter()
                .enumerate()
                .map(|(r, rule)| match *rule {
                    Rule::Constant(c) => RuleEntry { residue: r as u64, kind: RuleKind::Constant, params: vec![c as i64] },
                    Rule::Affine { base, stride } => {
                        RuleEntry { residue: r as u64, kind: RuleKind::Affine, params: vec![base, stride as i64] }
                    }
                })
                .collect(),
        }
    }

    pub fn from_presentation(p: &Presentation) -> Result<ConcreteFunction> {
        if p.modulus == 0 || p.modulus > SIZE_LIMIT {
            return Err(Error::Presentation(format!("modulus {} out of range", p.modulus)));
        }
        let mut rules = vec![None; p.modulus as usize];
        for e in &p.rules {
            let slot = rules
                .get_mut(e.residue as usize)
                .ok_or_else(|| Error::Presentation(format!("residue {} out of range for modulus {}", e.residue, p.modulus)))?;
            if slot.is_some() {
                return Err(Error::Presentation(format!("residue {} ruled twice", e.residue)));
            }
            *slot = Some(match (e.kind, e.params.as_slice()) {
                (RuleKind::Constant, &[c]) if c >= 0 => Rule::Constant(c as u64),
                (RuleKind::Affine, &[b, s]) if s > 0 => Rule::Affine { base: b, stride: s as u64 },
                _ => return Err(Error::Presentation(format!("bad params {:?} for residue {}", e.params, e.residue))),
            });
        }
        let rules = rules
            .into_iter()
            .enumerate()
            .map(|(r, x)| x.ok_or_else(|| Error::Presentation(format!("residue {r} has no rule"))))
            .collect::<Result<Vec<_>>>()?;
        ConcreteFunction::new(p.prefix.clone(), p.modulus, rules)
    }

    pub fn from_json(text: &str, origin: &str) -> Result<ConcreteFunction> {
        let p: Presentation = serde_json::from_str(text).map_err(|e| Error::File {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        ConcreteFunction::from_presentation(&p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_presentation()).expect("presentation serializes")
    }
}

fn reduce_modulus(k: u64, rules: Vec<Rule>) -> Result<(u64, Vec<Rule>)> {
    'outer: for d in divisors(k) {
        if d == k {
            break;
        }
        let m = (k / d) as i128;
        let mut reduced = Vec::with_capacity(d as usize);
        for sigma in 0..d {
            let mut want: Option<(i128, i128)> = None;
            for i in 0..(k / d) {
                let rho = sigma + d * i;
                let (b, s) = rules[rho as usize].parts();
                if s % m != 0 {
                    continue 'outer;
                }
                let s2 = s / m;
                let b2 = b - s2 * (rho / d) as i128;
                match want {
                    None => want = Some((b2, s2)),
                    Some(w) if w == (b2, s2) => {}
                    Some(_) => continue 'outer,
                }
            }
            let (b, s) = want.expect("at least one residue");
            reduced.push(Rule::from_parts(b, s)?);
        }
        return Ok((d, reduced));
    }
    Ok((k, rules))
}

/// Builds the presentation of `f` from samples, assuming `f` is quasi-affine
/// with period `k` from `threshold` on. Each residue is fitted on two points
/// and checked on a third.
pub fn interpolate<F>(threshold: u64, k: u64, mut f: F) -> Result<ConcreteFunction>
where
    F: FnMut(u64) -> Result<u64>,
{
    if k == 0 || k > SIZE_LIMIT || threshold > SIZE_LIMIT {
        return Err(Error::Invariant(format!("interpolation size out of range: threshold {threshold}, period {k}")));
    }
    let prefix = (0..threshold).map(&mut f).collect::<Result<Vec<_>>>()?;
    let mut rules = Vec::with_capacity(k as usize);
    for r in 0..k {
        let n1 = threshold + (r + k - threshold % k) % k;
        let v1 = f(n1)? as i128;
        let v2 = f(n1 + k)? as i128;
        let v3 = f(n1 + 2 * k)? as i128;
        let d = v2 - v1;
        if d < 0 || v3 - v2 != d {
            return Err(Error::Invariant(format!("not quasi-affine at residue {r} mod {k}: {v1}, {v2}, {v3}")));
        }
        rules.push(Rule::from_parts(v1 - d * (n1 / k) as i128, d)?);
    }
    ConcreteFunction::new(prefix, k, rules)
}

/// Exact composition `f ∘ g` (g applied first).
pub fn compose(f: &ConcreteFunction, g: &ConcreteFunction) -> Result<ConcreteFunction> {
    let kg = g.modulus;
    let mut factor = 1u64;
    let mut threshold = g.threshold();
    for (_, _, rule) in g.tail_classes() {
        if let Rule::Affine { base, stride } = rule {
            factor = lcm(factor, f.modulus / gcd(f.modulus, stride));
            let need = f.threshold() as i128 - base as i128;
            let q0 = if need <= 0 { 0 } else { (need + stride as i128 - 1) / stride as i128 };
            threshold = threshold.max(kg.saturating_mul(q0 as u64 + 1));
        }
    }
    let k = kg.checked_mul(factor).ok_or_else(|| Error::Invariant("composition modulus overflow".into()))?;
    interpolate(threshold, k, |n| Ok(f.apply(g.apply(n))))
}

impl fmt::Debug for ConcreteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConcreteFunction(prefix={:?}, k={}, rules={:?})", self.prefix, self.modulus, self.rules)
    }
}

impl fmt::Display for ConcreteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prefix {:?}; for n >= {}:", self.prefix, self.threshold())?;
        for (r, rule) in self.rules.iter().enumerate() {
            match rule {
                Rule::Constant(c) => write!(f, " [n%{}={r}] {c}", self.modulus)?,
                Rule::Affine { base, stride } => write!(f, " [n%{}={r}] {base}+{stride}*(n/{})", self.modulus, self.modulus)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Constant,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub residue: u64,
    pub kind: RuleKind,
    /// `[target]` for constant rules, `[base, stride]` for affine ones.
    pub params: Vec<i64>,
}

/// File form of a [`ConcreteFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub prefix: Vec<u64>,
    pub modulus: u64,
    pub rules: Vec<RuleEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal_cardinal::Cardinal;

    fn halve() -> ConcreteFunction {
        ConcreteFunction::new(vec![], 2, vec![Rule::Affine { base: 0, stride: 1 }; 2]).unwrap()
    }

    #[test]
    fn normalization_reduces_modulus_and_prefix() {
        let f = ConcreteFunction::new(vec![0, 2, 4], 2, vec![Rule::Affine { base: 0, stride: 4 }, Rule::Affine { base: 2, stride: 4 }]).unwrap();
        assert_eq!(f, ConcreteFunction::linear(2, 0));
        assert_eq!(f.modulus(), 1);
        assert!(f.prefix().is_empty());
        let g = ConcreteFunction::new(vec![7], 1, vec![Rule::Affine { base: 0, stride: 1 }]).unwrap();
        assert_eq!(g.prefix(), &[7]);
        assert_eq!(halve().modulus(), 2);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(ConcreteFunction::linear(2, 0).apply(7), 14);
        assert_eq!(ConcreteFunction::constant(0).apply(12345), 0);
        let g = ConcreteFunction::new(vec![7], 1, vec![Rule::Affine { base: 0, stride: 1 }]).unwrap();
        assert_eq!(g.apply(0), 7);
        assert_eq!(g.apply(5), 5);
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(ConcreteFunction::new(vec![], 0, vec![]).is_err());
        assert!(ConcreteFunction::new(vec![], 2, vec![Rule::Constant(0)]).is_err());
        assert!(ConcreteFunction::new(vec![], 1, vec![Rule::Affine { base: -3, stride: 1 }]).is_err());
        assert!(ConcreteFunction::new(vec![0, 0, 0], 1, vec![Rule::Affine { base: -3, stride: 1 }]).is_ok());
    }

    #[test]
    fn compose_examples() {
        let f = halve();
        let id = ConcreteFunction::identity();
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let c = ConcreteFunction::constant(3);
        assert_eq!(compose(&c, &f).unwrap(), c);
        let ff = compose(&f, &f).unwrap();
        for n in 0..1000 {
            assert_eq!(ff.apply(n), n / 4);
        }
        assert_eq!(ff.profile().value_at(&Cardinal::fin(4)), Cardinal::ALEPH_0);
        assert_eq!(ff.profile().nu, Cardinal::ZERO);
    }

    #[test]
    fn compose_with_prefix_interaction() {
        let f = ConcreteFunction::new(vec![5, 5, 1], 3, vec![Rule::Constant(2), Rule::Affine { base: 1, stride: 2 }, Rule::Affine { base: 0, stride: 5 }]).unwrap();
        let g = ConcreteFunction::new(vec![9, 0], 2, vec![Rule::Affine { base: -1, stride: 3 }, Rule::Constant(4)]).unwrap();
        let h = compose(&f, &g).unwrap();
        for n in 0..5000 {
            assert_eq!(h.apply(n), f.apply(g.apply(n)), "at {n}");
        }
    }

    #[test]
    fn presentation_round_trip() {
        let f = ConcreteFunction::new(vec![3, 1], 2, vec![Rule::Constant(0), Rule::Affine { base: 2, stride: 3 }]).unwrap();
        let text = f.to_json();
        assert_eq!(ConcreteFunction::from_json(&text, "mem").unwrap(), f);
        match ConcreteFunction::from_json("{\"prefix\": [1,\n oops]}", "x.json") {
            Err(Error::File { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interpolate_rejects_non_affine() {
        assert!(matches!(interpolate(0, 1, |n| Ok(n * n)), Err(Error::Invariant(_))));
    }
}
