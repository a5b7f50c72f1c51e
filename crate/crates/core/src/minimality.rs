//! Decision procedures for S-minimality on finitely presented profiles,
//! the clone classifier, clone counting, and the countable classification.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel_sequence::{CharacteristicValues, KernelProfile, Segment, StepFunction};
use crate::ordinal_cardinal::Cardinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Mu,
    Nu,
    Sigma,
    Rho,
    SPrimeDec,
    N,
    Epsilon,
    SCont,
    Chi,
    HashEpsilon,
    LambdaPrime,
    EpsilonReg,
    Kappa,
    SPrimeInf,
}

impl Condition {
    pub const MAIN: [Condition; 11] = [
        Condition::Mu,
        Condition::Nu,
        Condition::Sigma,
        Condition::Rho,
        Condition::SPrimeDec,
        Condition::N,
        Condition::Epsilon,
        Condition::SCont,
        Condition::Chi,
        Condition::HashEpsilon,
        Condition::LambdaPrime,
    ];

    pub const DERIVED: [Condition; 3] = [Condition::EpsilonReg, Condition::Kappa, Condition::SPrimeInf];

    pub fn key(self) -> &'static str {
        match self {
            Condition::Mu => "mu",
            Condition::Nu => "nu",
            Condition::Sigma => "sigma",
            Condition::Rho => "rho",
            Condition::SPrimeDec => "s'dec",
            Condition::N => "n",
            Condition::Epsilon => "epsilon",
            Condition::SCont => "scont",
            Condition::Chi => "chi",
            Condition::HashEpsilon => "#epsilon",
            Condition::LambdaPrime => "lambda'",
            Condition::EpsilonReg => "epsilon-reg",
            Condition::Kappa => "kappa",
            Condition::SPrimeInf => "s'inf",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// The offending data behind a false condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Cardinal { at: Cardinal },
    Pair { first: Cardinal, second: Cardinal },
    Range { lo: Cardinal, hi: Cardinal },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub condition: Condition,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Entry {
    fn new(condition: Condition, failure: Option<Witness>) -> Self {
        Entry { condition, holds: failure.is_none(), witness: failure }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("holds", &self.holds)?;
        if let Some(w) = &self.witness {
            m.serialize_entry("witness", w)?;
        }
        m.end()
    }
}

/// All eleven conditions, evaluated in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub entries: Vec<Entry>,
    pub values: CharacteristicValues,
    /// Set when the strong support is infinite and suprema were taken as maxima.
    pub fragment_semantics: bool,
}

impl ConditionReport {
    pub fn get(&self, c: Condition) -> &Entry {
        self.entries.iter().find(|e| e.condition == c).expect("report has every main condition")
    }

    pub fn holds(&self, c: Condition) -> bool {
        self.get(c).holds
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

impl Serialize for ConditionReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for e in &self.entries {
            m.serialize_entry(e.condition.key(), e)?;
        }
        if self.fragment_semantics {
            m.serialize_entry("note", "fragment semantics")?;
        }
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NotApplicable {
    Permutation,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    MinimalConstant,
    MinimalNonconstant,
    NotMinimal(ConditionReport),
    NotApplicable(NotApplicable),
}

impl Verdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Verdict::MinimalConstant | Verdict::MinimalNonconstant)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::MinimalConstant => "MinimalConstant",
            Verdict::MinimalNonconstant => "MinimalNonconstant",
            Verdict::NotMinimal(_) => "NotMinimal",
            Verdict::NotApplicable(_) => "NotApplicable",
        }
    }
}

fn is_constant_shape(p: &KernelProfile) -> bool {
    p.nu == p.kappa && p.segments == [Segment::new(p.kappa.clone(), p.kappa.clone(), Cardinal::ONE)]
}

fn is_permutation_shape(p: &KernelProfile) -> bool {
    p.nu.is_zero() && p.segments == [Segment::new(Cardinal::ONE, Cardinal::ONE, p.kappa.clone())]
}

/// Evaluates every condition of the minimality criterion.
pub fn check_conditions(p: &KernelProfile) -> Result<ConditionReport> {
    let violations = p.validate();
    if let Some(v) = violations.first() {
        return Err(Error::Profile(format!("invalid profile: {v}")));
    }
    let p = p.canonical();
    if is_permutation_shape(&p) {
        return Err(Error::Precondition("permutation profile: conditions apply to non-permutations only".into()));
    }
    let cv = p.characteristic_values()?;
    let kappa = &p.kappa;
    let nu = &p.nu;
    let strong = p.strong_support();
    let at = |c: &Cardinal| Some(Witness::Cardinal { at: c.clone() });

    let mu = (!(cv.mu == Cardinal::ONE || cv.mu.is_infinite())).then(|| at(&cv.mu)).flatten();
    let nu_c = (cv.mu.is_finite() && !(nu.is_infinite() || nu.is_zero())).then(|| at(nu)).flatten();
    let sigma = (cv.sigma != *kappa).then(|| at(&cv.sigma)).flatten();
    let rho = (cv.rho >= *kappa).then(|| at(&cv.rho)).flatten();

    let mut sdec = None;
    for (i, s) in strong.iter().enumerate() {
        if s.lo != s.hi {
            sdec = Some(Witness::Range { lo: s.lo.clone(), hi: s.hi.clone() });
            break;
        }
        if i > 0 && strong[i - 1].value <= s.value {
            sdec = Some(Witness::Pair { first: strong[i - 1].lo.clone(), second: s.lo.clone() });
            break;
        }
    }

    let n = strong.iter().find_map(|s| {
        let first = s.lo.clone().max(Cardinal::fin(2));
        (first.is_finite() && first <= s.hi).then_some(Witness::Cardinal { at: first })
    });

    let epsilon = (!(cv.epsilon == Cardinal::ONE || cv.epsilon.is_infinite())).then(|| at(&cv.epsilon)).flatten();

    let acc = p.accumulated();
    let two = Cardinal::fin(2);
    let scont = acc
        .drop_points()
        .find(|t| **t > two && **t <= cv.chi && !t.is_infinite_regular())
        .map(|t| Witness::Cardinal { at: t.clone() });
    scont_cross_check(&p, &cv.chi, scont.is_some())?;

    let chi = (cv.epsilon <= *nu && p.sum_ge(&cv.chi).is_infinite()).then(|| at(&cv.chi)).flatten();
    let hash_eps = (cv.epsilon > *nu && p.value_at(&cv.epsilon).is_finite()).then(|| at(&cv.epsilon)).flatten();
    let lambda = (cv.epsilon > *nu && !p.sum_gt_le(&cv.lambda_prime, nu).is_zero())
        .then(|| Witness::Range { lo: cv.lambda_prime.clone(), hi: nu.clone() });

    let entries = vec![
        Entry::new(Condition::Mu, mu),
        Entry::new(Condition::Nu, nu_c),
        Entry::new(Condition::Sigma, sigma),
        Entry::new(Condition::Rho, rho),
        Entry::new(Condition::SPrimeDec, sdec),
        Entry::new(Condition::N, n),
        Entry::new(Condition::Epsilon, epsilon),
        Entry::new(Condition::SCont, scont),
        Entry::new(Condition::Chi, chi),
        Entry::new(Condition::HashEpsilon, hash_eps),
        Entry::new(Condition::LambdaPrime, lambda),
    ];
    Ok(ConditionReport { entries, values: cv, fragment_semantics: p.strong_support_is_infinite() })
}

/// Re-derives the continuity condition pointwise at the presented boundaries
/// and compares it with the drop-point evaluation.
fn scont_cross_check(p: &KernelProfile, chi: &Cardinal, drop_violation: bool) -> Result<()> {
    let two = Cardinal::fin(2);
    let at_two = p.sum_ge(&two);
    let mut bounds: Vec<Cardinal> = vec![Cardinal::ONE, two.clone()];
    let mut last_finite_change = 2;
    for s in &p.segments {
        bounds.push(s.lo.clone());
        bounds.push(s.hi.clone());
        bounds.push(s.hi.succ());
        if let Some(x) = s.lo.pred() {
            bounds.push(x);
        }
        match &s.hi {
            Cardinal::Finite(h) => last_finite_change = last_finite_change.max(h + 1),
            // The only limit point where a segment's tail count can turn finite.
            Cardinal::Aleph(b) => bounds.push(Cardinal::Aleph(b.limit_part())),
        }
    }
    // s(>= n) over finite n is decreasing, so one point decides the finite clause.
    bounds.push(match chi {
        Cardinal::Finite(c) => Cardinal::Finite(*c),
        Cardinal::Aleph(_) => Cardinal::Finite(last_finite_change),
    });
    bounds.retain(|b| *b <= p.kappa && !b.is_zero());
    bounds.sort();
    bounds.dedup();
    let mut pointwise_violation = false;
    for (i, b) in bounds.iter().enumerate() {
        if *b <= two || b > chi {
            continue;
        }
        let here = p.sum_ge(b);
        let ok = match b {
            Cardinal::Finite(_) => here == at_two,
            // s(>= .) is constant on [previous boundary, b) for a limit b.
            Cardinal::Aleph(a) if a.is_limit() => here == p.sum_ge(&bounds[i - 1]),
            Cardinal::Aleph(_) => true,
        };
        pointwise_violation |= !ok;
    }
    if pointwise_violation != drop_violation {
        return Err(Error::Invariant(format!(
            "scont evaluations disagree on {p}: drop points say {drop_violation}, pointwise says {pointwise_violation}"
        )));
    }
    Ok(())
}

pub fn is_s_minimal(p: &KernelProfile) -> Verdict {
    if !p.is_valid() {
        return Verdict::NotApplicable(NotApplicable::Invalid);
    }
    let c = p.canonical();
    if is_constant_shape(&c) {
        return Verdict::MinimalConstant;
    }
    if is_permutation_shape(&c) {
        return Verdict::NotApplicable(NotApplicable::Permutation);
    }
    match check_conditions(&c) {
        Ok(r) if r.all_hold() => Verdict::MinimalNonconstant,
        Ok(r) => Verdict::NotMinimal(r),
        Err(e) => panic!("condition check failed on a valid non-permutation profile: {e}"),
    }
}

/// Like [`is_s_minimal`], but surfaces internal invariant failures as errors.
pub fn try_is_s_minimal(p: &KernelProfile) -> Result<Verdict> {
    if !p.is_valid() {
        return Ok(Verdict::NotApplicable(NotApplicable::Invalid));
    }
    let c = p.canonical();
    if is_constant_shape(&c) {
        return Ok(Verdict::MinimalConstant);
    }
    if is_permutation_shape(&c) {
        return Ok(Verdict::NotApplicable(NotApplicable::Permutation));
    }
    let r = check_conditions(&c)?;
    Ok(if r.all_hold() { Verdict::MinimalNonconstant } else { Verdict::NotMinimal(r) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedReport {
    pub entries: Vec<Entry>,
    /// Implications whose antecedents hold but whose conclusion fails.
    pub implication_failures: Vec<String>,
}

impl Serialize for DerivedReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for e in &self.entries {
            m.serialize_entry(e.condition.key(), e)?;
        }
        m.serialize_entry("implication-failures", &self.implication_failures)?;
        m.end()
    }
}

impl DerivedReport {
    pub fn holds(&self, c: Condition) -> bool {
        self.entries.iter().find(|e| e.condition == c).is_some_and(|e| e.holds)
    }
}

/// Evaluates the three derived conditions and the implications that yield them.
pub fn derived_check(p: &KernelProfile) -> Result<DerivedReport> {
    let p = p.canonical();
    let cv = p.characteristic_values()?;
    let at_eps = p.value_at(&cv.epsilon);
    let eps_reg = (at_eps.is_zero() && !cv.epsilon.is_infinite_regular())
        .then(|| Witness::Cardinal { at: cv.epsilon.clone() });
    let kappa = (p.nu == p.kappa && !p.value_at(&p.kappa).is_zero())
        .then(|| Witness::Cardinal { at: p.kappa.clone() });
    let s_inf = p
        .strong_support()
        .into_iter()
        .find(|s| s.value.is_finite())
        .map(|s| Witness::Cardinal { at: s.lo });
    let entries = vec![
        Entry::new(Condition::EpsilonReg, eps_reg),
        Entry::new(Condition::Kappa, kappa),
        Entry::new(Condition::SPrimeInf, s_inf),
    ];
    let mut implication_failures = Vec::new();
    if !is_permutation_shape(&p) {
        let r = check_conditions(&p)?;
        let all = |cs: &[Condition]| cs.iter().all(|c| r.holds(*c));
        let derived = |c: Condition| entries.iter().find(|e| e.condition == c).is_some_and(|e| e.holds);
        if all(&[Condition::SPrimeDec, Condition::SCont, Condition::Chi]) && !derived(Condition::EpsilonReg) {
            implication_failures.push("s'dec, scont, chi => epsilon-reg".to_string());
        }
        if all(&[Condition::Sigma, Condition::Chi]) && !derived(Condition::Kappa) {
            implication_failures.push("sigma, chi => kappa".to_string());
        }
        if all(&[Condition::Nu, Condition::SPrimeDec, Condition::HashEpsilon]) && !derived(Condition::SPrimeInf) {
            implication_failures.push("nu, s'dec, #epsilon => s'inf".to_string());
        }
        if all(&[Condition::Sigma, Condition::Chi]) && cv.epsilon <= p.nu {
            // epsilon' < chi <= epsilon^+ in this situation.
            if !(cv.epsilon_prime < cv.chi && cv.chi <= cv.epsilon.succ()) {
                implication_failures.push("sigma, chi, epsilon <= nu => epsilon' < chi <= epsilon^+".to_string());
            }
        }
    }
    Ok(DerivedReport { entries, implication_failures })
}

/// The data that determine the clone generated by a minimal function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CloneKey {
    pub mu: Cardinal,
    pub nu: Cardinal,
    pub strong_support: Vec<Segment>,
    pub chi: Cardinal,
    pub accumulated_below_chi: StepFunction,
    pub epsilon: Cardinal,
    pub epsilon_attained: bool,
}

impl CloneKey {
    /// Names of the components in which two keys differ.
    pub fn diff(&self, other: &CloneKey) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.mu != other.mu {
            out.push("mu");
        }
        if self.nu != other.nu {
            out.push("nu");
        }
        if self.strong_support != other.strong_support {
            out.push("strong-support");
        }
        if self.chi != other.chi {
            out.push("chi");
        }
        if self.accumulated_below_chi != other.accumulated_below_chi {
            out.push("accumulated");
        }
        if self.epsilon != other.epsilon {
            out.push("epsilon");
        }
        if self.epsilon_attained != other.epsilon_attained {
            out.push("epsilon-attained");
        }
        out
    }
}

pub fn clone_key(p: &KernelProfile) -> Result<CloneKey> {
    if !try_is_s_minimal(p)?.is_minimal() {
        return Err(Error::Precondition("key defined only for S-minimal profiles".into()));
    }
    let p = p.canonical();
    let cv = p.characteristic_values()?;
    let acc = p.accumulated();
    Ok(CloneKey {
        strong_support: p.strong_support(),
        accumulated_below_chi: acc.truncated_below(&cv.chi),
        mu: cv.mu,
        nu: cv.nu,
        chi: cv.chi,
        epsilon: cv.epsilon,
        epsilon_attained: cv.epsilon_attained,
    })
}

pub fn same_clone(p: &KernelProfile, q: &KernelProfile) -> Result<bool> {
    if p.kappa != q.kappa {
        return Err(Error::KappaMismatch { left: p.kappa.clone(), right: q.kappa.clone() });
    }
    Ok(clone_key(p)? == clone_key(q)?)
}

/// Number of clones generated by minimal functions on a set of size `kappa`.
pub fn count_minimal_clones(kappa: &Cardinal) -> Result<Cardinal> {
    match kappa {
        Cardinal::Finite(_) => Err(Error::Precondition("kappa must be infinite".into())),
        Cardinal::Aleph(alpha) => Ok(Cardinal::of_ordinal(alpha).max(Cardinal::ALEPH_0)),
    }
}

/// A minimal profile with all classes of size kappa and complement `nu`.
pub fn witness_profile(kappa: &Cardinal, nu: &Cardinal) -> Result<KernelProfile> {
    if kappa.is_finite() {
        return Err(Error::Precondition("kappa must be infinite".into()));
    }
    if nu >= kappa {
        return Err(Error::Precondition(format!("nu = {nu} is not below kappa = {kappa}")));
    }
    let p = KernelProfile::new(
        kappa.clone(),
        nu.clone(),
        vec![Segment::new(kappa.clone(), kappa.clone(), kappa.clone())],
    );
    match try_is_s_minimal(&p)? {
        Verdict::MinimalNonconstant => Ok(p),
        v => Err(Error::Invariant(format!("witness profile {p} judged {}", v.name()))),
    }
}

/// Minimal families on a countable set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CountableFamily {
    /// All classes infinite, complement of size `nu`.
    I(u64),
    /// Injective with infinite complement.
    H,
    Const,
    Permutation,
    NotMinimal,
}

impl fmt::Display for CountableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountableFamily::I(nu) => write!(f, "I({nu})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Classifies by shape alone, without consulting the general criterion.
pub fn countable_family(p: &KernelProfile) -> Result<CountableFamily> {
    if p.kappa != Cardinal::ALEPH_0 {
        return Err(Error::Precondition(format!("kappa must be aleph(0), got {}", p.kappa)));
    }
    if let Some(v) = p.validate().first() {
        return Err(Error::Profile(format!("invalid profile: {v}")));
    }
    let c = p.canonical();
    if is_permutation_shape(&c) {
        return Ok(CountableFamily::Permutation);
    }
    if is_constant_shape(&c) {
        return Ok(CountableFamily::Const);
    }
    let (first, last) = (&c.segments[0], &c.segments[c.segments.len() - 1]);
    Ok(match (&first.lo, &last.hi, &c.nu) {
        (Cardinal::Aleph(_), _, Cardinal::Finite(nu)) => CountableFamily::I(*nu),
        (_, hi, nu) if *hi == Cardinal::ONE && nu.is_infinite() => CountableFamily::H,
        _ => CountableFamily::NotMinimal,
    })
}

/// Shape classification, cross-checked against [`is_s_minimal`].
pub fn countable_classify(p: &KernelProfile) -> Result<CountableFamily> {
    let family = countable_family(p)?;
    let verdict = try_is_s_minimal(p)?;
    let tagged = !matches!(family, CountableFamily::NotMinimal | CountableFamily::Permutation);
    let agree = match family {
        CountableFamily::Permutation => verdict == Verdict::NotApplicable(NotApplicable::Permutation),
        CountableFamily::Const => verdict == Verdict::MinimalConstant,
        _ => verdict.is_minimal() == tagged,
    };
    if !agree {
        return Err(Error::Invariant(format!("{p}: shape says {family}, criterion says {}", verdict.name())));
    }
    Ok(family)
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

    fn i_nu(nu: u64) -> KernelProfile {
        prof(f(nu), &[(A0, A0, A0)])
    }

    fn h() -> KernelProfile {
        prof(A0, &[(f(1), f(1), A0)])
    }

    fn constant() -> KernelProfile {
        prof(A0, &[(A0, A0, f(1))])
    }

    #[test]
    fn i2_passes_everything() {
        let r = check_conditions(&i_nu(2)).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(!r.fragment_semantics);
    }

    #[test]
    fn finite_drop_breaks_continuity() {
        let r = check_conditions(&prof(A0, &[(f(1), f(1), A0), (f(2), f(2), f(5))])).unwrap();
        assert!(!r.holds(Condition::SCont));
        assert_eq!(r.get(Condition::SCont).witness, Some(Witness::Cardinal { at: f(3) }));
    }

    #[test]
    fn nu_condition_fails_for_small_complement() {
        let r = check_conditions(&prof(f(1), &[(f(1), f(1), A0)])).unwrap();
        assert!(!r.holds(Condition::Nu));
        assert_eq!(r.get(Condition::Nu).witness, Some(Witness::Cardinal { at: f(1) }));
    }

    #[test]
    fn permutation_is_rejected_by_check() {
        assert!(check_conditions(&prof(f(0), &[(f(1), f(1), A0)])).is_err());
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(is_s_minimal(&constant()), Verdict::MinimalConstant);
        assert_eq!(is_s_minimal(&h()), Verdict::MinimalNonconstant);
        let v = is_s_minimal(&prof(f(0), &[(f(1), f(1), A0), (f(2), f(2), A0)]));
        let Verdict::NotMinimal(r) = v else { panic!("expected NotMinimal") };
        assert!(!r.holds(Condition::N));
        assert_eq!(is_s_minimal(&prof(f(0), &[(f(1), f(1), A0)])), Verdict::NotApplicable(NotApplicable::Permutation));
        assert_eq!(is_s_minimal(&prof(f(0), &[(f(2), f(2), f(3))])), Verdict::NotApplicable(NotApplicable::Invalid));
    }

    #[test]
    fn witnesses_are_present_iff_false() {
        let r = check_conditions(&prof(f(3), &[(f(1), f(1), A0), (f(2), f(4), A0), (A0, A0, f(2))])).unwrap();
        for e in &r.entries {
            assert_eq!(e.holds, e.witness.is_none(), "{e:?}");
        }
        assert!(!r.all_hold());
    }

    #[test]
    fn derived_examples() {
        let d = derived_check(&i_nu(2)).unwrap();
        assert!(d.entries.iter().all(|e| e.holds));
        assert!(d.implication_failures.is_empty());
        let d = derived_check(&constant()).unwrap();
        assert!(!d.holds(Condition::Kappa));
        assert!(d.implication_failures.is_empty());
        assert!(derived_check(&i_nu(5)).unwrap().holds(Condition::SPrimeInf));
    }

    #[test]
    fn clone_key_examples() {
        let k = clone_key(&i_nu(3)).unwrap();
        assert_eq!((k.mu.clone(), k.nu.clone(), k.chi.clone(), k.epsilon.clone()), (A0, f(3), f(1), A0));
        assert_eq!(k.strong_support, vec![Segment::new(A0, A0, A0)]);
        assert!(k.accumulated_below_chi.steps.is_empty());
        assert!(k.epsilon_attained);

        let k = clone_key(&h()).unwrap();
        assert_eq!((k.mu.clone(), k.nu.clone(), k.chi.clone(), k.epsilon.clone()), (f(1), A0, f(2), f(1)));
        assert!(k.strong_support.is_empty());
        assert_eq!(k.accumulated_below_chi.steps, vec![(f(1), A0)]);

        let k = clone_key(&constant()).unwrap();
        assert_eq!((k.mu, k.nu, k.epsilon), (A0, A0, A0));

        assert!(clone_key(&prof(f(0), &[(f(1), f(1), A0), (f(2), f(2), A0)])).is_err());
    }

    #[test]
    fn same_clone_examples() {
        let split = KernelProfile::from_triples(
            Cardinal::aleph_n(1),
            f(2),
            &[(Cardinal::aleph_n(1), Cardinal::aleph_n(1), Cardinal::aleph_n(1))],
        );
        assert!(same_clone(&split, &split.clone()).unwrap());
        assert!(same_clone(&i_nu(2), &i_nu(2)).unwrap());
        assert!(!same_clone(&i_nu(2), &i_nu(3)).unwrap());
        assert_eq!(clone_key(&i_nu(2)).unwrap().diff(&clone_key(&i_nu(3)).unwrap()), vec!["nu"]);
        assert!(!same_clone(&h(), &constant()).unwrap());
        assert!(clone_key(&h()).unwrap().diff(&clone_key(&constant()).unwrap()).contains(&"epsilon"));
        assert!(same_clone(&i_nu(2), &split).is_err());
    }

    #[test]
    fn counting_and_witnesses() {
        assert_eq!(count_minimal_clones(&A0).unwrap(), A0);
        assert_eq!(count_minimal_clones(&Cardinal::aleph_n(5)).unwrap(), A0);
        assert!(count_minimal_clones(&f(3)).is_err());
        assert!(witness_profile(&A0, &f(0)).is_ok());
        assert!(witness_profile(&Cardinal::aleph_n(1), &A0).is_ok());
        assert!(witness_profile(&A0, &A0).is_err());
    }

    #[test]
    fn countable_examples() {
        assert_eq!(countable_classify(&i_nu(4)).unwrap(), CountableFamily::I(4));
        assert_eq!(countable_classify(&h()).unwrap(), CountableFamily::H);
        assert_eq!(countable_classify(&constant()).unwrap(), CountableFamily::Const);
        let p = prof(A0, &[(f(1), f(1), A0), (A0, A0, f(1))]);
        assert_eq!(countable_classify(&p).unwrap(), CountableFamily::NotMinimal);
        assert!(countable_classify(&witness_profile(&Cardinal::aleph_n(1), &f(0)).unwrap()).is_err());
    }
}
