//! Randomized soundness checks of the composition bounds against exact
//! profiles of concrete compositions.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use super::function::{compose, ConcreteFunction};
use super::random::{
    random_function, random_realizable_profile, random_realization, random_structured_permutation, FunctionParams,
    PermutationParams,
};
use crate::composition_calculus::{closure_envelope, envelope, BoundSet};
use crate::error::Result;
use crate::kernel_sequence::KernelProfile;
use crate::ordinal_cardinal::Cardinal;

/// Class sizes worth querying: 1 up to one past the largest finite size in any profile, and aleph(0).
pub fn query_sizes(profiles: &[&KernelProfile]) -> Vec<Cardinal> {
    let top = profiles
        .iter()
        .flat_map(|p| p.segments.iter())
        .filter_map(|s| s.hi.as_finite())
        .max()
        .unwrap_or(1);
    (1..=top + 1).map(Cardinal::fin).chain(std::iter::once(Cardinal::ALEPH_0)).collect()
}

/// Checks every bound in `b` against the actual profile `h`; `nu_inner` is the
/// range limit of the interval bounds. Returns (checks made, violations).
pub fn audit(b: &BoundSet, h: &KernelProfile, nu_inner: &Cardinal, label: &str) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            bad.push(format!("{label}: {what}"));
        }
    };
    check(b.nu_lo <= h.nu && b.nu_hi.admits(&h.nu), format!("nu = {} outside [{}, {}]", h.nu, b.nu_lo, b.nu_hi));
    for q in &b.queries {
        let xi = &q.xi;
        let s = h.value_at(xi);
        check(q.upper.admits(&s), format!("s({xi}) = {s} above {}", q.upper));
        if let Some(lo) = &q.lower {
            check(*lo <= s, format!("s({xi}) = {s} below {lo}"));
        }
        if let Some(u) = &q.geq_upper {
            let a = h.sum_ge(xi);
            check(u.admits(&a), format!("s(>={xi}) = {a} above {u}"));
        }
        if let Some(u) = &q.tail_upper {
            let a = h.sum_gt(xi);
            check(u.admits(&a), format!("s(>{xi}) = {a} above {u}"));
        }
        if let Some(u) = &q.interval_upper {
            let a = h.sum_gt_le(xi, nu_inner);
            check(u.admits(&a), format!("s(>{xi}, <={nu_inner}) = {a} above {u}"));
        }
    }
    (checks, bad)
}

/// Pairwise bounds for `f ∘ g` plus extensional agreement below `horizon`.
pub fn check_pair(f: &ConcreteFunction, g: &ConcreteFunction, horizon: u64) -> Result<(usize, Vec<String>)> {
    let h = compose(f, g)?;
    let mut bad = Vec::new();
    if let Some(n) = (0..horizon).find(|&n| h.apply(n) != f.apply(g.apply(n))) {
        bad.push(format!("compose disagrees with f(g(n)) at n = {n}"));
    }
    let (pf, pg, ph) = (f.profile(), g.profile(), h.profile());
    let b = envelope(pf, pg, &query_sizes(&[pf, pg, ph]))?;
    let (checks, more) = audit(&b, ph, &pg.nu, &format!("f = {f:?}, g = {g:?}"));
    bad.extend(more);
    Ok((checks + 1, bad))
}

/// One-generator bounds for words in `f` and permutations.
pub fn check_closure(f: &ConcreteFunction, words: &[ConcreteFunction]) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut bad = Vec::new();
    for w in words.iter().filter(|w| !w.is_permutation()) {
        let b = closure_envelope(f.profile(), &query_sizes(&[f.profile(), w.profile()]));
        let (c, more) = audit(&b, w.profile(), &f.profile().nu, &format!("f = {f:?}, word = {w:?}"));
        checks += c;
        bad.extend(more);
    }
    (checks, bad)
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub cases: u64,
    pub horizon: u64,
    pub pairs: u64,
    pub checks: u64,
    pub violations: Vec<String>,
}

fn one_case(seed: u64, horizon: u64) -> Result<(usize, Vec<String>)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let small = PermutationParams { prefix: 4, splits: 1 };
    let pick = |rng: &mut StdRng| -> Result<ConcreteFunction> {
        if rng.gen_bool(0.5) {
            Ok(random_function(rng, FunctionParams::default()))
        } else {
            let p = random_realizable_profile(rng, 4);
            random_realization(rng, &p, small)
        }
    };
    let f = pick(&mut rng)?;
    let g = pick(&mut rng)?;
    let (mut checks, mut bad) = check_pair(&f, &g, horizon)?;
    let pi = random_structured_permutation(rng.gen(), small)?;
    let words = [compose(&f, &compose(&pi, &f)?)?, compose(&f, &pi)?, compose(&pi, &f)?];
    let (c, more) = check_closure(&f, &words);
    checks += c;
    bad.extend(more);
    Ok((checks, bad))
}

/// Runs `cases` seeded cases on the rayon pool. Case `i` uses seed `seed + i`.
pub fn run_oracle(seed: u64, cases: u64, horizon: u64) -> Result<OracleSummary> {
    let results: Vec<Result<(usize, Vec<String>)>> =
        (0..cases).into_par_iter().map(|i| one_case(seed.wrapping_add(i), horizon)).collect();
    let mut summary = OracleSummary { seed, cases, horizon, pairs: 0, checks: 0, violations: Vec::new() };
    for r in results {
        let (c, bad) = r?;
        summary.pairs += 1;
        summary.checks += c as u64;
        summary.violations.extend(bad);
    }
    Ok(summary)
}
