//! Certified profiles and fibers against brute-force counting.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sminimal::countable_model::{
    compose, random_function, random_realizable_profile, random_realization, realize, ConcreteFunction,
    FunctionParams, PermutationParams, Rule, INFINITE,
};
use sminimal::ordinal_cardinal::Cardinal;
use sminimal::Error;

/// Targets examined by brute force.
const TARGETS: u64 = 1_000;

/// A domain bound past which no point maps below `TARGETS` except through
/// constant rules, with room for every infinite fiber to show more than
/// `TARGETS` members.
fn scan_bound(f: &ConcreteFunction) -> u64 {
    let k = f.modulus();
    let low_base = f
        .rules()
        .iter()
        .filter_map(|r| match r {
            Rule::Affine { base, .. } => Some(*base),
            Rule::Constant(_) => None,
        })
        .min()
        .unwrap_or(0)
        .min(0)
        .unsigned_abs();
    f.threshold() + k * (TARGETS + low_base + 2) + 1
}

/// Brute fiber sizes for targets below `TARGETS`; `None` marks a fiber with
/// more than `TARGETS` members in the scan.
fn brute_fibers(f: &ConcreteFunction) -> Vec<Option<u64>> {
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for n in 0..scan_bound(f) {
        let y = f.apply(n);
        if y < TARGETS {
            *counts.entry(y).or_default() += 1;
        }
    }
    (0..TARGETS)
        .map(|y| {
            let c = counts.get(&y).copied().unwrap_or(0);
            (c <= TARGETS).then_some(c)
        })
        .collect()
}

fn check_exact(f: &ConcreteFunction) {
    let brute = brute_fibers(f);
    for (y, want) in brute.iter().enumerate() {
        let got = f.fiber(y as u64).len();
        assert_eq!(got, *want, "{f:?}: fiber of {y}");
    }
    // Level sets restricted to the targets agree with the brute tally.
    let mut by_size: HashMap<Option<u64>, u64> = HashMap::new();
    for s in brute.iter().filter(|s| **s != Some(0)) {
        *by_size.entry(*s).or_default() += 1;
    }
    let p = f.profile();
    for (size, count) in by_size {
        let (level, xi) = match size {
            Some(s) => (f.level_set(s), Cardinal::fin(s)),
            None => (f.level_set(INFINITE), Cardinal::ALEPH_0),
        };
        assert_eq!(level.rank(TARGETS), count, "{f:?}: level set of size {xi}");
        let s = p.value_at(&xi);
        match level.len() {
            Some(n) => assert_eq!(s, Cardinal::fin(n), "{f:?}: s({xi})"),
            None => assert_eq!(s, Cardinal::ALEPH_0, "{f:?}: s({xi})"),
        }
    }
    let missing = brute.iter().filter(|s| **s == Some(0)).count() as u64;
    assert_eq!(f.range().complement().rank(TARGETS), missing, "{f:?}: complement of the range");
    assert_eq!(p.nu, f.range().complement().len().map_or(Cardinal::ALEPH_0, Cardinal::fin));
}

#[test]
fn random_functions_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        check_exact(&random_function(&mut rng, FunctionParams::default()));
    }
}

#[test]
fn random_realizations_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..60 {
        let p = random_realizable_profile(&mut rng, 4);
        let f = random_realization(&mut rng, &p, PermutationParams { prefix: 5, splits: 1 }).unwrap();
        assert_eq!(f.profile(), &p);
        check_exact(&f);
    }
}

#[test]
fn compositions_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let f = random_function(&mut rng, FunctionParams::default());
        let g = random_function(&mut rng, FunctionParams::default());
        let h = compose(&f, &g).unwrap();
        for n in 0..5_000 {
            assert_eq!(h.apply(n), f.apply(g.apply(n)));
        }
        check_exact(&h);
    }
}

#[test]
fn presentations_round_trip_through_json() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..100 {
        let params = FunctionParams { max_prefix: rng.gen_range(0..8), ..FunctionParams::default() };
        let f = random_function(&mut rng, params);
        let back = ConcreteFunction::from_json(&f.to_json(), "round trip").unwrap();
        assert_eq!(back, f);
        assert_eq!(back.profile(), f.profile());
    }
}

#[test]
fn unrealizable_profiles_are_rejected() {
    let a0 = Cardinal::ALEPH_0;
    // All classes infinite with finite complement: outside the carrier.
    let i2 = sminimal::kernel_sequence::KernelProfile::from_triples(a0.clone(), Cardinal::fin(2), &[(a0.clone(), a0.clone(), a0.clone())]);
    assert!(matches!(realize(&i2), Err(Error::Unrealizable(_))));
}
