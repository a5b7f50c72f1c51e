//! Seeded generators for permutations, carrier functions and realizable profiles.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::function::{compose, interpolate, lcm, ConcreteFunction, Rule};
use super::realize::realize;
use crate::error::{Error, Result};
use crate::kernel_sequence::KernelProfile;
use crate::ordinal_cardinal::Cardinal;

/// Size parameters for [`random_structured_permutation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationParams {
    /// Length of the shuffled finite prefix.
    pub prefix: u64,
    /// Number of residue-class splits applied to each side of the tail.
    pub splits: u32,
}

impl PermutationParams {
    pub const IDENTITY: PermutationParams = PermutationParams { prefix: 0, splits: 0 };
}

impl Default for PermutationParams {
    fn default() -> Self {
        PermutationParams { prefix: 6, splits: 2 }
    }
}

/// Residue classes `{offset + residue + modulus*j}` partitioning the numbers `>= offset`.
fn random_partition(rng: &mut StdRng, factors: &[u64]) -> Vec<(u64, u64)> {
    let mut classes = vec![(0u64, 1u64)];
    for &f in factors {
        let (c, d) = classes.swap_remove(rng.gen_range(0..classes.len()));
        classes.extend((0..f).map(|i| (c + d * i, d * f)));
    }
    classes
}

/// A bijection made of a shuffled prefix and a random matching of residue
/// classes on the tail, each class mapped increasingly onto its partner.
pub fn random_structured_permutation(seed: u64, params: PermutationParams) -> Result<ConcreteFunction> {
    let mut rng = StdRng::seed_from_u64(seed);
    let m = params.prefix;
    let mut head: Vec<u64> = (0..m).collect();
    head.shuffle(&mut rng);
    let factors: Vec<u64> = (0..params.splits).map(|_| rng.gen_range(2..=3)).collect();
    let dom = random_partition(&mut rng, &factors);
    let mut cod = random_partition(&mut rng, &factors);
    cod.shuffle(&mut rng);
    let k = dom.iter().fold(1, |acc, c| lcm(acc, c.1));
    let alpha = interpolate(m, k, |n| {
        if n < m {
            return Ok(head[n as usize]);
        }
        let t = n - m;
        let (i, &(c, d)) = dom.iter().enumerate().find(|(_, &(c, d))| t % d == c).expect("partition covers");
        let (c2, d2) = cod[i];
        Ok(m + c2 + d2 * ((t - c) / d))
    })?;
    if !alpha.is_permutation() {
        return Err(Error::Invariant("generated map is not a permutation".into()));
    }
    Ok(alpha)
}

/// Size parameters for [`random_function`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionParams {
    pub max_prefix: u64,
    pub max_modulus: u64,
    pub max_value: u64,
    pub max_stride: u64,
}

impl Default for FunctionParams {
    fn default() -> Self {
        FunctionParams { max_prefix: 6, max_modulus: 4, max_value: 12, max_stride: 4 }
    }
}

/// An arbitrary member of the carrier class.
pub fn random_function(rng: &mut StdRng, params: FunctionParams) -> ConcreteFunction {
    let n = rng.gen_range(0..=params.max_prefix);
    let prefix = (0..n).map(|_| rng.gen_range(0..=params.max_value)).collect();
    let k = rng.gen_range(1..=params.max_modulus);
    let rules = (0..k)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Rule::Constant(rng.gen_range(0..=params.max_value))
            } else {
                Rule::Affine { base: rng.gen_range(0..=params.max_value) as i64, stride: rng.gen_range(1..=params.max_stride) }
            }
        })
        .collect();
    ConcreteFunction::new(prefix, k, rules).expect("nonnegative rules are valid")
}

/// A valid countable profile that [`realize`] accepts: finitely many finite
/// sizes up to `max_size`, finitely many infinite classes.
pub fn random_realizable_profile(rng: &mut StdRng, max_size: u64) -> KernelProfile {
    let a0 = Cardinal::ALEPH_0;
    loop {
        let mut triples = Vec::new();
        for size in 1..=max_size {
            match rng.gen_range(0..6) {
                0 | 1 => triples.push((Cardinal::fin(size), Cardinal::fin(size), a0.clone())),
                2 => triples.push((Cardinal::fin(size), Cardinal::fin(size), Cardinal::fin(rng.gen_range(1..=3)))),
                _ => {}
            }
        }
        let constants = if rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 };
        if constants > 0 {
            triples.push((a0.clone(), a0.clone(), Cardinal::fin(constants)));
        }
        let nu = match rng.gen_range(0..3) {
            0 => Cardinal::ZERO,
            1 => Cardinal::fin(rng.gen_range(1..=3)),
            _ => a0.clone(),
        };
        let p = KernelProfile::from_triples(a0.clone(), nu, &triples).canonical();
        if p.is_valid() {
            return p;
        }
    }
}

/// `pi ∘ realize(p) ∘ sigma` for random structured permutations: a realization
/// of `p` that differs from the canonical one.
pub fn random_realization(rng: &mut StdRng, p: &KernelProfile, params: PermutationParams) -> Result<ConcreteFunction> {
    let f = realize(p)?;
    let pi = random_structured_permutation(rng.gen(), params)?;
    let sigma = random_structured_permutation(rng.gen(), params)?;
    compose(&pi, &compose(&f, &sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_params_give_identity() {
        let id = random_structured_permutation(99, PermutationParams::IDENTITY).unwrap();
        assert_eq!(id, ConcreteFunction::identity());
    }

    #[test]
    fn swapping_two_residues() {
        let swap = ConcreteFunction::new(vec![], 2, vec![Rule::Affine { base: 1, stride: 2 }, Rule::Affine { base: 0, stride: 2 }]).unwrap();
        assert!(swap.is_permutation());
        assert_eq!(swap.profile().nu, Cardinal::ZERO);
        assert_eq!(swap.profile().value_at(&Cardinal::ONE), Cardinal::ALEPH_0);
    }

    #[test]
    fn seeded_permutations_are_bijective() {
        for seed in 0..50 {
            let a = random_structured_permutation(seed, PermutationParams { prefix: 8, splits: 3 }).unwrap();
            let mut seen = std::collections::HashSet::new();
            for n in 0..3000 {
                assert!(seen.insert(a.apply(n)), "seed {seed} repeats at {n}");
            }
            assert_eq!(a, random_structured_permutation(seed, PermutationParams { prefix: 8, splits: 3 }).unwrap());
        }
    }

    #[test]
    fn random_realizations_certify() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let p = random_realizable_profile(&mut rng, 4);
            let f = random_realization(&mut rng, &p, PermutationParams::default()).unwrap();
            assert_eq!(f.profile(), &p);
        }
    }
}
