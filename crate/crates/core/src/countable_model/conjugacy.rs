use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::epset::EpSet;
use super::fibers::Fiber;
use super::function::ConcreteFunction;
use crate::error::{Error, Result};

/// Matching data shared by the two witness maps.
struct Shared {
    f: ConcreteFunction,
    g: ConcreteFunction,
    levels_f: BTreeMap<u64, EpSet>,
    levels_g: BTreeMap<u64, EpSet>,
    fibers_f: RefCell<HashMap<u64, Rc<Fiber>>>,
    fibers_g: RefCell<HashMap<u64, Rc<Fiber>>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    F,
    G,
}

impl Shared {
    fn levels(&self, side: Side) -> &BTreeMap<u64, EpSet> {
        match side {
            Side::F => &self.levels_f,
            Side::G => &self.levels_g,
        }
    }

    fn func(&self, side: Side) -> &ConcreteFunction {
        match side {
            Side::F => &self.f,
            Side::G => &self.g,
        }
    }

    fn fiber(&self, side: Side, y: u64) -> Rc<Fiber> {
        let memo = match side {
            Side::F => &self.fibers_f,
            Side::G => &self.fibers_g,
        };
        memo.borrow_mut().entry(y).or_insert_with(|| Rc::new(self.func(side).fiber(y))).clone()
    }

    /// Target matching: the rank of `y` among same-size targets on one side
    /// picks the target of equal rank and size on the other.
    fn target(&self, from: Side, y: u64) -> u64 {
        let to = if from == Side::F { Side::G } else { Side::F };
        let size = self.func(from).table().size(y);
        let rank = self.levels(from)[&size].rank(y);
        self.levels(to)[&size].select(rank).expect("equal profiles give equinumerous level sets")
    }

    /// Point matching: `n` goes to the member of the same rank in the matched fiber.
    fn point(&self, from: Side, n: u64) -> u64 {
        let to = if from == Side::F { Side::G } else { Side::F };
        let y = self.func(from).apply(n);
        let rank = self.fiber(from, y).rank(n);
        let z = self.target(from, y);
        self.fiber(to, z).select(rank).expect("matched fibers have equal size")
    }
}

#[derive(Clone, Copy)]
enum Role {
    /// Targets of g onto targets of f.
    Beta,
    /// Points of f's domain onto points of g's domain.
    Gamma,
}

/// A bijection of the natural numbers evaluated on demand and memoized.
/// Not thread-safe: keep each witness on one worker.
pub struct LazyBijection {
    shared: Rc<Shared>,
    role: Role,
    memo: RefCell<HashMap<u64, u64>>,
}

impl LazyBijection {
    pub fn apply(&self, n: u64) -> u64 {
        if let Some(&v) = self.memo.borrow().get(&n) {
            return v;
        }
        let v = match self.role {
            Role::Beta => self.shared.target(Side::G, n),
            Role::Gamma => self.shared.point(Side::F, n),
        };
        self.memo.borrow_mut().insert(n, v);
        v
    }

    pub fn apply_inverse(&self, n: u64) -> u64 {
        match self.role {
            Role::Beta => self.shared.target(Side::F, n),
            Role::Gamma => self.shared.point(Side::G, n),
        }
    }
}

/// `beta`, `gamma` with `f = beta ∘ g ∘ gamma`.
pub struct ConjugacyWitness {
    pub beta: LazyBijection,
    pub gamma: LazyBijection,
}

fn levels(f: &ConcreteFunction) -> BTreeMap<u64, EpSet> {
    f.table().sizes().into_iter().map(|s| (s, f.level_set(s))).collect()
}

/// Matches kernel classes of equal size smallest-first, and non-range points likewise.
pub fn conjugacy_witness(f: &ConcreteFunction, g: &ConcreteFunction) -> Result<ConjugacyWitness> {
    if f.profile() != g.profile() {
        let mut what = Vec::new();
        if f.profile().nu != g.profile().nu {
            what.push("nu");
        }
        if f.profile().segments != g.profile().segments {
            what.push("segments");
        }
        return Err(Error::Precondition(format!(
            "kernel profiles differ ({}): {} vs {}",
            what.join(", "),
            f.profile(),
            g.profile()
        )));
    }
    let (levels_f, levels_g) = (levels(f), levels(g));
    for (size, a) in &levels_f {
        if levels_g.get(size).map(EpSet::len) != Some(a.len()) {
            return Err(Error::Invariant(format!("level sets of size {size} differ despite equal profiles")));
        }
    }
    let shared = Rc::new(Shared {
        f: f.clone(),
        g: g.clone(),
        levels_f,
        levels_g,
        fibers_f: RefCell::default(),
        fibers_g: RefCell::default(),
    });
    let mk = |role| LazyBijection { shared: shared.clone(), role, memo: RefCell::default() };
    Ok(ConjugacyWitness { beta: mk(Role::Beta), gamma: mk(Role::Gamma) })
}

impl ConjugacyWitness {
    /// Checks `f(n) = beta(g(gamma(n)))` and the inverse round trips for all `n < horizon`.
    pub fn verify(&self, horizon: u64) -> Result<()> {
        let s = &self.beta.shared;
        for n in 0..horizon {
            let m = self.gamma.apply(n);
            let lhs = s.f.apply(n);
            let rhs = self.beta.apply(s.g.apply(m));
            if lhs != rhs {
                return Err(Error::Invariant(format!("witness fails at {n}: f = {lhs}, beta(g(gamma)) = {rhs}")));
            }
            if self.gamma.apply_inverse(m) != n || self.beta.apply_inverse(self.beta.apply(n)) != n {
                return Err(Error::Invariant(format!("witness maps are not inverse-consistent at {n}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::countable_model::function::{compose, Rule};
    use crate::countable_model::random::{random_structured_permutation, PermutationParams};

    #[test]
    fn identical_functions() {
        let f = ConcreteFunction::new(vec![3, 3], 2, vec![Rule::Constant(1), Rule::Affine { base: 4, stride: 3 }]).unwrap();
        let w = conjugacy_witness(&f, &f).unwrap();
        w.verify(2000).unwrap();
        for n in 0..200 {
            assert_eq!(w.gamma.apply(n), n);
        }
    }

    #[test]
    fn two_realizations_of_one_profile() {
        let halve = ConcreteFunction::new(vec![], 2, vec![Rule::Affine { base: 0, stride: 1 }; 2]).unwrap();
        let pi = random_structured_permutation(5, PermutationParams::default()).unwrap();
        let sigma = random_structured_permutation(6, PermutationParams::default()).unwrap();
        let g = compose(&pi, &compose(&halve, &sigma).unwrap()).unwrap();
        assert_ne!(g, halve);
        conjugacy_witness(&halve, &g).unwrap().verify(10_000).unwrap();
    }

    #[test]
    fn differing_nu_is_rejected() {
        let h = ConcreteFunction::linear(2, 0);
        let id = ConcreteFunction::identity();
        match conjugacy_witness(&h, &id) {
            Err(Error::Precondition(m)) => assert!(m.contains("nu")),
            other => panic!("{:?}", other.err()),
        }
    }
}
