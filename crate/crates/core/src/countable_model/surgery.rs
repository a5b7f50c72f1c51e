//! The `f ∘ alpha ∘ f` constructions used to show that each condition is necessary.

use serde::Serialize;

use super::epset::{extend_to_permutation, matching, EpSet};
use super::fibers::INFINITE;
use super::function::{compose, ConcreteFunction};
use crate::error::{Error, Result};
use crate::ordinal_cardinal::Cardinal;

/// The permutation used and the resulting `f ∘ alpha ∘ f`.
#[derive(Clone, Debug)]
pub struct SurgeryOutcome {
    pub alpha: ConcreteFunction,
    pub result: ConcreteFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Surgery {
    CollapseToConstant,
    RaiseMin,
    SquareMin,
    DropFiniteClass,
}

impl Surgery {
    pub const ALL: [Surgery; 4] = [Surgery::CollapseToConstant, Surgery::RaiseMin, Surgery::SquareMin, Surgery::DropFiniteClass];

    pub fn name(self) -> &'static str {
        match self {
            Surgery::CollapseToConstant => "collapse-to-constant",
            Surgery::RaiseMin => "raise-min",
            Surgery::SquareMin => "square-min",
            Surgery::DropFiniteClass => "drop-finite-class",
        }
    }

    pub fn parse(s: &str) -> Option<Surgery> {
        Surgery::ALL.into_iter().find(|x| x.name() == s)
    }
}

fn sandwich(f: &ConcreteFunction, alpha: ConcreteFunction) -> Result<SurgeryOutcome> {
    let result = compose(f, &compose(&alpha, f)?)?;
    Ok(SurgeryOutcome { alpha, result })
}

/// Least class size, as a fiber size ([`INFINITE`] for aleph(0)).
fn min_size(f: &ConcreteFunction) -> u64 {
    f.table().sizes().into_iter().find(|&s| s > 0).expect("a function has a nonempty range")
}

fn fin(s: u64) -> Cardinal {
    if s == INFINITE { Cardinal::ALEPH_0 } else { Cardinal::fin(s) }
}

fn is_constant(f: &ConcreteFunction) -> bool {
    f.range().len() == Some(1)
}

/// Small range: map the range into one infinite fiber, making `f ∘ alpha ∘ f` constant.
pub fn surgery_collapse_to_constant(f: &ConcreteFunction) -> Result<SurgeryOutcome> {
    let range = f.range();
    let Some(r) = range.len() else {
        return Err(Error::Hypothesis("range of f is large (infinite)".into()));
    };
    let y = f.level_set(INFINITE).select(0).expect("a finite range forces an infinite fiber");
    let target = EpSet::finite(&[y]).preimage(f)?.take(r);
    let out = sandwich(f, matching(&[(range, target)])?)?;
    if !is_constant(&out.result) {
        return Err(Error::Invariant(format!("collapse did not give a constant: {}", out.result.profile())));
    }
    Ok(out)
}

/// Infinitely many classes above the minimum: `alpha` sends `Y_mu ∪ Z` onto
/// `f^{-1}[Z]` for `Z` the even-indexed part of `Y_{>mu}`; every class of the
/// result is larger than `mu`.
pub fn surgery_raise_min(f: &ConcreteFunction) -> Result<SurgeryOutcome> {
    let mu = min_size(f);
    let t = f.table();
    let above = EpSet::from_fn(t.threshold(), t.period(), |y| t.size(y) > mu)?;
    if above.is_finite() {
        return Err(Error::Hypothesis(format!("rho = {} is not aleph(0)", above.len().unwrap_or(0))));
    }
    let z = above.even_indexed();
    let dom = f.level_set(mu).union(&z);
    let out = sandwich(f, matching(&[(dom, z.preimage(f)?)])?)?;
    let mu_g = min_size(&out.result);
    if mu_g <= mu {
        return Err(Error::Invariant(format!("raise_min left mu at {} (was {})", fin(mu_g), fin(mu))));
    }
    Ok(out)
}

/// Finite `mu > 1` with `s(mu) = aleph(0)`: `alpha` sends `S` onto `f^{-1}[S]`
/// for `S` the even-indexed part of `Y_mu`, creating infinitely many classes of size `mu^2`.
pub fn surgery_square_min(f: &ConcreteFunction) -> Result<SurgeryOutcome> {
    let mu = min_size(f);
    if mu == INFINITE || mu < 2 {
        return Err(Error::Hypothesis(format!("mu = {} is not a finite size above 1", fin(mu))));
    }
    let level = f.level_set(mu);
    if level.is_finite() {
        return Err(Error::Hypothesis(format!("s(mu) = {} is not aleph(0)", level.len().unwrap_or(0))));
    }
    let s = level.even_indexed();
    let out = sandwich(f, matching(&[(s.clone(), s.preimage(f)?)])?)?;
    let sq = Cardinal::fin(mu * mu);
    if out.result.profile().value_at(&sq) != Cardinal::ALEPH_0 {
        return Err(Error::Invariant(format!("square_min gave s({sq}) = {}", out.result.profile().value_at(&sq))));
    }
    Ok(out)
}

/// `mu = 1`, `s(1) = s(n) = aleph(0)`, `nu = 0`, no classes of size strictly
/// between 1 and `n`: each `y` in `Y_n` goes into its own fiber and is joined by
/// one point of `Z ⊆ Y_1`, so no class of size `n` survives.
pub fn surgery_drop_finite_class(f: &ConcreteFunction, n: u64) -> Result<SurgeryOutcome> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("n = {n} must satisfy 1 < n < aleph(0)")));
    }
    let p = f.profile();
    let a0 = Cardinal::ALEPH_0;
    if min_size(f) != 1 || p.value_at(&Cardinal::ONE) != a0 {
        return Err(Error::Hypothesis("needs mu = 1 and s(1) = aleph(0)".into()));
    }
    if p.value_at(&Cardinal::fin(n)) != a0 {
        return Err(Error::Hypothesis(format!("s({n}) = {} is not aleph(0)", p.value_at(&Cardinal::fin(n)))));
    }
    if !p.nu.is_zero() {
        return Err(Error::Hypothesis(format!("s({n}) = aleph(0) > nu needs nu zero or infinite; nu = {}", p.nu)));
    }
    if let Some(i) = (2..n).find(|&i| !p.value_at(&Cardinal::fin(i)).is_zero()) {
        return Err(Error::Hypothesis(format!("s({i}) > nu = 0 for 1 < {i} < {n}; use the least such n")));
    }
    let yn = f.level_set(n);
    let z = f.level_set(1).even_indexed();
    let first = f.fiber_pick(0)?;
    let second = compose(&f.fiber_pick(1)?, &compose(&yn.select_map()?, &z.rank_map()?)?)?;
    let alpha = extend_to_permutation(vec![(yn, first), (z, second)])?;
    let out = sandwich(f, alpha)?;
    let left = out.result.profile().value_at(&Cardinal::fin(n));
    if left > p.nu {
        return Err(Error::Invariant(format!("drop_finite_class left s({n}) = {left} > nu = {}", p.nu)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::countable_model::function::Rule;
    use crate::countable_model::realize::realize;
    use crate::kernel_sequence::KernelProfile;

    fn a0() -> Cardinal {
        Cardinal::ALEPH_0
    }

    fn sizes(nu: Cardinal, t: &[(u64, Cardinal)], infinite: u64) -> ConcreteFunction {
        let mut triples: Vec<_> = t.iter().map(|(s, v)| (Cardinal::fin(*s), Cardinal::fin(*s), v.clone())).collect();
        if infinite > 0 {
            triples.push((a0(), a0(), Cardinal::fin(infinite)));
        }
        realize(&KernelProfile::from_triples(a0(), nu, &triples)).unwrap()
    }

    #[test]
    fn collapse_examples() {
        let f = ConcreteFunction::new(vec![1, 1, 1], 1, vec![Rule::Constant(0)]).unwrap();
        let out = surgery_collapse_to_constant(&f).unwrap();
        assert!(out.alpha.is_permutation());
        let c = out.result.apply(0);
        assert!((0..10_000).all(|n| out.result.apply(n) == c));
        assert!(matches!(surgery_collapse_to_constant(&ConcreteFunction::identity()), Err(Error::Hypothesis(_))));
        let k = ConcreteFunction::constant(3);
        assert_eq!(surgery_collapse_to_constant(&k).unwrap().result, k);
    }

    #[test]
    fn raise_min_examples() {
        let f = sizes(Cardinal::ZERO, &[(1, a0()), (2, a0())], 0);
        let out = surgery_raise_min(&f).unwrap();
        assert!(min_size(&out.result) >= 2);
        let g = sizes(Cardinal::ZERO, &[(2, a0()), (3, a0())], 2);
        assert!(min_size(&surgery_raise_min(&g).unwrap().result) > 2);
        assert!(matches!(surgery_raise_min(&ConcreteFunction::constant(0)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn square_min_examples() {
        let halve = ConcreteFunction::new(vec![], 2, vec![Rule::Affine { base: 0, stride: 1 }; 2]).unwrap();
        let out = surgery_square_min(&halve).unwrap();
        assert_eq!(out.result.profile().value_at(&Cardinal::fin(4)), a0());
        assert!(surgery_square_min(&ConcreteFunction::linear(2, 0)).is_err());
        assert!(surgery_square_min(&ConcreteFunction::constant(0)).is_err());
    }

    #[test]
    fn drop_finite_class_examples() {
        let f = sizes(Cardinal::ZERO, &[(1, a0()), (2, a0())], 0);
        let out = surgery_drop_finite_class(&f, 2).unwrap();
        assert_eq!(out.result.profile().value_at(&Cardinal::fin(2)), Cardinal::ZERO);
        assert!(surgery_drop_finite_class(&f, 1).is_err());
        let g = sizes(Cardinal::ZERO, &[(1, a0()), (2, Cardinal::fin(3)), (3, a0())], 0);
        assert!(surgery_drop_finite_class(&g, 2).is_err());
    }
}
