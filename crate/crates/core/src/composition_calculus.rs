//! Upper and lower bounds on the kernel profile of a composition.
//!
//! Throughout, `h = outer ∘ inner`: `inner` is applied first.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel_sequence::KernelProfile;
use crate::ordinal_cardinal::Cardinal;

/// An upper bound: a cardinal, or the bare knowledge that the quantity is finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Cardinal(Cardinal),
    Finite,
}

impl UpperBound {
    /// The sharper of two bounds.
    pub fn meet(self, other: UpperBound) -> UpperBound {
        use UpperBound::*;
        match (self, other) {
            (Cardinal(a), Cardinal(b)) => Cardinal(a.min(b)),
            (Cardinal(a), Finite) | (Finite, Cardinal(a)) if a.is_finite() => Cardinal(a),
            _ => Finite,
        }
    }

    pub fn admits(&self, actual: &Cardinal) -> bool {
        match self {
            UpperBound::Cardinal(c) => actual <= c,
            UpperBound::Finite => actual.is_finite(),
        }
    }

    /// Closure-lemma shape: the bound itself when zero or infinite, else "finite".
    fn from_closure(c: Cardinal) -> UpperBound {
        if c.is_zero() || c.is_infinite() {
            UpperBound::Cardinal(c)
        } else {
            UpperBound::Finite
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Cardinal(c) => write!(f, "{c}"),
            UpperBound::Finite => f.write_str("finite"),
        }
    }
}

impl Serialize for UpperBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Bounds attached to one queried class size `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryBounds {
    pub xi: Cardinal,
    /// Bound on `s_h(xi)`.
    pub upper: UpperBound,
    /// Lower bound on `s_h(xi)` when a lemma applies.
    pub lower: Option<Cardinal>,
    /// Bound on `s_h(>= xi)`, for infinite regular `xi` or `xi <= 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geq_upper: Option<UpperBound>,
    /// Bound on `s_h(> xi)`, for infinite `xi`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_upper: Option<UpperBound>,
    /// Bound on `s_h(> xi, <= nu)` for the relevant `nu`, for infinite `xi`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval_upper: Option<UpperBound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    pub nu_lo: Cardinal,
    pub nu_hi: UpperBound,
    pub queries: Vec<QueryBounds>,
}

fn same_kappa(f: &KernelProfile, g: &KernelProfile) -> Result<()> {
    if f.kappa != g.kappa {
        return Err(Error::KappaMismatch { left: f.kappa.clone(), right: g.kappa.clone() });
    }
    Ok(())
}

/// The `min(nu_inner, s_outer(> xi, <= nu_inner))` term shared by several bounds.
fn overflow_term(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Cardinal {
    inner.nu.clone().min(outer.sum_gt_le(xi, &inner.nu))
}

fn satisfies_nu_condition(p: &KernelProfile) -> bool {
    let mu_finite = p.segments.first().is_some_and(|s| s.lo.is_finite());
    !mu_finite || p.nu.is_zero() || p.nu.is_infinite()
}

pub fn nu_bounds(outer: &KernelProfile, inner: &KernelProfile) -> Result<(Cardinal, Cardinal)> {
    same_kappa(outer, inner)?;
    Ok((outer.nu.clone(), &outer.nu + &inner.nu))
}

/// `s_h(n) <= s_f(n) + s_g(>1, <= n) + min(nu_g, s_f(>n, <= nu_g))` for finite `n`.
pub fn bound_finite(outer: &KernelProfile, inner: &KernelProfile, n: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if n.is_infinite() || n.is_zero() {
        return Err(Error::Precondition(format!("bound_finite needs 1 <= n < aleph(0), got {n}")));
    }
    if !satisfies_nu_condition(inner) {
        return Err(Error::Hypothesis("inner function must satisfy (nu)".into()));
    }
    Ok(&(&outer.value_at(n) + &inner.sum_gt_le(&Cardinal::ONE, n)) + &overflow_term(outer, inner, n))
}

/// `s_h(xi) <= s_f(xi) + s_g(xi) + min(nu_g, s_f(>xi, <= nu_g))` for infinite regular `xi`.
pub fn bound_regular(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if !xi.is_infinite_regular() {
        return Err(Error::Precondition(format!("{xi} is not infinite and regular: use bound_singular/bound_finite")));
    }
    Ok(&(&outer.value_at(xi) + &inner.value_at(xi)) + &overflow_term(outer, inner, xi))
}

/// `s_h(xi) <= s_f(xi) + s_g(>lambda, <= xi) + min(nu_g, s_f(>xi, <= nu_g))` for infinite `xi`, `lambda < xi`.
pub fn bound_singular(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal, lambda: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if xi.is_finite() {
        return Err(Error::Precondition(format!("bound_singular needs infinite xi, got {xi}")));
    }
    if lambda >= xi {
        return Err(Error::Precondition(format!("lambda = {lambda} is not below xi = {xi}")));
    }
    Ok(&(&outer.value_at(xi) + &inner.sum_gt_le(lambda, xi)) + &overflow_term(outer, inner, xi))
}

/// Candidate lambdas for [`bound_singular`]: 1 and the presented points of `inner` below `xi`.
pub fn singular_lambda_candidates(inner: &KernelProfile, xi: &Cardinal) -> Vec<Cardinal> {
    let mut c = vec![Cardinal::ONE];
    for s in &inner.segments {
        c.extend([s.lo.clone(), s.hi.clone()]);
        c.extend(s.lo.pred());
    }
    c.extend(xi.pred());
    c.retain(|l| l < xi && !l.is_zero());
    c.sort();
    c.dedup();
    c
}

/// `s_h(> xi) <= s_f(> xi) + s_g(> xi)` for infinite `xi`.
pub fn bound_tail(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if xi.is_finite() {
        return Err(Error::Hypothesis(format!("tail bound needs infinite xi, got {xi}")));
    }
    Ok(&outer.sum_gt(xi) + &inner.sum_gt(xi))
}

/// `s_h(>= xi) <= s_f(>= xi) + s_g(>= xi)` for infinite regular `xi` or `xi <= 2`.
pub fn bound_geq(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if !(xi.is_infinite_regular() || *xi <= Cardinal::fin(2)) || xi.is_zero() {
        return Err(Error::Precondition(format!("bound_geq needs infinite regular xi or xi <= 2, got {xi}")));
    }
    Ok(&outer.sum_ge(xi) + &inner.sum_ge(xi))
}

/// `s_h(> xi, <= nu_g) <= s_f(> xi, <= nu_g) + s_g(> xi, <= nu_g)` for infinite `xi`.
pub fn bound_interval(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Cardinal> {
    same_kappa(outer, inner)?;
    if xi.is_finite() {
        return Err(Error::Precondition(format!("interval bound needs infinite xi, got {xi}")));
    }
    let nu = &inner.nu;
    Ok(&outer.sum_gt_le(xi, nu) + &inner.sum_gt_le(xi, nu))
}

/// `s_h(xi) >= s_f(xi)` for infinite `xi > nu_g` under the lemma's hypothesis; `None` otherwise.
pub fn lower_beyond_nu(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Option<Cardinal>> {
    same_kappa(outer, inner)?;
    if xi.is_finite() {
        return Err(Error::Precondition(format!("lower_beyond_nu needs infinite xi, got {xi}")));
    }
    if *xi <= inner.nu {
        return Err(Error::Precondition(format!("xi = {xi} is not beyond nu = {}", inner.nu)));
    }
    let at = outer.value_at(xi);
    let above = inner.sum_gt(xi);
    Ok((above.is_zero() || (above < at && at.is_infinite())).then_some(at))
}

/// `s_h(xi) >= s_f(xi)` for infinite `xi <= nu_g` when `s_g(>xi) + nu_g < s_f(xi)` and `s_f(xi)` is infinite.
pub fn lower_below_nu(outer: &KernelProfile, inner: &KernelProfile, xi: &Cardinal) -> Result<Option<Cardinal>> {
    same_kappa(outer, inner)?;
    if xi.is_finite() {
        return Err(Error::Precondition(format!("lower_below_nu needs infinite xi, got {xi}")));
    }
    if *xi > inner.nu {
        return Err(Error::Precondition(format!("xi = {xi} exceeds nu = {}", inner.nu)));
    }
    let at = outer.value_at(xi);
    Ok((&inner.sum_gt(xi) + &inner.nu < at && at.is_infinite()).then_some(at))
}

/// The tightest applicable bounds on `outer ∘ inner` at each queried class size.
pub fn envelope(outer: &KernelProfile, inner: &KernelProfile, queries: &[Cardinal]) -> Result<BoundSet> {
    let (nu_lo, nu_hi) = nu_bounds(outer, inner)?;
    let kappa = &outer.kappa;
    let mut out = Vec::new();
    for xi in queries.iter().filter(|x| !x.is_zero() && *x <= kappa) {
        let mut upper = UpperBound::Cardinal(kappa.clone());
        let mut take = |b: Result<Cardinal>| {
            if let Ok(c) = b {
                upper = upper.clone().meet(UpperBound::Cardinal(c));
            }
        };
        let geq = bound_geq(outer, inner, xi).ok();
        if let Some(b) = &geq {
            take(Ok(b.clone()));
        }
        if xi.is_finite() {
            take(bound_finite(outer, inner, xi));
        } else {
            if xi.is_infinite_regular() {
                take(bound_regular(outer, inner, xi));
            }
            for l in singular_lambda_candidates(inner, xi) {
                take(bound_singular(outer, inner, xi, &l));
            }
        }
        // s_h(xi) <= s_h(> lambda) for every infinite lambda below xi.
        for lam in [&outer.nu, &inner.nu].into_iter().chain(outer.segments.iter().chain(&inner.segments).map(|s| &s.hi)) {
            if lam.is_infinite() && lam < xi {
                take(bound_tail(outer, inner, lam));
            }
        }
        let lower = if xi.is_infinite() {
            if *xi > inner.nu {
                lower_beyond_nu(outer, inner, xi)?
            } else {
                lower_below_nu(outer, inner, xi)?
            }
        } else {
            None
        };
        let (tail_upper, interval_upper) = if xi.is_infinite() {
            (Some(bound_tail(outer, inner, xi)?), Some(bound_interval(outer, inner, xi)?))
        } else {
            (None, None)
        };
        out.push(QueryBounds {
            xi: xi.clone(),
            upper,
            lower,
            geq_upper: geq.map(UpperBound::Cardinal),
            tail_upper: tail_upper.map(UpperBound::Cardinal),
            interval_upper: interval_upper.map(UpperBound::Cardinal),
        });
    }
    Ok(BoundSet { nu_lo, nu_hi: UpperBound::Cardinal(nu_hi), queries: out })
}

/// Bounds valid for every non-permutation `g` generated by `f` together with
/// all permutations, from the one-generator forms of the same lemmas.
pub fn closure_envelope(f: &KernelProfile, queries: &[Cardinal]) -> BoundSet {
    let kappa = &f.kappa;
    let nu = &f.nu;
    let nu_hi = if nu.is_zero() || nu.is_infinite() { UpperBound::Cardinal(nu.clone()) } else { UpperBound::Finite };
    let overflow = |xi: &Cardinal| nu.clone().min(f.sum_gt_le(xi, nu));
    let mut out = Vec::new();
    for xi in queries.iter().filter(|x| !x.is_zero() && *x <= kappa) {
        let mut upper = UpperBound::Cardinal(kappa.clone());
        let geq = (xi.is_infinite_regular() || *xi <= Cardinal::fin(2)).then(|| UpperBound::from_closure(f.sum_ge(xi)));
        if let Some(b) = &geq {
            upper = upper.meet(b.clone());
        }
        if xi.is_finite() {
            if *xi > Cardinal::ONE && satisfies_nu_condition(f) {
                let a = &f.sum_gt_le(&Cardinal::ONE, xi) + &overflow(xi);
                upper = upper.meet(UpperBound::from_closure(a));
            }
        } else {
            if xi.is_infinite_regular() {
                upper = upper.meet(UpperBound::from_closure(&f.value_at(xi) + &overflow(xi)));
            }
            for l in singular_lambda_candidates(f, xi) {
                upper = upper.meet(UpperBound::from_closure(&f.sum_gt_le(&l, xi) + &overflow(xi)));
            }
        }
        for lam in std::iter::once(nu).chain(f.segments.iter().map(|s| &s.hi)) {
            if lam.is_infinite() && lam < xi {
                upper = upper.meet(UpperBound::from_closure(f.sum_gt(lam)));
            }
        }
        let lower = if xi.is_infinite() {
            let at = f.value_at(xi);
            let above = f.sum_gt(xi);
            let applies = if xi > nu {
                above.is_zero() || (above < at && at.is_infinite())
            } else {
                &above + nu < at && at.is_infinite()
            };
            applies.then_some(at)
        } else {
            None
        };
        let (tail_upper, interval_upper) = if xi.is_infinite() {
            (Some(UpperBound::from_closure(f.sum_gt(xi))), Some(UpperBound::from_closure(f.sum_gt_le(xi, nu))))
        } else {
            (None, None)
        };
        out.push(QueryBounds { xi: xi.clone(), upper, lower, geq_upper: geq, tail_upper, interval_upper });
    }
    BoundSet { nu_lo: nu.clone(), nu_hi, queries: out }
}
