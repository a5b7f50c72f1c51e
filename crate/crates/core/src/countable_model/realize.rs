use super::function::{interpolate, ConcreteFunction};
use crate::error::{Error, Result};
use crate::kernel_sequence::KernelProfile;
use crate::ordinal_cardinal::Cardinal;

/// Why a valid countable profile has no presentation in the carrier class, if it has none.
pub fn unrealizable_reason(p: &KernelProfile) -> Option<String> {
    if p.kappa != Cardinal::ALEPH_0 {
        return Some(format!("kappa = {} is not aleph(0)", p.kappa));
    }
    for s in &p.segments {
        if s.lo.is_finite() && s.hi.is_infinite() {
            return Some(format!("segment [{}, {}] has infinitely many finite class sizes", s.lo, s.hi));
        }
    }
    if p.value_at(&Cardinal::ALEPH_0).is_infinite() {
        return Some("infinitely many infinite classes (s(aleph(0)) = aleph(0)) need a non-affine tail".into());
    }
    None
}

/// A concrete function whose certified profile is exactly `p`.
pub fn realize(p: &KernelProfile) -> Result<ConcreteFunction> {
    if let Some(v) = p.validate().first() {
        return Err(Error::Profile(v.to_string()));
    }
    if let Some(why) = unrealizable_reason(p) {
        return Err(Error::Unrealizable(why));
    }
    let p = p.canonical();
    // (size, count) for finitely many classes, sizes with infinitely many classes,
    // and the number of infinite classes.
    let mut finite_items: Vec<(u64, u64)> = Vec::new();
    let mut repeated: Vec<u64> = Vec::new();
    let mut infinite_classes = 0u64;
    for s in &p.segments {
        let v = &s.value;
        if s.lo.is_infinite() {
            infinite_classes = v.as_finite().expect("checked above");
            continue;
        }
        let (lo, hi) = (s.lo.as_finite().unwrap(), s.hi.as_finite().unwrap());
        for size in lo..=hi {
            match v.as_finite() {
                Some(c) => finite_items.push((size, c)),
                None => repeated.push(size),
            }
        }
    }
    let holes_infinite = p.nu.is_infinite();
    let finite_holes = p.nu.as_finite().unwrap_or(0);
    let mut prefix = Vec::new();
    let mut target = 0u64;
    for &(size, count) in &finite_items {
        for _ in 0..count {
            prefix.extend(std::iter::repeat(target).take(size as usize));
            target += 1;
        }
    }
    let first_constant = target;
    let base = first_constant + infinite_classes + finite_holes;
    let stride = repeated.len() as u64 + holes_infinite as u64;
    let block: u64 = infinite_classes + repeated.iter().sum::<u64>();
    if block == 0 || stride == 0 {
        return Err(Error::Unrealizable("profile has no infinite part to carry the tail".into()));
    }
    let d = prefix.len() as u64;
    let f = interpolate(d, block, |n| {
        if n < d {
            return Ok(prefix[n as usize]);
        }
        let (j, mut r) = ((n - d) / block, (n - d) % block);
        if r < infinite_classes {
            return Ok(first_constant + r);
        }
        r -= infinite_classes;
        for (i, &size) in repeated.iter().enumerate() {
            if r < size {
                return Ok(base + i as u64 + stride * j);
            }
            r -= size;
        }
        unreachable!("residue inside block")
    })?;
    if f.profile() != &p {
        return Err(Error::Invariant(format!("realization certifies {} instead of {}", f.profile(), p)));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a0() -> Cardinal {
        Cardinal::ALEPH_0
    }

    fn prof(nu: Cardinal, t: &[(u64, Option<u64>, Option<u64>)]) -> KernelProfile {
        let c = |x: Option<u64>| x.map_or(a0(), Cardinal::fin);
        let triples: Vec<_> = t.iter().map(|&(lo, hi, v)| (Cardinal::fin(lo), c(hi), c(v))).collect();
        KernelProfile::from_triples(a0(), nu, &triples)
    }

    #[test]
    fn realize_examples() {
        let h = prof(a0(), &[(1, Some(1), None)]);
        let f = realize(&h).unwrap();
        assert_eq!(f, ConcreteFunction::linear(2, 0));
        let c = KernelProfile::from_triples(a0(), a0(), &[(a0(), a0(), Cardinal::ONE)]);
        assert_eq!(realize(&c).unwrap(), ConcreteFunction::constant(0));
        let perm = prof(Cardinal::ZERO, &[(1, Some(1), None)]);
        assert_eq!(realize(&perm).unwrap(), ConcreteFunction::identity());
    }

    #[test]
    fn realize_mixed_profile() {
        let p = KernelProfile::from_triples(
            a0(),
            Cardinal::fin(3),
            &[
                (Cardinal::ONE, Cardinal::ONE, a0()),
                (Cardinal::fin(2), Cardinal::fin(4), Cardinal::fin(2)),
                (Cardinal::fin(5), Cardinal::fin(5), a0()),
                (a0(), a0(), Cardinal::fin(2)),
            ],
        );
        assert_eq!(realize(&p).unwrap().profile(), &p.canonical());
    }

    #[test]
    fn unrealizable_fragments() {
        let i0 = KernelProfile::from_triples(a0(), Cardinal::ZERO, &[(a0(), a0(), a0())]);
        assert!(matches!(realize(&i0), Err(Error::Unrealizable(_))));
        let spread = prof(a0(), &[(1, None, None)]);
        assert!(matches!(realize(&spread), Err(Error::Unrealizable(_))));
        let k1 = Cardinal::aleph_n(1);
        let big = KernelProfile::from_triples(k1.clone(), Cardinal::ZERO, &[(Cardinal::ONE, Cardinal::ONE, k1)]);
        assert!(matches!(realize(&big), Err(Error::Unrealizable(_))));
    }
}
