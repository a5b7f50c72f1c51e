use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// An ordinal below epsilon-zero in Cantor normal form.
///
/// Terms are `(exponent, coefficient)` pairs with strictly decreasing
/// exponents and positive coefficients. The empty list is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub const fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `w^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `w^e * k`; zero when `k == 0`.
    pub fn monomial(e: Ordinal, k: u64) -> Self {
        if k == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(e, k)] }
        }
    }

    /// Builds an ordinal from terms already in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, Error> {
        for (i, (e, k)) in terms.iter().enumerate() {
            if *k == 0 {
                return Err(Error::Ordinal(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(Error::Ordinal(format!(
                    "exponents not strictly decreasing at term {i}"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, k)] if e.is_zero() => Some(*k),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Trailing finite part: `self = limit_part + n`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, k)) if e.is_zero() => *k,
            _ => 0,
        }
    }

    /// `self` with its trailing finite part removed (zero or a limit).
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if matches!(terms.last(), Some((e, _)) if e.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a last term");
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Ordinal sum `self + other` (absorbing on the left).
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_k)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = *lead_k;
        for (e, k) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *k)),
                Ordering::Equal => {
                    merged = merged.checked_add(*k).expect("ordinal coefficient overflow");
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), merged));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// Left subtraction: for `self <= other`, the unique `c` with `self + c == other`.
    pub fn left_sub(&self, other: &Ordinal) -> Option<Ordinal> {
        if self > other {
            return None;
        }
        for (i, (eb, kb)) in other.terms.iter().enumerate() {
            let Some((ea, ka)) = self.terms.get(i) else {
                return Some(Ordinal { terms: other.terms[i..].to_vec() });
            };
            match ea.cmp(eb) {
                Ordering::Less => return Some(Ordinal { terms: other.terms[i..].to_vec() }),
                Ordering::Equal if ka < kb => {
                    let mut terms = vec![(eb.clone(), kb - ka)];
                    terms.extend(other.terms[i + 1..].iter().cloned());
                    return Some(Ordinal { terms });
                }
                Ordering::Equal if ka == kb => continue,
                // self > other at this term, excluded above
                _ => return None,
            }
        }
        Some(Ordinal::zero())
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ka), (eb, kb)) in self.terms.iter().zip(other.terms.iter()) {
            match ea.cmp(eb).then(ka.cmp(kb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{k}")?;
                continue;
            }
            f.write_str("w")?;
            if *e != Ordinal::one() {
                f.write_str("^")?;
                write_exponent(f, e)?;
            }
            if *k != 1 {
                write!(f, "*{k}")?;
            }
        }
        Ok(())
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Ordinal) -> fmt::Result {
    match e.terms.as_slice() {
        [(inner, 1)] if !inner.is_zero() => write!(f, "{e}"),
        _ if e.is_finite() => write!(f, "{e}"),
        _ => write!(f, "({e})"),
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Ordinal {
        Ordinal::omega()
    }
    fn n(k: u64) -> Ordinal {
        Ordinal::finite(k)
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(w().cmp(&w()), Ordering::Equal);
        assert!(w().add(&n(1)) < Ordinal::monomial(Ordinal::one(), 2));
        assert!(Ordinal::omega_pow(w()) > Ordinal::monomial(Ordinal::one(), 5));
    }

    #[test]
    fn addition_absorbs() {
        assert_eq!(n(1).add(&w()), w());
        assert_eq!(w().add(&n(1)).to_string(), "w + 1");
        let a = Ordinal::monomial(Ordinal::one(), 2).add(&n(3));
        assert_eq!(a.add(&w()), Ordinal::monomial(Ordinal::one(), 3));
    }

    #[test]
    fn left_subtraction() {
        let a = w().add(&n(2));
        let b = Ordinal::monomial(Ordinal::one(), 2).add(&n(5));
        let c = a.left_sub(&b).unwrap();
        assert_eq!(a.add(&c), b);
        assert_eq!(c, w().add(&n(5)));
        assert_eq!(n(3).left_sub(&w()).unwrap(), w());
        assert_eq!(w().left_sub(&n(3)), None);
    }

    #[test]
    fn pred_and_parts() {
        let a = w().add(&n(2));
        assert_eq!(a.pred().unwrap(), w().add(&n(1)));
        assert_eq!(w().pred(), None);
        assert_eq!(a.finite_part(), 2);
        assert_eq!(a.limit_part(), w());
        assert!(w().is_limit());
        assert!(!Ordinal::zero().is_limit());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Ordinal::omega_pow(w()).to_string(), "w^w");
        assert_eq!(Ordinal::omega_pow(w().add(&n(1))).to_string(), "w^(w + 1)");
        assert_eq!(Ordinal::monomial(n(2), 3).to_string(), "w^2*3");
        assert_eq!(Ordinal::omega_pow(Ordinal::omega_pow(n(2))).to_string(), "w^w^2");
    }

    #[test]
    fn from_terms_rejects_bad_order() {
        assert!(Ordinal::from_terms(vec![(n(0), 1), (n(1), 1)]).is_err());
        assert!(Ordinal::from_terms(vec![(n(1), 0)]).is_err());
    }
}
