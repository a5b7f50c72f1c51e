use std::fmt;
use std::ops::{Add, Mul};

use super::Ordinal;
use crate::error::Error;

/// A finite natural or an aleph indexed by an ordinal below epsilon-zero.
///
/// The derived order puts every `Finite` below every `Aleph`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u64),
    Aleph(Ordinal),
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ONE: Cardinal = Cardinal::Finite(1);
    pub const ALEPH_0: Cardinal = Cardinal::Aleph(Ordinal::zero());

    pub fn fin(n: u64) -> Self {
        Cardinal::Finite(n)
    }

    pub fn aleph(index: Ordinal) -> Self {
        Cardinal::Aleph(index)
    }

    pub fn aleph_n(n: u64) -> Self {
        Cardinal::Aleph(Ordinal::finite(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cardinal::Finite(0))
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(*n),
            Cardinal::Aleph(_) => None,
        }
    }

    pub fn index(&self) -> Option<&Ordinal> {
        match self {
            Cardinal::Aleph(a) => Some(a),
            Cardinal::Finite(_) => None,
        }
    }

    pub fn succ(&self) -> Cardinal {
        match self {
            Cardinal::Finite(n) => Cardinal::Finite(n.checked_add(1).expect("finite cardinal overflow")),
            Cardinal::Aleph(a) => Cardinal::Aleph(a.succ()),
        }
    }

    /// Immediate predecessor cardinal, if there is one.
    pub fn pred(&self) -> Option<Cardinal> {
        match self {
            Cardinal::Finite(0) => None,
            Cardinal::Finite(n) => Some(Cardinal::Finite(n - 1)),
            Cardinal::Aleph(a) => a.pred().map(Cardinal::Aleph),
        }
    }

    /// The cardinality of an ordinal: finite or aleph-zero below epsilon-zero.
    pub fn of_ordinal(a: &Ordinal) -> Cardinal {
        match a.as_finite() {
            Some(n) => Cardinal::Finite(n),
            None => Cardinal::ALEPH_0,
        }
    }

    pub fn cofinality(&self) -> Result<Cardinal, Error> {
        match self {
            Cardinal::Finite(_) => Err(Error::Arithmetic("cofinality undefined for finite cardinals".into())),
            Cardinal::Aleph(a) if a.is_limit() => Ok(Cardinal::ALEPH_0),
            Cardinal::Aleph(_) => Ok(self.clone()),
        }
    }

    pub fn is_regular(&self) -> Result<bool, Error> {
        Ok(self.cofinality()? == *self)
    }

    /// Regularity test that treats finite cardinals as not regular.
    pub fn is_infinite_regular(&self) -> bool {
        match self {
            Cardinal::Finite(_) => false,
            Cardinal::Aleph(a) => !a.is_limit(),
        }
    }
}

impl Add<&Cardinal> for &Cardinal {
    type Output = Cardinal;
    fn add(self, rhs: &Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                Cardinal::Finite(a.checked_add(*b).expect("finite cardinal overflow"))
            }
            _ => self.max(rhs).clone(),
        }
    }
}

impl Add for Cardinal {
    type Output = Cardinal;
    fn add(self, rhs: Cardinal) -> Cardinal {
        &self + &rhs
    }
}

impl Mul<&Cardinal> for &Cardinal {
    type Output = Cardinal;
    fn mul(self, rhs: &Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                Cardinal::Finite(a.checked_mul(*b).expect("finite cardinal overflow"))
            }
            _ if self.is_zero() || rhs.is_zero() => Cardinal::ZERO,
            _ => self.max(rhs).clone(),
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;
    fn mul(self, rhs: Cardinal) -> Cardinal {
        &self * &rhs
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ZERO, |acc, c| acc + c)
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(n)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "fin:{n}"),
            Cardinal::Aleph(a) => write!(f, "aleph({a})"),
        }
    }
}

impl fmt::Debug for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw() -> Cardinal {
        Cardinal::aleph(Ordinal::omega())
    }

    #[test]
    fn addition_and_multiplication() {
        assert_eq!(Cardinal::fin(3) + Cardinal::fin(4), Cardinal::fin(7));
        assert_eq!(Cardinal::ALEPH_0 + Cardinal::fin(5), Cardinal::ALEPH_0);
        assert_eq!(Cardinal::aleph_n(1) + Cardinal::ALEPH_0, Cardinal::aleph_n(1));
        assert_eq!(Cardinal::fin(2) * Cardinal::fin(3), Cardinal::fin(6));
        assert_eq!(Cardinal::ALEPH_0 * Cardinal::ALEPH_0, Cardinal::ALEPH_0);
        assert_eq!(Cardinal::ZERO * Cardinal::aleph_n(2), Cardinal::ZERO);
    }

    #[test]
    fn successor() {
        assert_eq!(Cardinal::fin(4).succ(), Cardinal::fin(5));
        assert_eq!(Cardinal::ALEPH_0.succ(), Cardinal::aleph_n(1));
        assert_eq!(aw().succ(), Cardinal::aleph(Ordinal::omega().succ()));
    }

    #[test]
    fn cofinality_cases() {
        assert_eq!(Cardinal::ALEPH_0.cofinality().unwrap(), Cardinal::ALEPH_0);
        let s = Cardinal::aleph(Ordinal::omega().succ());
        assert_eq!(s.cofinality().unwrap(), s);
        assert_eq!(aw().cofinality().unwrap(), Cardinal::ALEPH_0);
        assert!(Cardinal::fin(3).cofinality().is_err());
        assert!(Cardinal::ALEPH_0.is_regular().unwrap());
        assert!(!aw().is_regular().unwrap());
        let w2 = Cardinal::aleph(Ordinal::monomial(Ordinal::one(), 2));
        assert!(!w2.is_regular().unwrap());
    }

    #[test]
    fn order_puts_finite_first() {
        assert!(Cardinal::fin(u64::MAX) < Cardinal::ALEPH_0);
        assert!(Cardinal::aleph_n(3) < aw());
    }
}
