use super::{Cardinal, Ordinal};

/// A range of cardinals with independently strict or inclusive ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Cardinal,
    pub hi: Cardinal,
    pub lo_strict: bool,
    pub hi_strict: bool,
}

impl Interval {
    pub fn new(lo: Cardinal, hi: Cardinal, lo_strict: bool, hi_strict: bool) -> Self {
        Interval { lo, hi, lo_strict, hi_strict }
    }

    pub fn closed(lo: Cardinal, hi: Cardinal) -> Self {
        Interval::new(lo, hi, false, false)
    }

    pub fn singleton(x: Cardinal) -> Self {
        Interval::closed(x.clone(), x)
    }

    /// Inclusive lower end: the strict bound is replaced by its successor.
    pub fn least(&self) -> Cardinal {
        if self.lo_strict {
            self.lo.succ()
        } else {
            self.lo.clone()
        }
    }

    pub fn contains(&self, x: &Cardinal) -> bool {
        let above = if self.lo_strict { *x > self.lo } else { *x >= self.lo };
        let below = if self.hi_strict { *x < self.hi } else { *x <= self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        let l = self.least();
        l > self.hi || (l == self.hi && self.hi_strict)
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (a, b) = (self.least(), other.least());
        let lo = a.max(b);
        let (hi, hi_strict) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_strict),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_strict),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_strict || other.hi_strict),
        };
        let out = Interval::new(lo, hi, false, hi_strict);
        (!out.is_empty()).then_some(out)
    }

    /// Number of cardinals in the interval; zero when empty.
    pub fn count(&self) -> Cardinal {
        if self.is_empty() {
            return Cardinal::ZERO;
        }
        let lo = self.least();
        let finite_part = match (&lo, &self.hi) {
            (Cardinal::Aleph(_), _) => Cardinal::ZERO,
            (Cardinal::Finite(l), Cardinal::Finite(h)) => {
                Cardinal::Finite(h - l + u64::from(!self.hi_strict))
            }
            (Cardinal::Finite(_), Cardinal::Aleph(_)) => Cardinal::ALEPH_0,
        };
        let aleph_part = match &self.hi {
            Cardinal::Finite(_) => Cardinal::ZERO,
            Cardinal::Aleph(b) => {
                let a = lo.index().cloned().unwrap_or_else(Ordinal::zero);
                let c = a.left_sub(b).expect("interval ends are ordered");
                match c.as_finite() {
                    Some(n) => Cardinal::Finite(n + u64::from(!self.hi_strict)),
                    None => Cardinal::ALEPH_0,
                }
            }
        };
        finite_part + aleph_part
    }

    /// The cardinal sum of all members.
    pub fn sum(&self) -> Cardinal {
        if self.is_empty() {
            return Cardinal::ZERO;
        }
        let lo = self.least();
        match &self.hi {
            Cardinal::Finite(h) => {
                let l = lo.as_finite().expect("finite upper end");
                let h = if self.hi_strict { h - 1 } else { *h };
                let total = (u128::from(l) + u128::from(h)) * u128::from(h - l + 1) / 2;
                Cardinal::Finite(u64::try_from(total).expect("finite cardinal overflow"))
            }
            Cardinal::Aleph(b) => {
                if !self.hi_strict {
                    return self.hi.clone();
                }
                // Supremum of the members strictly below aleph_b.
                match b.pred() {
                    Some(p) if lo <= Cardinal::Aleph(p.clone()) => Cardinal::Aleph(p),
                    Some(_) => unreachable!("nonempty strict interval below a successor"),
                    None if b.is_zero() => Cardinal::ALEPH_0,
                    None => self.hi.clone(),
                }
            }
        }
    }
}

/// Number of cardinals in a range, as a free function.
pub fn count_cardinals_in(lo: &Cardinal, hi: &Cardinal, lo_strict: bool, hi_strict: bool) -> Cardinal {
    Interval::new(lo.clone(), hi.clone(), lo_strict, hi_strict).count()
}

/// Sum of the cardinals in a closed range.
pub fn sum_of_cardinals_in(lo: &Cardinal, hi: &Cardinal) -> Cardinal {
    Interval::closed(lo.clone(), hi.clone()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> Cardinal {
        Cardinal::fin(n)
    }
    fn aw() -> Cardinal {
        Cardinal::aleph(Ordinal::omega())
    }

    #[test]
    fn counts() {
        assert_eq!(count_cardinals_in(&f(3), &f(7), false, false), f(5));
        assert_eq!(count_cardinals_in(&f(1), &Cardinal::ALEPH_0, false, false), Cardinal::ALEPH_0);
        assert_eq!(count_cardinals_in(&Cardinal::aleph_n(1), &aw(), false, false), Cardinal::ALEPH_0);
        assert_eq!(count_cardinals_in(&Cardinal::aleph_n(1), &Cardinal::aleph_n(4), true, false), f(3));
        assert_eq!(count_cardinals_in(&f(7), &f(3), false, false), f(0));
        assert_eq!(count_cardinals_in(&f(3), &f(3), false, true), f(0));
    }

    #[test]
    fn sums() {
        assert_eq!(sum_of_cardinals_in(&f(2), &f(4)), f(9));
        assert_eq!(sum_of_cardinals_in(&f(1), &Cardinal::ALEPH_0), Cardinal::ALEPH_0);
        assert_eq!(sum_of_cardinals_in(&Cardinal::ALEPH_0, &aw()), aw());
        let below_w = Interval::new(Cardinal::ALEPH_0, aw(), false, true);
        assert_eq!(below_w.sum(), aw());
        let below_3 = Interval::new(f(1), Cardinal::aleph_n(3), false, true);
        assert_eq!(below_3.sum(), Cardinal::aleph_n(2));
        let finite_only = Interval::new(f(1), Cardinal::ALEPH_0, false, true);
        assert_eq!(finite_only.sum(), Cardinal::ALEPH_0);
    }

    #[test]
    fn intersection() {
        let a = Interval::closed(f(1), Cardinal::ALEPH_0);
        let b = Interval::new(f(3), Cardinal::ALEPH_0, true, true);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.least(), f(4));
        assert!(c.hi_strict);
        assert!(a.intersect(&Interval::closed(Cardinal::aleph_n(1), Cardinal::aleph_n(2))).is_none());
    }
}
