//! Integer path costs with a distinguished infinity, and exact ratios of costs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// A non-negative path cost in domain units.
///
/// `Cost::INFINITY` is greater than every finite cost and absorbs addition.
/// Adding two finite costs whose sum does not fit is a hard error (panic),
/// never a silent wrap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITY: Cost = Cost(u64::MAX);
    /// Largest representable finite cost.
    pub const MAX_FINITE: Cost = Cost(u64::MAX - 1);

    /// Panics if `value` collides with the infinity sentinel.
    pub fn new(value: u64) -> Cost {
        assert!(value < u64::MAX, "cost {value} collides with infinity");
        Cost(value)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub fn is_infinite(self) -> bool {
        self.0 == u64::MAX
    }

    /// `None` on overflow of two finite costs; infinity is absorbing.
    pub fn checked_add(self, rhs: Cost) -> Option<Cost> {
        if self.is_infinite() || rhs.is_infinite() {
            return Some(Cost::INFINITY);
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v < u64::MAX => Some(Cost(v)),
            _ => None,
        }
    }

    /// Difference of two finite costs with `self >= rhs`.
    pub fn saturating_sub(self, rhs: Cost) -> Cost {
        if self.is_infinite() {
            return Cost::INFINITY;
        }
        Cost(self.0.saturating_sub(rhs.0))
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        self.checked_add(rhs)
            .unwrap_or_else(|| panic!("cost overflow: {} + {}", self.0, rhs.0))
    }
}

impl From<u32> for Cost {
    fn from(v: u32) -> Cost {
        Cost(v as u64)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// An exact non-negative rational `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Ratio {
        assert!(den > 0, "ratio with zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn one() -> Ratio {
        Ratio { num: 1, den: 1 }
    }

    pub fn numer(&self) -> u128 {
        self.num
    }

    pub fn denom(&self) -> u128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Ratio) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        let lhs = self.num.checked_mul(other.den);
        let rhs = other.num.checked_mul(self.den);
        match (lhs, rhs) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_absorbing_and_greatest() {
        assert_eq!(Cost::new(3) + Cost::INFINITY, Cost::INFINITY);
        assert_eq!(Cost::INFINITY + Cost::INFINITY, Cost::INFINITY);
        assert!(Cost::INFINITY > Cost::MAX_FINITE);
        assert_eq!(Cost::INFINITY.to_string(), "inf");
    }

    #[test]
    fn overflow_is_detected() {
        assert_eq!(Cost::MAX_FINITE.checked_add(Cost::new(1)), None);
        assert_eq!(
            Cost::new(u64::MAX - 3).checked_add(Cost::new(2)),
            Some(Cost::new(u64::MAX - 1))
        );
    }

    #[test]
    #[should_panic(expected = "cost overflow")]
    fn overflow_panics_on_add() {
        let _ = Cost::MAX_FINITE + Cost::new(5);
    }

    #[test]
    fn ratios_reduce_and_compare_exactly() {
        let r = Ratio::new(50, 40);
        assert_eq!((r.numer(), r.denom()), (5, 4));
        assert!(Ratio::new(13, 10) < Ratio::new(4, 3));
        assert_eq!(Ratio::new(6, 3), Ratio::new(2, 1));
        assert_eq!(Ratio::new(31, 31).to_string(), "1");
    }
}
