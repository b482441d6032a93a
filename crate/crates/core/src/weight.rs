//! Exact rational heuristic weights.
//!
//! A weight `w = p/q` orders nodes by the integer key `q·g + p·h`, which sorts
//! identically to `g + w·h` without any rounding.

use std::fmt;
use std::str::FromStr;

use crate::cost::{gcd, Cost, Ratio};
use crate::error::Error;

/// Priority key produced by [`WeightSpec::key`]. `KEY_INFINITY` marks an
/// unreachable or pruned entry.
pub type Key = u128;

pub const KEY_INFINITY: Key = u128::MAX;

/// Heuristic weight `w = p/q` with `p >= q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    p: u64,
    q: u64,
}

impl WeightSpec {
    pub const ONE: WeightSpec = WeightSpec { p: 1, q: 1 };

    /// The fraction is kept as given (100/99 stays 100/99) so that the
    /// integer keys match the caller's scaling exactly.
    pub fn new(p: u64, q: u64) -> Result<WeightSpec, Error> {
        if q == 0 || p == 0 {
            return Err(Error::Weight(format!("{p}/{q}: terms must be positive")));
        }
        if p < q {
            return Err(Error::Weight(format!("{p}/{q} is below 1")));
        }
        Ok(WeightSpec { p, q })
    }

    pub fn integer(w: u64) -> Result<WeightSpec, Error> {
        WeightSpec::new(w, 1)
    }

    /// Heuristic multiplier.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// g multiplier.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_one(&self) -> bool {
        self.p == self.q
    }

    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.p as u128, self.q as u128)
    }

    pub fn as_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `w - 1 = (p - q) / q`.
    pub fn epsilon(&self) -> Ratio {
        Ratio::new((self.p - self.q) as u128, self.q as u128)
    }

    /// Integer priority key `q·g + p·h`. Infinite if either input is.
    ///
    /// Panics on arithmetic overflow.
    pub fn key(&self, g: Cost, h: Cost) -> Key {
        self.try_key(g, h)
            .unwrap_or_else(|| panic!("priority key overflow: g={g}, h={h}, w={self}"))
    }

    pub fn try_key(&self, g: Cost, h: Cost) -> Option<Key> {
        if g.is_infinite() || h.is_infinite() {
            return Some(KEY_INFINITY);
        }
        let a = (self.q as u128).checked_mul(g.value() as u128)?;
        let b = (self.p as u128).checked_mul(h.value() as u128)?;
        a.checked_add(b).filter(|k| *k != KEY_INFINITY)
    }

    /// Key of an unweighted cost `c` on the same scale as [`key`](Self::key),
    /// i.e. `q·c`. Used to compare a goal's `g` against weighted keys.
    pub fn scale(&self, c: Cost) -> Key {
        self.key(c, Cost::ZERO)
    }

    /// Exact test of `cost <= w · reference`.
    pub fn within(&self, cost: Cost, reference: Cost) -> bool {
        if cost.is_infinite() {
            return false;
        }
        if reference.is_infinite() {
            return true;
        }
        (cost.value() as u128) * (self.q as u128) <= (reference.value() as u128) * (self.p as u128)
    }

    /// `max(1, w - step)` for a rational step `a/b`, reduced to lowest terms.
    pub fn decrease(&self, step: Step) -> WeightSpec {
        let (a, b) = (step.num as u128, step.den as u128);
        let lhs = self.p as u128 * b;
        let rhs = a * self.q as u128;
        let den = self.q as u128 * b;
        if lhs <= rhs || lhs - rhs <= den {
            return WeightSpec::ONE;
        }
        let num = lhs - rhs;
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        WeightSpec {
            p: u64::try_from(num).expect("weight numerator overflow"),
            q: u64::try_from(den).expect("weight denominator overflow"),
        }
    }
}

impl Default for WeightSpec {
    fn default() -> WeightSpec {
        WeightSpec::ONE
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

fn parse_fraction(s: &str) -> Result<(u64, u64), Error> {
    let s = s.trim();
    let bad = || Error::Weight(format!("cannot parse {s:?} as P/Q"));
    match s.split_once('/') {
        Some((p, q)) => Ok((
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok((s.parse().map_err(|_| bad())?, 1)),
    }
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<WeightSpec, Error> {
        let (p, q) = parse_fraction(s)?;
        WeightSpec::new(p, q)
    }
}

/// Positive rational amount by which ARA* lowers its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    num: u64,
    den: u64,
}

impl Step {
    pub fn new(num: u64, den: u64) -> Result<Step, Error> {
        if num == 0 || den == 0 {
            return Err(Error::Weight(format!("step {num}/{den} must be positive")));
        }
        Ok(Step { num, den })
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Step, Error> {
        let (n, d) = parse_fraction(s)?;
        Step::new(n, d)
    }
}
