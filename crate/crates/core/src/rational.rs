//! Exact extended nonnegative rationals `[0, ∞]`.
//!
//! All quantitative values in the crate (quantale elements, sensitivities,
//! probability masses, transport costs) are exact `BigRational`s, optionally
//! extended with a point at infinity. Multiplication follows the conventions
//! `0 · ∞ = 0` and `c · ∞ = ∞` for `c > 0`.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational in `[0, ∞) ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Finite(BigRational),
    Infinite,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRat::Finite(BigRational::one())
    }

    pub fn from_int(n: u64) -> Self {
        ExtRat::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `p/q`; panics on `q == 0` (construction-time misuse, not input).
    pub fn from_ratio(p: u64, q: u64) -> Self {
        assert!(q != 0, "zero denominator");
        ExtRat::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(r: BigRational) -> Self {
        assert!(!r.is_negative(), "negative rational in ExtRat");
        ExtRat::Finite(r)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinite)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_one())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    /// Numeric comparison; `∞` is greater than every finite value.
    pub fn cmp_num(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Infinite, ExtRat::Infinite) => Ordering::Equal,
            (ExtRat::Infinite, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Finite(_), ExtRat::Infinite) => Ordering::Less,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
        }
    }

    /// Extended addition: `x + ∞ = ∞`.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinite,
        }
    }

    /// Extended multiplication: `0 · ∞ = 0`, `c · ∞ = ∞` for `c > 0`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ExtRat::zero();
        }
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a * b),
            _ => ExtRat::Infinite,
        }
    }

    /// Truncated subtraction `max(self − other, 0)`; `∞ − c = ∞`, `c − ∞ = 0`.
    pub fn sub_trunc(&self, other: &Self) -> Self {
        match (self, other) {
            (_, ExtRat::Infinite) => ExtRat::zero(),
            (ExtRat::Infinite, ExtRat::Finite(_)) => ExtRat::Infinite,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                if a <= b {
                    ExtRat::zero()
                } else {
                    ExtRat::Finite(a - b)
                }
            }
        }
    }

    pub fn min_num(&self, other: &Self) -> Self {
        if self.cmp_num(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn max_num(&self, other: &Self) -> Self {
        if self.cmp_num(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Caps the value at 1 (used by the unit-interval carrier).
    pub fn clamp_unit(&self) -> Self {
        self.min_num(&ExtRat::one())
    }

    /// Exact division; `None` when the divisor is zero or both are infinite.
    pub fn div(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (_, ExtRat::Infinite) => {
                if self.is_infinite() {
                    None
                } else {
                    Some(ExtRat::zero())
                }
            }
            (ExtRat::Infinite, ExtRat::Finite(_)) => {
                if other.is_zero() {
                    None
                } else {
                    Some(ExtRat::Infinite)
                }
            }
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                if b.is_zero() {
                    None
                } else {
                    Some(ExtRat::Finite(a / b))
                }
            }
        }
    }

    /// Parses `p/q`, a nonnegative integer, or `inf`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "inf" {
            return Some(ExtRat::Infinite);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().ok()?;
            let q: u64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(ExtRat::from_ratio(p, q))
        } else {
            let n: u64 = s.parse().ok()?;
            Some(ExtRat::from_int(n))
        }
    }

    /// Integer value when the rational is a nonnegative integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            ExtRat::Finite(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Infinite => write!(f, "inf"),
            ExtRat::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Canonical string form (`p/q`, `n`, or `inf`) used by the JSON output.
pub fn display_rational(r: &BigRational) -> String {
    ExtRat::Finite(r.clone()).to_string()
}

/// Parses a plain (finite) nonnegative rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match ExtRat::parse(s)? {
        ExtRat::Finite(r) => Some(r),
        ExtRat::Infinite => None,
    }
}
