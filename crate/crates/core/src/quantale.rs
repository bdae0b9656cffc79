//! Quantales, Σ-quantale operations, change-of-base endofunctors (CBEs), and
//! the φ/ψ adjunction into the boolean quantale.
//!
//! Every supported quantale is commutative and integral (its unit is the top
//! element). The numeric quantales are read over exact extended nonnegative
//! rationals; note that the Lawvere family is ordered by the *reversed* real
//! order, so its join is the real infimum and its bottom is `∞`.

use crate::error::Error;
use crate::rational::ExtRat;
use crate::Result;
use alloc::format;
use alloc::string::ToString;
use core::fmt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The three left-continuous t-norms we support on `([0,1], ≤)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TNormKind {
    Product,
    Lukasiewicz,
    Goedel,
}

/// The active quantale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantale {
    /// `({false, true}, ≤, ∧, true)`.
    Bool,
    /// `([0, ∞], ≥, +, 0)`.
    Lawvere,
    /// `([0, 1], ≥, + truncated, 0)`.
    UnitInterval,
    /// `([0, ∞], ≥, max, 0)`.
    UltraLawvere,
    /// `([0, 1], ≤, *, 1)` for a t-norm `*`.
    TNorm(TNormKind),
}

impl Quantale {
    /// Selection by name string, as used by the CLI config.
    pub fn from_name(name: &str) -> Result<Quantale> {
        match name {
            "bool" => Ok(Quantale::Bool),
            "lawvere" => Ok(Quantale::Lawvere),
            "unit" => Ok(Quantale::UnitInterval),
            "ultra" => Ok(Quantale::UltraLawvere),
            "tnorm:product" => Ok(Quantale::TNorm(TNormKind::Product)),
            "tnorm:lukasiewicz" => Ok(Quantale::TNorm(TNormKind::Lukasiewicz)),
            "tnorm:goedel" => Ok(Quantale::TNorm(TNormKind::Goedel)),
            other => Err(Error::InvalidConfig(format!("unknown quantale '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Quantale::Bool => "bool",
            Quantale::Lawvere => "lawvere",
            Quantale::UnitInterval => "unit",
            Quantale::UltraLawvere => "ultra",
            Quantale::TNorm(TNormKind::Product) => "tnorm:product",
            Quantale::TNorm(TNormKind::Lukasiewicz) => "tnorm:lukasiewicz",
            Quantale::TNorm(TNormKind::Goedel) => "tnorm:goedel",
        }
    }

    /// True when the carrier is numeric and ordered by the reversed real order.
    fn reversed(&self) -> bool {
        matches!(self, Quantale::Lawvere | Quantale::UnitInterval | Quantale::UltraLawvere)
    }

    /// Validates that `v` lies in the carrier.
    fn in_carrier(&self, v: &ExtRat) -> bool {
        match self {
            Quantale::Bool => false,
            Quantale::Lawvere | Quantale::UltraLawvere => true,
            Quantale::UnitInterval | Quantale::TNorm(_) => {
                v.cmp_num(&ExtRat::one()) != core::cmp::Ordering::Greater
            }
        }
    }

    pub fn elem_bool(&self, b: bool) -> Result<QuantaleElem> {
        match self {
            Quantale::Bool => Ok(QuantaleElem { quantale: *self, repr: Repr::Bool(b) }),
            _ => Err(Error::QuantaleMismatch {
                expected: "bool".to_string(),
                found: self.name().to_string(),
            }),
        }
    }

    pub fn elem_num(&self, v: ExtRat) -> Result<QuantaleElem> {
        if *self == Quantale::Bool {
            return Err(Error::QuantaleMismatch {
                expected: "a numeric quantale".to_string(),
                found: "bool".to_string(),
            });
        }
        if !self.in_carrier(&v) {
            return Err(Error::InvalidConfig(format!(
                "value {v} outside the carrier of quantale {}",
                self.name()
            )));
        }
        Ok(QuantaleElem { quantale: *self, repr: Repr::Num(v) })
    }

    /// The monoid unit `k`; in every supported quantale it is also the top.
    pub fn unit(&self) -> QuantaleElem {
        let repr = match self {
            Quantale::Bool => Repr::Bool(true),
            Quantale::Lawvere | Quantale::UnitInterval | Quantale::UltraLawvere => {
                Repr::Num(ExtRat::zero())
            }
            Quantale::TNorm(_) => Repr::Num(ExtRat::one()),
        };
        QuantaleElem { quantale: *self, repr }
    }

    /// The bottom element.
    pub fn bot(&self) -> QuantaleElem {
        let repr = match self {
            Quantale::Bool => Repr::Bool(false),
            Quantale::Lawvere | Quantale::UltraLawvere => Repr::Num(ExtRat::Infinite),
            Quantale::UnitInterval => Repr::Num(ExtRat::one()),
            Quantale::TNorm(_) => Repr::Num(ExtRat::zero()),
        };
        QuantaleElem { quantale: *self, repr }
    }

    /// The top element (equal to the unit: the quantales here are integral).
    pub fn top(&self) -> QuantaleElem {
        self.unit()
    }

    fn expect_same(&self, e: &QuantaleElem) -> Result<()> {
        if e.quantale == *self {
            Ok(())
        } else {
            Err(Error::QuantaleMismatch {
                expected: self.name().to_string(),
                found: e.quantale.name().to_string(),
            })
        }
    }

    /// Quantale order `a ≤ b`.
    pub fn leq(&self, a: &QuantaleElem, b: &QuantaleElem) -> Result<bool> {
        self.expect_same(a)?;
        self.expect_same(b)?;
        Ok(match (&a.repr, &b.repr) {
            (Repr::Bool(x), Repr::Bool(y)) => !x | y,
            (Repr::Num(x), Repr::Num(y)) => {
                let ord = x.cmp_num(y);
                if self.reversed() {
                    ord != core::cmp::Ordering::Less
                } else {
                    ord != core::cmp::Ordering::Greater
                }
            }
            _ => unreachable!("carrier validated at construction"),
        })
    }

    /// Monoid multiplication `a ⊗ b`.
    pub fn tensor(&self, a: &QuantaleElem, b: &QuantaleElem) -> Result<QuantaleElem> {
        self.expect_same(a)?;
        self.expect_same(b)?;
        let repr = match (self, &a.repr, &b.repr) {
            (Quantale::Bool, Repr::Bool(x), Repr::Bool(y)) => Repr::Bool(*x && *y),
            (Quantale::Lawvere, Repr::Num(x), Repr::Num(y)) => Repr::Num(x.add(y)),
            (Quantale::UnitInterval, Repr::Num(x), Repr::Num(y)) => Repr::Num(x.add(y).clamp_unit()),
            (Quantale::UltraLawvere, Repr::Num(x), Repr::Num(y)) => Repr::Num(x.max_num(y)),
            (Quantale::TNorm(kind), Repr::Num(x), Repr::Num(y)) => Repr::Num(tnorm(*kind, x, y)),
            _ => unreachable!("carrier validated at construction"),
        };
        Ok(QuantaleElem { quantale: *self, repr })
    }

    /// Join of a finite set; the empty join is the bottom element.
    pub fn join<'a, I: IntoIterator<Item = &'a QuantaleElem>>(&self, items: I) -> Result<QuantaleElem> {
        let mut acc = self.bot();
        for e in items {
            self.expect_same(e)?;
            acc = match (&acc.repr, &e.repr) {
                (Repr::Bool(x), Repr::Bool(y)) => self.elem_bool(*x || *y)?,
                (Repr::Num(x), Repr::Num(y)) => {
                    let v = if self.reversed() { x.min_num(y) } else { x.max_num(y) };
                    QuantaleElem { quantale: *self, repr: Repr::Num(v) }
                }
                _ => unreachable!(),
            };
        }
        Ok(acc)
    }

    /// Meet of a finite set; the empty meet is the top (= unit) element.
    pub fn meet<'a, I: IntoIterator<Item = &'a QuantaleElem>>(&self, items: I) -> Result<QuantaleElem> {
        let mut acc = self.top();
        for e in items {
            self.expect_same(e)?;
            acc = match (&acc.repr, &e.repr) {
                (Repr::Bool(x), Repr::Bool(y)) => self.elem_bool(*x && *y)?,
                (Repr::Num(x), Repr::Num(y)) => {
                    let v = if self.reversed() { x.max_num(y) } else { x.min_num(y) };
                    QuantaleElem { quantale: *self, repr: Repr::Num(v) }
                }
                _ => unreachable!(),
            };
        }
        Ok(acc)
    }

    /// Residual `a ⊸ c`: the largest `b` with `a ⊗ b ≤ c`.
    pub fn residual(&self, a: &QuantaleElem, c: &QuantaleElem) -> Result<QuantaleElem> {
        self.expect_same(a)?;
        self.expect_same(c)?;
        let repr = match (self, &a.repr, &c.repr) {
            (Quantale::Bool, Repr::Bool(x), Repr::Bool(y)) => Repr::Bool(!x || *y),
            (Quantale::Lawvere, Repr::Num(x), Repr::Num(y))
            | (Quantale::UnitInterval, Repr::Num(x), Repr::Num(y)) => Repr::Num(y.sub_trunc(x)),
            (Quantale::UltraLawvere, Repr::Num(x), Repr::Num(y)) => {
                // max(a, b) ≥ c needs b = c unless a already reaches c.
                if x.cmp_num(y) != core::cmp::Ordering::Less {
                    Repr::Num(ExtRat::zero())
                } else {
                    Repr::Num(y.clone())
                }
            }
            (Quantale::TNorm(TNormKind::Product), Repr::Num(x), Repr::Num(y)) => {
                if x.cmp_num(y) != core::cmp::Ordering::Greater {
                    Repr::Num(ExtRat::one())
                } else {
                    // a > c ≥ 0 here, so the division is defined.
                    Repr::Num(y.div(x).expect("nonzero divisor"))
                }
            }
            (Quantale::TNorm(TNormKind::Lukasiewicz), Repr::Num(x), Repr::Num(y)) => {
                Repr::Num(ExtRat::one().sub_trunc(x).add(y).clamp_unit())
            }
            (Quantale::TNorm(TNormKind::Goedel), Repr::Num(x), Repr::Num(y)) => {
                if x.cmp_num(y) != core::cmp::Ordering::Greater {
                    Repr::Num(ExtRat::one())
                } else {
                    Repr::Num(y.clone())
                }
            }
            _ => unreachable!("carrier validated at construction"),
        };
        Ok(QuantaleElem { quantale: *self, repr })
    }

    /// Kernel map `φ : V → 2`, sending the unit to `true`, the rest to `false`.
    pub fn phi(&self, a: &QuantaleElem) -> Result<bool> {
        self.expect_same(a)?;
        Ok(*a == self.unit())
    }

    /// Section `ψ : 2 → V`, `true ↦ k`, `false ↦ ⊥`.
    pub fn psi(&self, b: bool) -> QuantaleElem {
        if b {
            self.unit()
        } else {
            self.bot()
        }
    }
}

fn tnorm(kind: TNormKind, x: &ExtRat, y: &ExtRat) -> ExtRat {
    match kind {
        TNormKind::Product => x.mul(y),
        TNormKind::Lukasiewicz => x.add(y).sub_trunc(&ExtRat::one()),
        TNormKind::Goedel => x.min_num(y),
    }
}

/// Internal representation of a quantale element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    Bool(bool),
    Num(ExtRat),
}

/// An element of the active quantale, carrying its quantale tag so that
/// cross-quantale misuse is a typed error rather than silent nonsense.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantaleElem {
    quantale: Quantale,
    repr: Repr,
}

impl QuantaleElem {
    pub fn quantale(&self) -> Quantale {
        self.quantale
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.repr {
            Repr::Bool(b) => Some(b),
            Repr::Num(_) => None,
        }
    }

    pub fn as_num(&self) -> Option<&ExtRat> {
        match &self.repr {
            Repr::Num(v) => Some(v),
            Repr::Bool(_) => None,
        }
    }

    /// Numeric value as a finite rational; `None` for booleans and `∞`.
    pub fn as_finite(&self) -> Option<&BigRational> {
        self.as_num().and_then(|v| v.as_finite())
    }
}

impl fmt::Display for QuantaleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Bool(b) => write!(f, "{b}"),
            Repr::Num(v) => write!(f, "{v}"),
        }
    }
}

/// A change-of-base endofunctor, restricted to the scalar family
/// `{c · −  |  c ∈ [0, ∞]}`. Scalar `0` is the constantly-`k` function,
/// scalar `1` the identity, and scalar `∞` sends everything but `k` to `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cbe {
    scalar: ExtRat,
}

impl Cbe {
    pub fn new(scalar: ExtRat) -> Cbe {
        Cbe { scalar }
    }

    pub fn from_int(n: u64) -> Cbe {
        Cbe { scalar: ExtRat::from_int(n) }
    }

    pub fn zero() -> Cbe {
        Cbe { scalar: ExtRat::zero() }
    }

    pub fn one() -> Cbe {
        Cbe { scalar: ExtRat::one() }
    }

    pub fn infinite() -> Cbe {
        Cbe { scalar: ExtRat::Infinite }
    }

    pub fn scalar(&self) -> &ExtRat {
        &self.scalar
    }

    /// CBE order: `s ≤ r` iff `s(a) ≤ r(a)` for every `a`, which for the
    /// scalar family on the reversed-order quantales means
    /// `scalar(s) ≥ scalar(r)` in the real reading.
    pub fn leq(&self, other: &Cbe) -> bool {
        self.scalar.cmp_num(&other.scalar) != core::cmp::Ordering::Less
    }

    /// Applies the CBE to a quantale element.
    ///
    /// On the Lawvere family this is (truncated) scalar multiplication; on
    /// the boolean quantale scalar `0` is constantly `true` and every other
    /// scalar acts as the identity; on t-norms only integer scalars are
    /// representable (as tensor powers).
    pub fn apply(&self, a: &QuantaleElem) -> Result<QuantaleElem> {
        let q = a.quantale;
        if self.scalar.is_zero() {
            return Ok(q.unit());
        }
        match q {
            Quantale::Bool => Ok(a.clone()),
            Quantale::Lawvere | Quantale::UltraLawvere => {
                let v = a.as_num().expect("numeric carrier");
                q.elem_num(self.scalar.mul(v))
            }
            Quantale::UnitInterval => {
                let v = a.as_num().expect("numeric carrier");
                q.elem_num(self.scalar.mul(v).clamp_unit())
            }
            Quantale::TNorm(_) => {
                if self.scalar.is_infinite() {
                    return Ok(if *a == q.unit() { q.unit() } else { q.bot() });
                }
                let n = self.scalar.as_integer().ok_or_else(|| {
                    Error::CbeUnsupported(format!(
                        "scalar {} is not an integer tensor power on {}",
                        self.scalar,
                        q.name()
                    ))
                })?;
                let mut acc = q.unit();
                let mut i = num_bigint::BigInt::zero();
                while i < n {
                    acc = q.tensor(&acc, a)?;
                    i += 1u32;
                }
                Ok(acc)
            }
        }
    }

    /// Composition `r · s` (first `s`, then `r`): product of scalars.
    ///
    /// On carriers with truncation the scalar product bounds the functional
    /// composite from below in the quantale order (it claims at least as
    /// much amplification), and agrees with it exactly on the untruncated
    /// quantales.
    pub fn compose(&self, inner: &Cbe) -> Cbe {
        Cbe { scalar: self.scalar.mul(&inner.scalar) }
    }

    /// Pointwise tensor `(s ⊗ r)(a) = s(a) ⊗ r(a)`: sum of scalars.
    pub fn tensor(&self, other: &Cbe) -> Cbe {
        Cbe { scalar: self.scalar.add(&other.scalar) }
    }

    /// Pointwise meet `(s ∧ r)(a) = s(a) ∧ r(a)`: max of scalars in the real
    /// reading.
    pub fn meet(&self, other: &Cbe) -> Cbe {
        Cbe { scalar: self.scalar.max_num(&other.scalar) }
    }
}

impl fmt::Display for Cbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)
    }
}

/// Interpretation of a signature operation on the quantale.
///
/// Each variant knows how to act on quantale elements and, when the action is
/// expressible inside the scalar CBE family, on sensitivities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaOpInterp {
    /// Probabilistic choice `p·a + (1−p)·b` on the additive quantales;
    /// plain conjunction on the boolean quantale.
    ProbChoice(BigRational),
    /// Binary meet (nondeterministic choice, state reads).
    Meet2,
    /// Unary identity (state writes).
    Ident1,
    /// n-ary tensor, the generic interpretation available on every quantale.
    TensorN(usize),
    /// n-ary meet.
    MeetN(usize),
    /// Capping at 1 on the Lawvere quantale; a valid Σ-quantale operation
    /// that is *not* expressible as a scalar CBE.
    Cap1,
}

impl SigmaOpInterp {
    pub fn arity(&self) -> usize {
        match self {
            SigmaOpInterp::ProbChoice(_) | SigmaOpInterp::Meet2 => 2,
            SigmaOpInterp::Ident1 | SigmaOpInterp::Cap1 => 1,
            SigmaOpInterp::TensorN(n) | SigmaOpInterp::MeetN(n) => *n,
        }
    }

    fn expect_arity(&self, got: usize) -> Result<()> {
        if self.arity() == got {
            Ok(())
        } else {
            Err(Error::BadOperation(format!(
                "operation expects {} arguments, got {got}",
                self.arity()
            )))
        }
    }

    /// Evaluates the operation on quantale elements.
    pub fn eval(&self, q: Quantale, args: &[QuantaleElem]) -> Result<QuantaleElem> {
        self.expect_arity(args.len())?;
        match self {
            SigmaOpInterp::ProbChoice(p) => match q {
                Quantale::Bool => q.meet(args.iter()),
                Quantale::Lawvere | Quantale::UnitInterval => {
                    let a = args[0].as_num().expect("numeric carrier");
                    let b = args[1].as_num().expect("numeric carrier");
                    let p = ExtRat::from_big(p.clone());
                    let q1 = ExtRat::from_big(BigRational::one() - p.as_finite().unwrap());
                    q.elem_num(p.mul(a).add(&q1.mul(b)))
                }
                _ => Err(Error::BadOperation(format!(
                    "probabilistic choice is not a Σ-quantale operation on {}",
                    q.name()
                ))),
            },
            SigmaOpInterp::Meet2 | SigmaOpInterp::MeetN(_) => q.meet(args.iter()),
            SigmaOpInterp::Ident1 => Ok(args[0].clone()),
            SigmaOpInterp::TensorN(_) => {
                let mut acc = q.unit();
                for a in args {
                    acc = q.tensor(&acc, a)?;
                }
                Ok(acc)
            }
            SigmaOpInterp::Cap1 => {
                if q != Quantale::Lawvere {
                    return Err(Error::BadOperation(
                        "cap is only interpreted on the Lawvere quantale".to_string(),
                    ));
                }
                let v = args[0].as_num().expect("numeric carrier");
                q.elem_num(v.min_num(&ExtRat::one()))
            }
        }
    }

    /// The scalar-family counterpart used on environments: `None` when the
    /// interpretation cannot be expressed as a scalar CBE.
    pub fn scalar_eval(&self, args: &[Cbe]) -> Result<Cbe> {
        self.expect_arity(args.len())?;
        match self {
            SigmaOpInterp::ProbChoice(p) => {
                let p = ExtRat::from_big(p.clone());
                let q1 = ExtRat::from_big(BigRational::one() - p.as_finite().unwrap());
                Ok(Cbe::new(p.mul(args[0].scalar()).add(&q1.mul(args[1].scalar()))))
            }
            SigmaOpInterp::Meet2 | SigmaOpInterp::MeetN(_) => {
                let mut acc = Cbe::zero();
                for c in args {
                    acc = acc.meet(c);
                }
                Ok(acc)
            }
            SigmaOpInterp::Ident1 => Ok(args[0].clone()),
            SigmaOpInterp::TensorN(_) => {
                let mut acc = Cbe::zero();
                for c in args {
                    acc = acc.tensor(c);
                }
                Ok(acc)
            }
            SigmaOpInterp::Cap1 => Err(Error::CbeUnsupported(
                "cap is not expressible as a scalar CBE".to_string(),
            )),
        }
    }

    /// Selection by name string (`"choice:p/q"`, `"meet"`, `"ident"`,
    /// `"tensor:n"`, `"cap"`).
    pub fn from_name(name: &str) -> Result<SigmaOpInterp> {
        if let Some(p) = name.strip_prefix("choice:") {
            let p = crate::rational::parse_rational(p)
                .ok_or_else(|| Error::InvalidConfig(format!("bad probability '{p}'")))?;
            if p <= BigRational::zero() || p >= BigRational::one() {
                return Err(Error::InvalidConfig("probability must lie in (0,1)".to_string()));
            }
            return Ok(SigmaOpInterp::ProbChoice(p));
        }
        if let Some(n) = name.strip_prefix("tensor:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad arity '{n}'")))?;
            return Ok(SigmaOpInterp::TensorN(n));
        }
        match name {
            "meet" => Ok(SigmaOpInterp::Meet2),
            "ident" => Ok(SigmaOpInterp::Ident1),
            "cap" => Ok(SigmaOpInterp::Cap1),
            other => Err(Error::InvalidConfig(format!("unknown Σ-operation '{other}'"))),
        }
    }
}

/// Convenience constructor for unit-interval elements in tests and checks.
pub fn unit_elem(p: u64, q: u64) -> QuantaleElem {
    Quantale::UnitInterval.elem_num(ExtRat::from_ratio(p, q)).expect("in carrier")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(p: u64, q: u64) -> QuantaleElem {
        Quantale::Lawvere.elem_num(ExtRat::from_ratio(p, q)).unwrap()
    }

    #[test]
    fn lawvere_tensor_is_extended_addition() {
        let q = Quantale::Lawvere;
        assert_eq!(q.tensor(&law(1, 2), &law(1, 3)).unwrap(), law(5, 6));
        assert_eq!(q.tensor(&law(1, 2), &q.unit()).unwrap(), law(1, 2));
    }

    #[test]
    fn unit_interval_tensor_truncates() {
        let q = Quantale::UnitInterval;
        let a = q.elem_num(ExtRat::from_ratio(3, 4)).unwrap();
        let b = q.elem_num(ExtRat::from_ratio(1, 2)).unwrap();
        assert_eq!(q.tensor(&a, &b).unwrap(), q.bot());
    }

    #[test]
    fn lawvere_join_is_real_infimum() {
        let q = Quantale::Lawvere;
        let items = [law(1, 2), law(1, 3)];
        assert_eq!(q.join(items.iter()).unwrap(), law(1, 3));
        assert_eq!(q.meet(core::iter::empty()).unwrap(), q.unit());
        assert_eq!(q.join(core::iter::empty()).unwrap(), q.bot());
    }

    #[test]
    fn bool_join_of_false_is_false() {
        let q = Quantale::Bool;
        let f = q.elem_bool(false).unwrap();
        assert_eq!(q.join([f.clone()].iter()).unwrap(), f);
    }

    #[test]
    fn lawvere_residual_is_truncated_subtraction() {
        let q = Quantale::Lawvere;
        assert_eq!(q.residual(&law(1, 3), &law(1, 2)).unwrap(), law(1, 6));
        assert_eq!(q.residual(&law(1, 2), &law(1, 3)).unwrap(), q.unit());
    }

    #[test]
    fn bool_residual_matches_adjunction_by_brute_force() {
        let q = Quantale::Bool;
        let elems = [q.elem_bool(false).unwrap(), q.elem_bool(true).unwrap()];
        for a in &elems {
            for c in &elems {
                let r = q.residual(a, c).unwrap();
                // r is the largest b with a ⊗ b ≤ c.
                for b in &elems {
                    let holds = q.leq(&q.tensor(a, b).unwrap(), c).unwrap();
                    assert_eq!(holds, q.leq(b, &r).unwrap());
                }
            }
        }
        assert_eq!(
            q.residual(&q.elem_bool(true).unwrap(), &q.elem_bool(false).unwrap()).unwrap(),
            q.elem_bool(false).unwrap()
        );
    }

    #[test]
    fn cbe_scalar_action() {
        let q = Quantale::Lawvere;
        let two = Cbe::from_int(2);
        assert_eq!(two.apply(&law(1, 4)).unwrap(), law(1, 2));
        assert_eq!(Cbe::zero().apply(&law(7, 3)).unwrap(), q.unit());
        assert_eq!(Cbe::infinite().apply(&law(1, 4)).unwrap(), q.bot());
        assert_eq!(Cbe::infinite().apply(&q.unit()).unwrap(), q.unit());
        // Bool: 0 is constantly true, anything else the identity.
        let b = Quantale::Bool;
        let f = b.elem_bool(false).unwrap();
        assert_eq!(Cbe::zero().apply(&f).unwrap(), b.unit());
        assert_eq!(Cbe::infinite().apply(&f).unwrap(), f);
    }

    #[test]
    fn cbe_algebra_on_scalars() {
        assert_eq!(Cbe::zero().meet(&Cbe::one()), Cbe::one());
        assert_eq!(Cbe::from_int(2).compose(&Cbe::from_int(3)), Cbe::from_int(6));
        assert_eq!(Cbe::from_int(2).tensor(&Cbe::from_int(3)), Cbe::from_int(5));
        let op = SigmaOpInterp::ProbChoice(BigRational::new(1.into(), 2.into()));
        let combined = op.scalar_eval(&[Cbe::from_int(2), Cbe::from_int(4)]).unwrap();
        assert_eq!(combined, Cbe::from_int(3));
        assert!(SigmaOpInterp::Cap1.scalar_eval(&[Cbe::one()]).is_err());
    }

    #[test]
    fn phi_psi_adjunction() {
        let q = Quantale::Lawvere;
        assert!(q.phi(&q.unit()).unwrap());
        assert!(!q.phi(&law(1, 2)).unwrap());
        assert_eq!(q.psi(false), q.bot());
        assert!(q.phi(&q.psi(true)).unwrap());
        assert!(!q.phi(&q.psi(false)).unwrap());
    }

    #[test]
    fn cross_quantale_use_is_a_typed_error() {
        let law = Quantale::Lawvere.elem_num(ExtRat::from_ratio(1, 2)).unwrap();
        let unit = Quantale::UnitInterval.elem_num(ExtRat::from_ratio(1, 2)).unwrap();
        assert!(matches!(
            Quantale::Lawvere.tensor(&law, &unit),
            Err(crate::Error::QuantaleMismatch { .. })
        ));
        assert!(Quantale::Lawvere.join([law.clone(), unit.clone()].iter()).is_err());
        assert!(Quantale::Lawvere.meet([unit.clone()].iter()).is_err());
        assert!(Quantale::Lawvere.residual(&law, &unit).is_err());
        assert!(Quantale::UnitInterval.elem_num(ExtRat::from_int(2)).is_err());
        assert!(Quantale::Bool.elem_num(ExtRat::zero()).is_err());
        assert!(Quantale::Lawvere.elem_bool(true).is_err());
    }

    #[test]
    fn selection_by_name() {
        for q in [
            Quantale::Bool,
            Quantale::Lawvere,
            Quantale::UnitInterval,
            Quantale::UltraLawvere,
            Quantale::TNorm(TNormKind::Product),
        ] {
            assert_eq!(Quantale::from_name(q.name()).unwrap(), q);
        }
        assert!(Quantale::from_name("euclidean").is_err());
        assert!(matches!(
            SigmaOpInterp::from_name("choice:1/3").unwrap(),
            SigmaOpInterp::ProbChoice(_)
        ));
        assert!(SigmaOpInterp::from_name("choice:2").is_err());
        assert_eq!(SigmaOpInterp::from_name("meet").unwrap(), SigmaOpInterp::Meet2);
    }

    proptest::proptest! {
        #[test]
        fn residuation_adjunction_on_lawvere(
            an in 0u64..60, ad in 1u64..12,
            bn in 0u64..60, bd in 1u64..12,
            cn in 0u64..60, cd in 1u64..12,
        ) {
            let q = Quantale::Lawvere;
            let a = q.elem_num(ExtRat::from_ratio(an, ad)).unwrap();
            let b = q.elem_num(ExtRat::from_ratio(bn, bd)).unwrap();
            let c = q.elem_num(ExtRat::from_ratio(cn, cd)).unwrap();
            let lhs = q.leq(&q.tensor(&a, &b).unwrap(), &c).unwrap();
            let rhs = q.leq(&b, &q.residual(&a, &c).unwrap()).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
