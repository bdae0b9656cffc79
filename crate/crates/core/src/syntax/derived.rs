//! Derived forms: the empty/unit/nat type encodings, numerals, the identity
//! program `I`, and the purely divergent program `Ω` at every closed type.

use super::ast::{Term, Type, Value};
use crate::error::Error;
use crate::quantale::Cbe;
use crate::Result;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

/// The empty sum type `0`.
pub fn zero_type() -> Type {
    Type::Sum(Vec::new())
}

/// `unit = 0 -o 0`.
pub fn unit_type() -> Type {
    Type::lolli(zero_type(), zero_type())
}

/// `nat = mu t. unit + t`.
pub fn nat_type() -> Type {
    Type::mu("t", Type::Sum(vec![unit_type(), Type::Var("t".to_string())]))
}

/// The canonical inhabitant of `unit`: `\x:0. return x`.
pub fn star() -> Value {
    Value::lam("x", zero_type(), Term::Return(Value::var("x")))
}

/// The numeral `n` under the `nat` encoding.
pub fn numeral(n: u64) -> Value {
    let nat = nat_type();
    let unfolded = nat.unfold_mu().expect("nat is a mu type");
    let mut v = Value::inj(0, unfolded.clone(), star());
    v = Value::fold(nat.clone(), v);
    for _ in 0..n {
        v = Value::fold(nat.clone(), Value::inj(1, unfolded.clone(), v));
    }
    v
}

/// Reads a canonical numeral back; `None` when the value is not one.
pub fn numeral_of(v: &Value) -> Option<u64> {
    let mut n = 0u64;
    let mut cur = v;
    loop {
        match cur {
            Value::Fold(_, inner) => match inner.as_ref() {
                Value::Inj(0, _, _) => return Some(n),
                Value::Inj(1, _, rest) => {
                    n += 1;
                    cur = rest;
                }
                _ => return None,
            },
            _ => return None,
        }
    }
}

/// The identity value `\x:T. return x` at `T -o T`.
pub fn identity_value(ty: &Type) -> Value {
    Value::lam("x", ty.clone(), Term::Return(Value::var("x")))
}

/// `I = return (\x:T. return x)`.
pub fn identity_term(ty: &Type) -> Term {
    Term::Return(identity_value(ty))
}

/// The recursion type `mu t. !_inf t -o T` threading `Ω`'s self-application.
pub fn omega_fixpoint_type(ty: &Type) -> Type {
    Type::mu(
        "t",
        Type::lolli(Type::bang(Cbe::infinite(), Type::Var("t".to_string())), ty.clone()),
    )
}

fn omega_combinator(ty: &Type) -> Value {
    let rho = omega_fixpoint_type(ty);
    let arg_ty = Type::bang(Cbe::infinite(), rho.clone());
    // \x: !_inf rho. case! x of !y -> casefold y of fold z -> z !(fold z)
    let body = Term::case_bang(
        Value::var("x"),
        "y",
        Term::case_fold(
            Value::var("y"),
            "z",
            Term::App(
                Value::var("z"),
                Value::bang(Value::fold(rho.clone(), Value::var("z"))),
            ),
        ),
    );
    Value::lam("x", arg_ty, body)
}

/// The purely divergent term `Ω = ω !(fold ω)` of type `T`.
pub fn omega(ty: &Type) -> Term {
    let rho = omega_fixpoint_type(ty);
    let w = omega_combinator(ty);
    Term::App(w.clone(), Value::bang(Value::fold(rho, w)))
}

/// The result of looking up a derived form by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derived {
    Ty(Type),
    Val(Value),
    Tm(Term),
}

/// Name-based lookup used by tooling: `zero-type`, `unit-type`, `nat`,
/// `numeral(n)`, `I(T)`, `Omega(T)` with `T` in the surface type grammar.
pub fn derived(name: &str) -> Result<Derived> {
    match name {
        "zero-type" => return Ok(Derived::Ty(zero_type())),
        "unit-type" => return Ok(Derived::Ty(unit_type())),
        "nat" => return Ok(Derived::Ty(nat_type())),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("numeral(").and_then(|r| r.strip_suffix(')')) {
        let n: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::UnknownDerived(format!("bad numeral '{rest}'")))?;
        return Ok(Derived::Val(numeral(n)));
    }
    if let Some(rest) = name.strip_prefix("I(").and_then(|r| r.strip_suffix(')')) {
        let ty = super::parser::parse_type(rest)?;
        return Ok(Derived::Tm(identity_term(&ty)));
    }
    if let Some(rest) = name.strip_prefix("Omega(").and_then(|r| r.strip_suffix(')')) {
        let ty = super::parser::parse_type(rest)?;
        return Ok(Derived::Tm(omega(&ty)));
    }
    Err(Error::UnknownDerived(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_round_trip() {
        for n in 0..6 {
            assert_eq!(numeral_of(&numeral(n)), Some(n));
        }
        assert_eq!(numeral_of(&star()), None);
    }

    #[test]
    fn numerals_inhabit_nat() {
        for n in 0..5 {
            crate::typing::check_value_judgment(
                &numeral(n),
                &crate::typing::Env::new(),
                &nat_type(),
            )
            .unwrap();
        }
    }

    #[test]
    fn derived_lookup() {
        assert_eq!(derived("nat").unwrap(), Derived::Ty(nat_type()));
        assert_eq!(derived("numeral(2)").unwrap(), Derived::Val(numeral(2)));
        assert!(matches!(derived("I(unit)").unwrap(), Derived::Tm(Term::Return(_))));
        assert!(derived("mystery").is_err());
    }

    #[test]
    fn omega_is_an_application_of_its_combinator() {
        let om = omega(&unit_type());
        match om {
            Term::App(Value::Lam(_, _, _), Value::Bang(inner)) => {
                assert!(matches!(inner.as_ref(), Value::Fold(_, _)));
            }
            other => panic!("unexpected shape: {other:?}"),
        }
    }
}
