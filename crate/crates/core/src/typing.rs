//! Environments with CBE annotations, the environment algebra, and the
//! sensitivity checker.
//!
//! The declarative rules split environments nondeterministically; with scalar
//! CBEs the least per-variable usage exists and is computed bottom-up, so
//! checking is inference plus subsumption: a declared annotation is accepted
//! when it dominates the inferred demand in the real reading.

use crate::error::Error;
use crate::quantale::{Cbe, SigmaOpInterp};
use crate::rational::ExtRat;
use crate::syntax::{Name, OpSym, Term, Type, Value};
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_rational::BigRational;

/// A typing environment: an ordered map from variable names to a CBE
/// annotation and a closed type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Env {
    entries: BTreeMap<Name, (Cbe, Type)>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind(mut self, x: &str, s: Cbe, ty: Type) -> Env {
        self.entries.insert(x.to_string(), (s, ty));
        self
    }

    pub fn get(&self, x: &str) -> Option<&(Cbe, Type)> {
        self.entries.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &(Cbe, Type))> {
        self.entries.iter()
    }

    pub fn scope(&self) -> BTreeMap<Name, Type> {
        self.entries.iter().map(|(x, (_, t))| (x.clone(), t.clone())).collect()
    }

    fn skeleton_check(&self, other: &Env) -> Result<()> {
        for (x, (_, t)) in &self.entries {
            if let Some((_, u)) = other.entries.get(x) {
                if !t.alpha_eq(u) {
                    return Err(Error::CarrierMismatch(format!(
                        "environments disagree on the type of '{x}'"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Scales every annotation: `r · Γ`.
pub fn env_scale(r: &Cbe, g: &Env) -> Env {
    Env {
        entries: g
            .entries
            .iter()
            .map(|(x, (s, t))| (x.clone(), (r.compose(s), t.clone())))
            .collect(),
    }
}

/// Pointwise tensor `Γ ⊗ Δ`; names missing on either side are padded with
/// the scalar-0 CBE (the constant function returning the unit).
pub fn env_tensor(g: &Env, d: &Env) -> Result<Env> {
    g.skeleton_check(d)?;
    let mut entries = g.entries.clone();
    for (x, (s, t)) in &d.entries {
        match entries.get_mut(x) {
            Some((s0, _)) => *s0 = s0.tensor(s),
            None => {
                entries.insert(x.clone(), (s.clone(), t.clone()));
            }
        }
    }
    Ok(Env { entries })
}

/// Pointwise `op_V(Γ¹, …, Γᵐ)` on annotations, with scalar-0 padding.
pub fn env_op(op: &SigmaOpInterp, envs: &[Env]) -> Result<Env> {
    for pair in envs.windows(2) {
        pair[0].skeleton_check(&pair[1])?;
    }
    let mut names: BTreeMap<Name, Type> = BTreeMap::new();
    for g in envs {
        for (x, (_, t)) in &g.entries {
            names.entry(x.clone()).or_insert_with(|| t.clone());
        }
    }
    let mut entries = BTreeMap::new();
    for (x, t) in names {
        let args: Vec<Cbe> = envs
            .iter()
            .map(|g| g.entries.get(&x).map(|(s, _)| s.clone()).unwrap_or_else(Cbe::zero))
            .collect();
        entries.insert(x, (op.scalar_eval(&args)?, t));
    }
    Ok(Env { entries })
}

/// The inferred least per-variable usage of a subject; variables absent from
/// the map have demand 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Demand {
    map: BTreeMap<Name, Cbe>,
}

impl Demand {
    pub fn empty() -> Demand {
        Demand::default()
    }

    fn single(x: &str) -> Demand {
        let mut map = BTreeMap::new();
        map.insert(x.to_string(), Cbe::one());
        Demand { map }
    }

    pub fn get(&self, x: &str) -> Cbe {
        self.map.get(x).cloned().unwrap_or_else(Cbe::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Cbe)> {
        self.map.iter()
    }

    fn insert_nonzero(&mut self, x: Name, s: Cbe) {
        if !s.scalar().is_zero() {
            self.map.insert(x, s);
        }
    }

    fn remove(mut self, x: &str) -> Demand {
        self.map.remove(x);
        self
    }

    fn scale(&self, r: &Cbe) -> Demand {
        let mut out = Demand::empty();
        for (x, s) in &self.map {
            out.insert_nonzero(x.clone(), r.compose(s));
        }
        out
    }

    fn tensor(&self, other: &Demand) -> Demand {
        let mut out = self.clone();
        for (x, s) in &other.map {
            let cur = out.get(x);
            out.map.insert(x.clone(), cur.tensor(s));
        }
        out
    }

    /// Per-variable CBE meet (real max): the least common over-approximation
    /// used to merge case branches.
    fn meet(&self, other: &Demand) -> Demand {
        let mut out = self.clone();
        for (x, s) in &other.map {
            let cur = out.get(x);
            out.map.insert(x.clone(), cur.meet(s));
        }
        out
    }

    fn combine_op(op: &SigmaOpInterp, ds: &[Demand]) -> Result<Demand> {
        let mut names: alloc::collections::BTreeSet<Name> = alloc::collections::BTreeSet::new();
        for d in ds {
            names.extend(d.map.keys().cloned());
        }
        let mut out = Demand::empty();
        for x in names {
            let args: Vec<Cbe> = ds.iter().map(|d| d.get(&x)).collect();
            out.insert_nonzero(x, op.scalar_eval(&args)?);
        }
        Ok(out)
    }
}

/// The Σ-quantale interpretation assigned to each operation symbol: bare
/// choice and reads combine environments by meet, probabilistic choice by the
/// convex combination, writes leave them unchanged.
pub fn op_interp_on_quantale(op: &OpSym) -> SigmaOpInterp {
    match op {
        OpSym::Choice(Some(p)) => SigmaOpInterp::ProbChoice(p.clone()),
        OpSym::Choice(None) | OpSym::Get(_) => SigmaOpInterp::Meet2,
        OpSym::Set0(_) | OpSym::Set1(_) => SigmaOpInterp::Ident1,
    }
}

type Scope = BTreeMap<Name, Type>;

fn type_err(expected: &Type, found: &Type, context: &str) -> Error {
    Error::TypeMismatch {
        expected: crate::syntax::print_type(expected),
        found: crate::syntax::print_type(found),
        context: context.to_string(),
    }
}

fn closed_annotation(ty: &Type) -> Result<()> {
    if ty.is_closed() {
        Ok(())
    } else {
        Err(Error::TypeMismatch {
            expected: "a closed type".to_string(),
            found: crate::syntax::print_type(ty),
            context: "type annotation".to_string(),
        })
    }
}

/// Least `s` with `s · r ≥ demanded` in the real reading. With `r = ∞` and a
/// positive demand every positive `s` works and none is least; the canonical
/// pick is 1 (the linear-fragment reading).
fn divide_demand(demanded: &Cbe, r: &Cbe) -> Result<Cbe> {
    let d = demanded.scalar();
    let r = r.scalar();
    if d.is_zero() {
        return Ok(Cbe::zero());
    }
    if r.is_zero() {
        return Err(Error::SensitivityTooLow {
            var: "<bang contents>".to_string(),
            declared: "0".to_string(),
            demanded: format!("{d}"),
        });
    }
    if r.is_infinite() {
        return Ok(Cbe::one());
    }
    if d.is_infinite() {
        return Ok(Cbe::infinite());
    }
    Ok(Cbe::new(d.div(r).expect("finite positive divisor")))
}

/// Infers the unique syntax-directed type of a value together with its least
/// demand. Bare `!v` synthesizes at sensitivity 1; in checking positions the
/// expected `!_s` annotation supplies `s`.
pub fn infer_value(v: &Value, scope: &Scope) -> Result<(Type, Demand)> {
    match v {
        Value::Var(x) => {
            let ty = scope.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            Ok((ty.clone(), Demand::single(x)))
        }
        Value::Lam(x, ty, body) => {
            closed_annotation(ty)?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty.clone());
            let (body_ty, d) = infer_term(body, &inner)?;
            let dx = d.get(x);
            if !Cbe::one().leq(&dx) {
                return Err(Error::SensitivityTooLow {
                    var: x.clone(),
                    declared: "1".to_string(),
                    demanded: format!("{dx}"),
                });
            }
            Ok((Type::lolli(ty.clone(), body_ty), d.remove(x)))
        }
        Value::Inj(i, sum_ty, w) => {
            closed_annotation(sum_ty)?;
            let Type::Sum(components) = sum_ty else {
                return Err(type_err(&Type::Sum(Vec::new()), sum_ty, "injection annotation"));
            };
            let comp = components.get(*i).ok_or_else(|| {
                Error::BadOperation(format!("injection index {} out of range", i + 1))
            })?;
            let d = check_value(w, scope, comp)?;
            Ok((sum_ty.clone(), d))
        }
        Value::Fold(mu_ty, w) => {
            closed_annotation(mu_ty)?;
            let unfolded = mu_ty.unfold_mu().ok_or_else(|| {
                type_err(&Type::mu("t", Type::Var("t".into())), mu_ty, "fold annotation")
            })?;
            let d = check_value(w, scope, &unfolded)?;
            Ok((mu_ty.clone(), d))
        }
        Value::Bang(w) => {
            let (ty, d) = infer_value(w, scope)?;
            Ok((Type::bang(Cbe::one(), ty), d))
        }
    }
}

/// Checks a value against an expected type, returning the least demand.
pub fn check_value(v: &Value, scope: &Scope, expected: &Type) -> Result<Demand> {
    match (v, expected) {
        (Value::Bang(w), Type::Bang(s, inner)) => {
            let d = check_value(w, scope, inner)?;
            Ok(d.scale(s))
        }
        (Value::Lam(x, ty, body), Type::Lolli(dom, cod)) => {
            closed_annotation(ty)?;
            if !ty.alpha_eq(dom) {
                return Err(type_err(dom, ty, "lambda annotation"));
            }
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty.clone());
            let d = check_term(body, &inner, cod)?;
            let dx = d.get(x);
            if !Cbe::one().leq(&dx) {
                return Err(Error::SensitivityTooLow {
                    var: x.clone(),
                    declared: "1".to_string(),
                    demanded: format!("{dx}"),
                });
            }
            Ok(d.remove(x))
        }
        _ => {
            let (ty, d) = infer_value(v, scope)?;
            if ty.alpha_eq(expected) {
                Ok(d)
            } else {
                Err(type_err(expected, &ty, "value"))
            }
        }
    }
}

/// Infers the unique syntax-directed type of a term with its least demand.
pub fn infer_term(e: &Term, scope: &Scope) -> Result<(Type, Demand)> {
    match e {
        Term::Return(v) => infer_value(v, scope),
        Term::App(v, w) => {
            let (fn_ty, dv) = infer_value(v, scope)?;
            let Type::Lolli(dom, cod) = fn_ty else {
                return Err(type_err(
                    &Type::lolli(Type::Var("a".into()), Type::Var("b".into())),
                    &fn_ty,
                    "application head",
                ));
            };
            let dw = check_value(w, scope, &dom)?;
            Ok((*cod, dv.tensor(&dw)))
        }
        Term::CaseSum(v, branches) => {
            let (scrut_ty, dv) = infer_value(v, scope)?;
            let Type::Sum(components) = &scrut_ty else {
                return Err(type_err(&Type::Sum(Vec::new()), &scrut_ty, "case scrutinee"));
            };
            if components.len() != branches.len() {
                return Err(Error::BadOperation(format!(
                    "case has {} branches for a {}-ary sum",
                    branches.len(),
                    components.len()
                )));
            }
            let mut result: Option<Type> = None;
            let mut merged = Demand::empty();
            let mut s = Cbe::zero();
            for ((x, body), comp) in branches.iter().zip(components) {
                let mut inner = scope.clone();
                inner.insert(x.clone(), comp.clone());
                let (ty, d) = infer_term(body, &inner)?;
                match &result {
                    None => result = Some(ty),
                    Some(t0) => {
                        if !t0.alpha_eq(&ty) {
                            return Err(type_err(t0, &ty, "case branches"));
                        }
                    }
                }
                s = s.meet(&d.get(x));
                merged = merged.meet(&d.remove(x));
            }
            let result = result.expect("at least one branch");
            Ok((result, dv.scale(&s).tensor(&merged)))
        }
        Term::Let(x, e1, e2) => {
            let (ty1, d1) = infer_term(e1, scope)?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty1);
            let (ty2, d2) = infer_term(e2, &inner)?;
            let s = d2.get(x);
            let d = d1.scale(&s.meet(&Cbe::one())).tensor(&d2.remove(x));
            Ok((ty2, d))
        }
        Term::CaseBang(v, x, body) => {
            let (vty, dv) = infer_value(v, scope)?;
            let Type::Bang(r, inner_ty) = &vty else {
                return Err(type_err(
                    &Type::bang(Cbe::one(), Type::Var("a".into())),
                    &vty,
                    "case! scrutinee",
                ));
            };
            let mut inner = scope.clone();
            inner.insert(x.clone(), inner_ty.as_ref().clone());
            let (ty, d) = infer_term(body, &inner)?;
            let s = divide_demand(&d.get(x), r).map_err(|e| match e {
                Error::SensitivityTooLow { demanded, .. } => Error::SensitivityTooLow {
                    var: x.clone(),
                    declared: "0 (from the bang annotation)".to_string(),
                    demanded,
                },
                other => other,
            })?;
            Ok((ty, dv.scale(&s).tensor(&d.remove(x))))
        }
        Term::CaseFold(v, x, body) => {
            let (vty, dv) = infer_value(v, scope)?;
            let unfolded = vty.unfold_mu().ok_or_else(|| {
                type_err(&Type::mu("t", Type::Var("t".into())), &vty, "casefold scrutinee")
            })?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), unfolded);
            let (ty, d) = infer_term(body, &inner)?;
            let s = d.get(x);
            Ok((ty, dv.scale(&s).tensor(&d.remove(x))))
        }
        Term::Op(op, args) => {
            if args.len() != op.arity() {
                return Err(Error::BadOperation(format!(
                    "operation {op} expects {} arguments, got {}",
                    op.arity(),
                    args.len()
                )));
            }
            let mut result: Option<Type> = None;
            let mut demands = Vec::new();
            for a in args {
                let (ty, d) = infer_term(a, scope)?;
                match &result {
                    None => result = Some(ty),
                    Some(t0) => {
                        if !t0.alpha_eq(&ty) {
                            return Err(type_err(t0, &ty, "operation arguments"));
                        }
                    }
                }
                demands.push(d);
            }
            let result = result.expect("positive arity");
            let d = Demand::combine_op(&op_interp_on_quantale(op), &demands)?;
            Ok((result, d))
        }
    }
}

/// Checks a term against an expected type, returning the least demand.
pub fn check_term(e: &Term, scope: &Scope, expected: &Type) -> Result<Demand> {
    match e {
        Term::Return(v) => check_value(v, scope, expected),
        Term::Let(x, e1, e2) => {
            let (ty1, d1) = infer_term(e1, scope)?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty1);
            let d2 = check_term(e2, &inner, expected)?;
            let s = d2.get(x);
            Ok(d1.scale(&s.meet(&Cbe::one())).tensor(&d2.remove(x)))
        }
        Term::CaseBang(v, x, body) => {
            let (vty, dv) = infer_value(v, scope)?;
            let Type::Bang(r, inner_ty) = &vty else {
                return Err(type_err(
                    &Type::bang(Cbe::one(), Type::Var("a".into())),
                    &vty,
                    "case! scrutinee",
                ));
            };
            let mut inner = scope.clone();
            inner.insert(x.clone(), inner_ty.as_ref().clone());
            let d = check_term(body, &inner, expected)?;
            let s = divide_demand(&d.get(x), r).map_err(|e| match e {
                Error::SensitivityTooLow { demanded, .. } => Error::SensitivityTooLow {
                    var: x.clone(),
                    declared: "0 (from the bang annotation)".to_string(),
                    demanded,
                },
                other => other,
            })?;
            Ok(dv.scale(&s).tensor(&d.remove(x)))
        }
        Term::CaseFold(v, x, body) => {
            let (vty, dv) = infer_value(v, scope)?;
            let unfolded = vty.unfold_mu().ok_or_else(|| {
                type_err(&Type::mu("t", Type::Var("t".into())), &vty, "casefold scrutinee")
            })?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), unfolded);
            let d = check_term(body, &inner, expected)?;
            let s = d.get(x);
            Ok(dv.scale(&s).tensor(&d.remove(x)))
        }
        Term::CaseSum(v, branches) => {
            let (scrut_ty, dv) = infer_value(v, scope)?;
            let Type::Sum(components) = &scrut_ty else {
                return Err(type_err(&Type::Sum(Vec::new()), &scrut_ty, "case scrutinee"));
            };
            if components.len() != branches.len() {
                return Err(Error::BadOperation(format!(
                    "case has {} branches for a {}-ary sum",
                    branches.len(),
                    components.len()
                )));
            }
            let mut merged = Demand::empty();
            let mut s = Cbe::zero();
            for ((x, body), comp) in branches.iter().zip(components) {
                let mut inner = scope.clone();
                inner.insert(x.clone(), comp.clone());
                let d = check_term(body, &inner, expected)?;
                s = s.meet(&d.get(x));
                merged = merged.meet(&d.remove(x));
            }
            Ok(dv.scale(&s).tensor(&merged))
        }
        Term::Op(op, args) => {
            if args.len() != op.arity() {
                return Err(Error::BadOperation(format!(
                    "operation {op} expects {} arguments, got {}",
                    op.arity(),
                    args.len()
                )));
            }
            let mut demands = Vec::new();
            for a in args {
                demands.push(check_term(a, scope, expected)?);
            }
            Demand::combine_op(&op_interp_on_quantale(op), &demands)
        }
        Term::App(_, _) => {
            let (ty, d) = infer_term(e, scope)?;
            if ty.alpha_eq(expected) {
                Ok(d)
            } else {
                Err(type_err(expected, &ty, "term"))
            }
        }
    }
}

/// Checks a term against a declared environment and type: inference followed
/// by per-variable subsumption (a declared CBE must dominate the demand in
/// the real reading). Unused declared variables are accepted (weakening).
pub fn check(e: &Term, declared: &Env, declared_ty: &Type) -> Result<()> {
    let scope = declared.scope();
    let d = check_term(e, &scope, declared_ty)?;
    subsume(&d, declared)
}

/// As [`check`] but for values.
pub fn check_value_judgment(v: &Value, declared: &Env, declared_ty: &Type) -> Result<()> {
    let scope = declared.scope();
    let d = check_value(v, &scope, declared_ty)?;
    subsume(&d, declared)
}

fn subsume(demand: &Demand, declared: &Env) -> Result<()> {
    for (x, s) in demand.iter() {
        match declared.get(x) {
            None => return Err(Error::UnboundVariable(x.clone())),
            Some((decl, _)) => {
                if !decl.leq(s) {
                    return Err(Error::SensitivityTooLow {
                        var: x.clone(),
                        declared: format!("{decl}"),
                        demanded: format!("{s}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Canonical-forms witness: a closed well-typed value of arrow type is a
/// lambda, of sum type an injection, of bang type a banged value, of μ type
/// a fold.
pub fn canonical_form(v: &Value, ty: &Type) -> bool {
    match ty {
        Type::Lolli(_, _) => matches!(v, Value::Lam(_, _, _)),
        Type::Sum(_) => matches!(v, Value::Inj(_, _, _)),
        Type::Bang(_, _) => matches!(v, Value::Bang(_)),
        Type::Mu(_, _) => matches!(v, Value::Fold(_, _)),
        Type::Var(_) => false,
    }
}

/// Scalar shorthand used when constructing environments in tests and tools.
pub fn cbe_of_rational(p: u64, q: u64) -> Cbe {
    Cbe::new(ExtRat::from_ratio(p, q))
}

/// Parses an environment annotation scalar such as `2`, `1/2`, `inf`.
pub fn cbe_from_str(s: &str) -> Result<Cbe> {
    ExtRat::parse(s)
        .map(Cbe::new)
        .ok_or_else(|| Error::InvalidConfig(format!("bad sensitivity '{s}'")))
}

/// The probability carried by a choice symbol (fair choice is 1/2).
pub fn choice_probability(op: &OpSym) -> Option<BigRational> {
    match op {
        OpSym::Choice(Some(p)) => Some(p.clone()),
        OpSym::Choice(None) => Some(BigRational::new(1.into(), 2.into())),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{
        identity_term, nat_type, numeral, omega, star, unit_type, zero_type, Term, Value,
    };

    fn ret_var(x: &str) -> Term {
        Term::Return(Value::var(x))
    }

    #[test]
    fn var_rule_demands_one_use() {
        let scope: Scope = [("x".to_string(), nat_type())].into_iter().collect();
        let (ty, d) = infer_term(&ret_var("x"), &scope).unwrap();
        assert!(ty.alpha_eq(&nat_type()));
        assert_eq!(d.get("x"), Cbe::one());
    }

    #[test]
    fn check_respects_subsumption() {
        let e = ret_var("x");
        let ok = Env::new().bind("x", Cbe::one(), nat_type());
        assert!(check(&e, &ok, &nat_type()).is_ok());
        let weak = Env::new().bind("x", Cbe::from_int(5), nat_type());
        assert!(check(&e, &weak, &nat_type()).is_ok());
        let low = Env::new().bind("x", cbe_of_rational(1, 2), nat_type());
        assert!(matches!(check(&e, &low, &nat_type()), Err(Error::SensitivityTooLow { .. })));
    }

    #[test]
    fn unused_let_still_charges_once() {
        // let y = return x in <closed>: the demand on x is max(0,1)·1 = 1.
        let closed = Term::Return(numeral(0));
        let e = Term::let_in("y", ret_var("x"), closed);
        let scope: Scope = [("x".to_string(), nat_type())].into_iter().collect();
        let (_, d) = infer_term(&e, &scope).unwrap();
        assert_eq!(d.get("x"), Cbe::one());
    }

    #[test]
    fn bang_checking_scales_demand() {
        let scope: Scope = [("x".to_string(), nat_type())].into_iter().collect();
        let expected = Type::bang(Cbe::from_int(2), nat_type());
        let d = check_value(&Value::bang(Value::var("x")), &scope, &expected).unwrap();
        assert_eq!(d.get("x"), Cbe::from_int(2));
    }

    #[test]
    fn identity_checks_at_every_sampled_type() {
        for ty in [unit_type(), nat_type(), Type::lolli(nat_type(), nat_type())] {
            let i = identity_term(&ty);
            assert!(check(&i, &Env::new(), &Type::lolli(ty.clone(), ty.clone())).is_ok());
        }
    }

    #[test]
    fn omega_checks_at_every_sampled_type() {
        for ty in [unit_type(), nat_type(), zero_type()] {
            let om = omega(&ty);
            check(&om, &Env::new(), &ty).unwrap();
        }
    }

    #[test]
    fn env_algebra_matches_scalar_arithmetic() {
        let g = Env::new().bind("x", Cbe::from_int(3), nat_type());
        let scaled = env_scale(&Cbe::from_int(2), &g);
        assert_eq!(scaled.get("x").unwrap().0, Cbe::from_int(6));
        let d = Env::new().bind("x", Cbe::from_int(2), nat_type());
        let t = env_tensor(&g, &d).unwrap();
        assert_eq!(t.get("x").unwrap().0, Cbe::from_int(5));
        // Padding with the missing identifier at 0.
        let t = env_tensor(&g, &Env::new()).unwrap();
        assert_eq!(t.get("x").unwrap().0, Cbe::from_int(3));
        let mismatched = Env::new().bind("x", Cbe::one(), unit_type());
        assert!(env_tensor(&g, &mismatched).is_err());
    }

    #[test]
    fn linear_lambda_rejects_double_use() {
        let body = Term::let_in(
            "y",
            Term::App(Value::var("f"), numeral(0)),
            Term::App(Value::var("f"), numeral(0)),
        );
        let lam = Value::lam("f", Type::lolli(nat_type(), nat_type()), body);
        assert!(matches!(infer_value(&lam, &Scope::new()), Err(Error::SensitivityTooLow { .. })));
    }

    #[test]
    fn canonical_forms_by_type_shape() {
        assert!(canonical_form(&numeral(0), &nat_type()));
        assert!(canonical_form(&star(), &unit_type()));
        assert!(!canonical_form(&numeral(0), &unit_type()));
    }
}
