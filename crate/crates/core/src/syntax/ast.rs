//! Abstract syntax and the basic operations on it: free variables,
//! capture-avoiding substitution, type unfolding, and canonical renaming
//! (identity of terms and values is α-equivalence, realized by comparing
//! canonical forms).

use crate::quantale::Cbe;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;

pub type Name = String;

/// Closed types are the indices of the behavioural relations; sums are
/// positional with indices `1..n` at the surface (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Var(Name),
    Sum(Vec<Type>),
    Lolli(Box<Type>, Box<Type>),
    Mu(Name, Box<Type>),
    Bang(Cbe, Box<Type>),
}

impl Type {
    pub fn lolli(a: Type, b: Type) -> Type {
        Type::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(s: Cbe, t: Type) -> Type {
        Type::Bang(s, Box::new(t))
    }

    pub fn mu(t: &str, body: Type) -> Type {
        Type::Mu(t.to_string(), Box::new(body))
    }

    pub fn free_type_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        self.ftv_into(&mut acc, &mut Vec::new());
        acc
    }

    fn ftv_into(&self, acc: &mut BTreeSet<Name>, bound: &mut Vec<Name>) {
        match self {
            Type::Var(t) => {
                if !bound.iter().any(|b| b == t) {
                    acc.insert(t.clone());
                }
            }
            Type::Sum(ts) => ts.iter().for_each(|t| t.ftv_into(acc, bound)),
            Type::Lolli(a, b) => {
                a.ftv_into(acc, bound);
                b.ftv_into(acc, bound);
            }
            Type::Mu(t, body) => {
                bound.push(t.clone());
                body.ftv_into(acc, bound);
                bound.pop();
            }
            Type::Bang(_, t) => t.ftv_into(acc, bound),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_type_vars().is_empty()
    }

    /// Capture-avoiding substitution of `replacement` for the type variable
    /// `var`. Only ever called with closed `replacement` (μ-unfolding).
    pub fn subst(&self, var: &str, replacement: &Type) -> Type {
        match self {
            Type::Var(t) => {
                if t == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Type::Sum(ts) => Type::Sum(ts.iter().map(|t| t.subst(var, replacement)).collect()),
            Type::Lolli(a, b) => Type::lolli(a.subst(var, replacement), b.subst(var, replacement)),
            Type::Mu(t, body) => {
                if t == var {
                    self.clone()
                } else {
                    Type::Mu(t.clone(), Box::new(body.subst(var, replacement)))
                }
            }
            Type::Bang(s, t) => Type::bang(s.clone(), t.subst(var, replacement)),
        }
    }

    /// One-step unfolding `μt.σ ↦ σ[t := μt.σ]`; `None` on non-μ types.
    pub fn unfold_mu(&self) -> Option<Type> {
        match self {
            Type::Mu(t, body) => Some(body.subst(t, self)),
            _ => None,
        }
    }

    /// Canonical form under deterministic renaming of μ-binders; two types
    /// are α-equivalent iff their canonical forms are structurally equal.
    /// Fresh names are chosen to avoid the free type variables, so the
    /// canonical form stays printable and re-parseable.
    pub fn canonical(&self) -> Type {
        fn go(ty: &Type, map: &mut BTreeMap<Name, Name>, names: &mut FreshNames) -> Type {
            match ty {
                Type::Var(t) => Type::Var(map.get(t).cloned().unwrap_or_else(|| t.clone())),
                Type::Sum(ts) => Type::Sum(ts.iter().map(|t| go(t, map, names)).collect()),
                Type::Lolli(a, b) => Type::lolli(go(a, map, names), go(b, map, names)),
                Type::Mu(t, body) => {
                    let fresh = names.next();
                    let shadowed = map.insert(t.clone(), fresh.clone());
                    let body = go(body, map, names);
                    match shadowed {
                        Some(old) => {
                            map.insert(t.clone(), old);
                        }
                        None => {
                            map.remove(t);
                        }
                    }
                    Type::Mu(fresh, Box::new(body))
                }
                Type::Bang(s, t) => Type::bang(s.clone(), go(t, map, names)),
            }
        }
        let mut names = FreshNames::new("t", self.free_type_vars());
        go(self, &mut BTreeMap::new(), &mut names)
    }

    pub fn alpha_eq(&self, other: &Type) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Operation symbols of the signatures supported by the four monads.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpSym {
    /// `op+[p]` (probabilistic choice) or bare `op+` (fair/nondeterministic).
    Choice(Option<BigRational>),
    /// `get[l]`: branch on the bit stored at location `l`.
    Get(Name),
    /// `set0[l]`: store 0 at `l` and continue.
    Set0(Name),
    /// `set1[l]`: store 1 at `l` and continue.
    Set1(Name),
}

impl OpSym {
    pub fn arity(&self) -> usize {
        match self {
            OpSym::Choice(_) | OpSym::Get(_) => 2,
            OpSym::Set0(_) | OpSym::Set1(_) => 1,
        }
    }
}

impl fmt::Display for OpSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSym::Choice(None) => write!(f, "op+"),
            OpSym::Choice(Some(p)) => {
                write!(f, "op+[{}]", crate::rational::display_rational(p))
            }
            OpSym::Get(l) => write!(f, "get[{l}]"),
            OpSym::Set0(l) => write!(f, "set0[{l}]"),
            OpSym::Set1(l) => write!(f, "set1[{l}]"),
        }
    }
}

/// Values of the fine-grained calculus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Var(Name),
    /// `\x:T. e`; binders are annotated so checking is syntax-directed.
    Lam(Name, Type, Box<Term>),
    /// `inj_i[S] v` carrying the full sum type `S` (index stored 0-based).
    Inj(usize, Type, Box<Value>),
    /// `fold[M] v` carrying the μ-type `M`.
    Fold(Type, Box<Value>),
    /// `!v`.
    Bang(Box<Value>),
}

/// Terms (computations) of the fine-grained calculus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Return(Value),
    App(Value, Value),
    /// `case v of { inj_1 x1 -> e1; ... }`, one branch per summand.
    CaseSum(Value, Vec<(Name, Term)>),
    Let(Name, Box<Term>, Box<Term>),
    CaseBang(Value, Name, Box<Term>),
    CaseFold(Value, Name, Box<Term>),
    Op(OpSym, Vec<Term>),
}

impl Value {
    pub fn lam(x: &str, ty: Type, body: Term) -> Value {
        Value::Lam(x.to_string(), ty, Box::new(body))
    }

    pub fn var(x: &str) -> Value {
        Value::Var(x.to_string())
    }

    pub fn inj(i: usize, sum_ty: Type, v: Value) -> Value {
        Value::Inj(i, sum_ty, Box::new(v))
    }

    pub fn fold(mu_ty: Type, v: Value) -> Value {
        Value::Fold(mu_ty, Box::new(v))
    }

    pub fn bang(v: Value) -> Value {
        Value::Bang(Box::new(v))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        fv_value(self, &mut Vec::new(), &mut acc);
        acc
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Canonical α-renaming; see [`Term::canonical`].
    pub fn canonical(&self) -> Value {
        let mut names = FreshNames::new("x", self.free_vars());
        canon_value(self, &mut BTreeMap::new(), &mut names)
    }

    pub fn alpha_eq(&self, other: &Value) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Term {
    pub fn ret(v: Value) -> Term {
        Term::Return(v)
    }

    pub fn let_in(x: &str, e: Term, f: Term) -> Term {
        Term::Let(x.to_string(), Box::new(e), Box::new(f))
    }

    pub fn case_bang(v: Value, x: &str, e: Term) -> Term {
        Term::CaseBang(v, x.to_string(), Box::new(e))
    }

    pub fn case_fold(v: Value, x: &str, e: Term) -> Term {
        Term::CaseFold(v, x.to_string(), Box::new(e))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut acc = BTreeSet::new();
        fv_term(self, &mut Vec::new(), &mut acc);
        acc
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Deterministic renaming of all binders to `x0, x1, ...` in traversal
    /// order (skipping free names). α-equivalent terms have identical
    /// canonical forms, so the canonical form doubles as a memoization key.
    pub fn canonical(&self) -> Term {
        let mut names = FreshNames::new("x", self.free_vars());
        canon_term(self, &mut BTreeMap::new(), &mut names)
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.canonical() == other.canonical()
    }
}

fn fv_value(v: &Value, bound: &mut Vec<Name>, acc: &mut BTreeSet<Name>) {
    match v {
        Value::Var(x) => {
            if !bound.iter().any(|b| b == x) {
                acc.insert(x.clone());
            }
        }
        Value::Lam(x, _, body) => {
            bound.push(x.clone());
            fv_term(body, bound, acc);
            bound.pop();
        }
        Value::Inj(_, _, v) | Value::Fold(_, v) | Value::Bang(v) => fv_value(v, bound, acc),
    }
}

fn fv_term(e: &Term, bound: &mut Vec<Name>, acc: &mut BTreeSet<Name>) {
    match e {
        Term::Return(v) => fv_value(v, bound, acc),
        Term::App(v, w) => {
            fv_value(v, bound, acc);
            fv_value(w, bound, acc);
        }
        Term::CaseSum(v, branches) => {
            fv_value(v, bound, acc);
            for (x, body) in branches {
                bound.push(x.clone());
                fv_term(body, bound, acc);
                bound.pop();
            }
        }
        Term::Let(x, e1, e2) => {
            fv_term(e1, bound, acc);
            bound.push(x.clone());
            fv_term(e2, bound, acc);
            bound.pop();
        }
        Term::CaseBang(v, x, body) | Term::CaseFold(v, x, body) => {
            fv_value(v, bound, acc);
            bound.push(x.clone());
            fv_term(body, bound, acc);
            bound.pop();
        }
        Term::Op(_, args) => args.iter().for_each(|a| fv_term(a, bound, acc)),
    }
}

/// Capture-avoiding substitution of the closed value `u` for `x` in `v`.
/// The evaluator only ever substitutes closed values, so no binder in the
/// subject can capture a variable of `u`; shadowing still stops the walk.
pub fn subst_value(v: &Value, x: &str, u: &Value) -> Value {
    match v {
        Value::Var(y) => {
            if y == x {
                u.clone()
            } else {
                v.clone()
            }
        }
        Value::Lam(y, ty, body) => {
            if y == x {
                v.clone()
            } else {
                Value::Lam(y.clone(), ty.clone(), Box::new(subst_term(body, x, u)))
            }
        }
        Value::Inj(i, ty, w) => Value::Inj(*i, ty.clone(), Box::new(subst_value(w, x, u))),
        Value::Fold(ty, w) => Value::Fold(ty.clone(), Box::new(subst_value(w, x, u))),
        Value::Bang(w) => Value::Bang(Box::new(subst_value(w, x, u))),
    }
}

/// Capture-avoiding substitution of the closed value `u` for `x` in `e`.
pub fn subst_term(e: &Term, x: &str, u: &Value) -> Term {
    match e {
        Term::Return(v) => Term::Return(subst_value(v, x, u)),
        Term::App(v, w) => Term::App(subst_value(v, x, u), subst_value(w, x, u)),
        Term::CaseSum(v, branches) => Term::CaseSum(
            subst_value(v, x, u),
            branches
                .iter()
                .map(|(y, body)| {
                    if y == x {
                        (y.clone(), body.clone())
                    } else {
                        (y.clone(), subst_term(body, x, u))
                    }
                })
                .collect(),
        ),
        Term::Let(y, e1, e2) => {
            let e1 = subst_term(e1, x, u);
            let e2 = if y == x { e2.as_ref().clone() } else { subst_term(e2, x, u) };
            Term::Let(y.clone(), Box::new(e1), Box::new(e2))
        }
        Term::CaseBang(v, y, body) => {
            let v = subst_value(v, x, u);
            let body = if y == x { body.as_ref().clone() } else { subst_term(body, x, u) };
            Term::CaseBang(v, y.clone(), Box::new(body))
        }
        Term::CaseFold(v, y, body) => {
            let v = subst_value(v, x, u);
            let body = if y == x { body.as_ref().clone() } else { subst_term(body, x, u) };
            Term::CaseFold(v, y.clone(), Box::new(body))
        }
        Term::Op(op, args) => {
            Term::Op(op.clone(), args.iter().map(|a| subst_term(a, x, u)).collect())
        }
    }
}

/// Deterministic fresh-name source that skips a set of reserved names
/// (the free variables of the subject), keeping canonical forms printable.
struct FreshNames {
    prefix: &'static str,
    next: usize,
    reserved: BTreeSet<Name>,
}

impl FreshNames {
    fn new(prefix: &'static str, reserved: BTreeSet<Name>) -> FreshNames {
        FreshNames { prefix, next: 0, reserved }
    }

    fn next(&mut self) -> Name {
        loop {
            let candidate = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if !self.reserved.contains(&candidate) {
                return candidate;
            }
        }
    }
}

fn lookup(map: &BTreeMap<Name, Vec<Name>>, x: &Name) -> Option<Name> {
    map.get(x).and_then(|stack| stack.last().cloned())
}

fn with_binder<T>(
    map: &mut BTreeMap<Name, Vec<Name>>,
    names: &mut FreshNames,
    x: &Name,
    f: impl FnOnce(&mut BTreeMap<Name, Vec<Name>>, &mut FreshNames) -> T,
) -> (Name, T) {
    let new = names.next();
    map.entry(x.clone()).or_default().push(new.clone());
    let out = f(map, names);
    map.get_mut(x).expect("just pushed").pop();
    (new, out)
}

fn canon_value(v: &Value, map: &mut BTreeMap<Name, Vec<Name>>, names: &mut FreshNames) -> Value {
    match v {
        Value::Var(x) => Value::Var(lookup(map, x).unwrap_or_else(|| x.clone())),
        Value::Lam(x, ty, body) => {
            let (x2, body) = with_binder(map, names, x, |map, names| canon_term(body, map, names));
            Value::Lam(x2, ty.canonical(), Box::new(body))
        }
        Value::Inj(i, ty, w) => {
            Value::Inj(*i, ty.canonical(), Box::new(canon_value(w, map, names)))
        }
        Value::Fold(ty, w) => Value::Fold(ty.canonical(), Box::new(canon_value(w, map, names))),
        Value::Bang(w) => Value::Bang(Box::new(canon_value(w, map, names))),
    }
}

fn canon_term(e: &Term, map: &mut BTreeMap<Name, Vec<Name>>, names: &mut FreshNames) -> Term {
    match e {
        Term::Return(v) => Term::Return(canon_value(v, map, names)),
        Term::App(v, w) => Term::App(canon_value(v, map, names), canon_value(w, map, names)),
        Term::CaseSum(v, branches) => {
            let v = canon_value(v, map, names);
            let branches = branches
                .iter()
                .map(|(x, body)| {
                    with_binder(map, names, x, |map, names| canon_term(body, map, names))
                })
                .collect();
            Term::CaseSum(v, branches)
        }
        Term::Let(x, e1, e2) => {
            let e1 = canon_term(e1, map, names);
            let (x2, e2) = with_binder(map, names, x, |map, names| canon_term(e2, map, names));
            Term::Let(x2, Box::new(e1), Box::new(e2))
        }
        Term::CaseBang(v, x, body) => {
            let v = canon_value(v, map, names);
            let (x2, body) = with_binder(map, names, x, |map, names| canon_term(body, map, names));
            Term::CaseBang(v, x2, Box::new(body))
        }
        Term::CaseFold(v, x, body) => {
            let v = canon_value(v, map, names);
            let (x2, body) = with_binder(map, names, x, |map, names| canon_term(body, map, names));
            Term::CaseFold(v, x2, Box::new(body))
        }
        Term::Op(op, args) => {
            Term::Op(op.clone(), args.iter().map(|a| canon_term(a, map, names)).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::derived::{unit_type, zero_type};

    fn ret_var(x: &str) -> Term {
        Term::Return(Value::var(x))
    }

    #[test]
    fn substitution_basics() {
        let v = Value::lam("z", unit_type(), ret_var("z"));
        assert_eq!(subst_term(&ret_var("x"), "x", &v), Term::Return(v.clone()));
        assert_eq!(subst_term(&ret_var("y"), "x", &v), ret_var("y"));
        // Shadowing stops substitution.
        let shadow = Term::let_in("x", ret_var("x"), ret_var("x"));
        let out = subst_term(&shadow, "x", &v);
        assert_eq!(out, Term::let_in("x", Term::Return(v), ret_var("x")));
    }

    #[test]
    fn alpha_equivalence_via_canonical_forms() {
        let a = Value::lam("x", unit_type(), ret_var("x"));
        let b = Value::lam("y", unit_type(), ret_var("y"));
        assert!(a.alpha_eq(&b));
        assert_ne!(a, b);
        assert_eq!(a.canonical(), b.canonical());
        let free_a = Value::lam("x", unit_type(), ret_var("w"));
        let free_b = Value::lam("x", unit_type(), ret_var("u"));
        assert!(!free_a.alpha_eq(&free_b));
    }

    #[test]
    fn free_variable_accounting_under_substitution() {
        let e = Term::let_in("y", ret_var("x"), ret_var("y"));
        let closed = Value::lam("z", zero_type(), ret_var("z"));
        let fv_before = e.free_vars();
        assert!(fv_before.contains("x"));
        let after = subst_term(&e, "x", &closed);
        let mut expected = fv_before.clone();
        expected.remove("x");
        assert_eq!(after.free_vars(), expected);
    }

    /// Locally-nameless de Bruijn shadow of the AST, used as an independent
    /// substitution oracle.
    mod debruijn {
        use super::super::*;

        #[derive(Debug, Clone, PartialEq, Eq)]
        pub enum DbValue {
            Bound(usize),
            Free(Name),
            Lam(Box<DbTerm>),
            Inj(usize, Box<DbValue>),
            Fold(Box<DbValue>),
            Bang(Box<DbValue>),
        }

        #[derive(Debug, Clone, PartialEq, Eq)]
        pub enum DbTerm {
            Return(DbValue),
            App(DbValue, DbValue),
            CaseSum(DbValue, Vec<DbTerm>),
            Let(Box<DbTerm>, Box<DbTerm>),
            CaseBang(DbValue, Box<DbTerm>),
            CaseFold(DbValue, Box<DbTerm>),
            Op(OpSym, Vec<DbTerm>),
        }

        fn lookup(stack: &[Name], x: &Name) -> DbValue {
            match stack.iter().rev().position(|b| b == x) {
                Some(i) => DbValue::Bound(i),
                None => DbValue::Free(x.clone()),
            }
        }

        pub fn of_value(v: &Value, stack: &mut Vec<Name>) -> DbValue {
            match v {
                Value::Var(x) => lookup(stack, x),
                Value::Lam(x, _, body) => {
                    stack.push(x.clone());
                    let body = of_term(body, stack);
                    stack.pop();
                    DbValue::Lam(Box::new(body))
                }
                Value::Inj(i, _, w) => DbValue::Inj(*i, Box::new(of_value(w, stack))),
                Value::Fold(_, w) => DbValue::Fold(Box::new(of_value(w, stack))),
                Value::Bang(w) => DbValue::Bang(Box::new(of_value(w, stack))),
            }
        }

        pub fn of_term(e: &Term, stack: &mut Vec<Name>) -> DbTerm {
            match e {
                Term::Return(v) => DbTerm::Return(of_value(v, stack)),
                Term::App(v, w) => DbTerm::App(of_value(v, stack), of_value(w, stack)),
                Term::CaseSum(v, branches) => {
                    let v = of_value(v, stack);
                    let branches = branches
                        .iter()
                        .map(|(x, body)| {
                            stack.push(x.clone());
                            let body = of_term(body, stack);
                            stack.pop();
                            body
                        })
                        .collect();
                    DbTerm::CaseSum(v, branches)
                }
                Term::Let(x, e1, e2) => {
                    let e1 = of_term(e1, stack);
                    stack.push(x.clone());
                    let e2 = of_term(e2, stack);
                    stack.pop();
                    DbTerm::Let(Box::new(e1), Box::new(e2))
                }
                Term::CaseBang(v, x, body) => {
                    let v = of_value(v, stack);
                    stack.push(x.clone());
                    let body = of_term(body, stack);
                    stack.pop();
                    DbTerm::CaseBang(v, Box::new(body))
                }
                Term::CaseFold(v, x, body) => {
                    let v = of_value(v, stack);
                    stack.push(x.clone());
                    let body = of_term(body, stack);
                    stack.pop();
                    DbTerm::CaseFold(v, Box::new(body))
                }
                Term::Op(op, args) => {
                    DbTerm::Op(op.clone(), args.iter().map(|a| of_term(a, stack)).collect())
                }
            }
        }

        /// Substitution of a closed value for a free name: indices never
        /// shift because the substituent has no free variables.
        pub fn subst_v(v: &DbValue, x: &Name, u: &DbValue) -> DbValue {
            match v {
                DbValue::Free(y) if y == x => u.clone(),
                DbValue::Free(_) | DbValue::Bound(_) => v.clone(),
                DbValue::Lam(b) => DbValue::Lam(Box::new(subst_t(b, x, u))),
                DbValue::Inj(i, w) => DbValue::Inj(*i, Box::new(subst_v(w, x, u))),
                DbValue::Fold(w) => DbValue::Fold(Box::new(subst_v(w, x, u))),
                DbValue::Bang(w) => DbValue::Bang(Box::new(subst_v(w, x, u))),
            }
        }

        pub fn subst_t(e: &DbTerm, x: &Name, u: &DbValue) -> DbTerm {
            match e {
                DbTerm::Return(v) => DbTerm::Return(subst_v(v, x, u)),
                DbTerm::App(v, w) => DbTerm::App(subst_v(v, x, u), subst_v(w, x, u)),
                DbTerm::CaseSum(v, bs) => DbTerm::CaseSum(
                    subst_v(v, x, u),
                    bs.iter().map(|b| subst_t(b, x, u)).collect(),
                ),
                DbTerm::Let(a, b) => {
                    DbTerm::Let(Box::new(subst_t(a, x, u)), Box::new(subst_t(b, x, u)))
                }
                DbTerm::CaseBang(v, b) => {
                    DbTerm::CaseBang(subst_v(v, x, u), Box::new(subst_t(b, x, u)))
                }
                DbTerm::CaseFold(v, b) => {
                    DbTerm::CaseFold(subst_v(v, x, u), Box::new(subst_t(b, x, u)))
                }
                DbTerm::Op(op, args) => {
                    DbTerm::Op(op.clone(), args.iter().map(|a| subst_t(a, x, u)).collect())
                }
            }
        }
    }

    #[test]
    fn substitution_agrees_with_de_bruijn_oracle() {
        // (\y. return x) w with x substituted, plus shadowing/let shapes.
        let w = Value::lam("w", unit_type(), ret_var("w"));
        let subjects = alloc::vec![
            Term::App(Value::lam("y", unit_type(), ret_var("x")), Value::var("z")),
            Term::let_in("y", ret_var("x"), ret_var("y")),
            Term::let_in("x", ret_var("x"), ret_var("x")),
            Term::case_bang(Value::bang(Value::var("x")), "x", ret_var("x")),
            Term::Return(Value::lam("x", unit_type(), ret_var("x"))),
        ];
        for e in subjects {
            let named = subst_term(&e, "x", &w);
            let db_direct = debruijn::of_term(&named, &mut Vec::new());
            let db_subst = debruijn::subst_t(
                &debruijn::of_term(&e, &mut Vec::new()),
                &"x".to_string(),
                &debruijn::of_value(&w, &mut Vec::new()),
            );
            assert_eq!(db_direct, db_subst, "on {e:?}");
        }
    }

    #[test]
    fn mu_types_alpha_equal_under_renaming() {
        let a = Type::mu("t", Type::Sum(alloc::vec![unit_type(), Type::Var("t".into())]));
        let b = Type::mu("s", Type::Sum(alloc::vec![unit_type(), Type::Var("s".into())]));
        assert!(a.alpha_eq(&b));
        assert!(a.is_closed());
        let open = Type::mu("t", Type::Var("u".into()));
        assert!(!open.is_closed());
    }

    #[test]
    fn unfolding_nat() {
        let nat = crate::syntax::derived::nat_type();
        let unfolded = nat.unfold_mu().unwrap();
        match unfolded {
            Type::Sum(ts) => {
                assert_eq!(ts.len(), 2);
                assert!(ts[0].alpha_eq(&unit_type()));
                assert!(ts[1].alpha_eq(&nat));
            }
            _ => panic!("nat unfolds to a sum"),
        }
    }
}
