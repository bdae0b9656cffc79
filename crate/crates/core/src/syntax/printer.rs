//! Pretty-printer producing text in the surface grammar; `parse ∘ print` is
//! the identity up to α-equivalence. `unit`, `nat`, and the empty sum print
//! through their surface names.

use super::ast::{Term, Type, Value};
use super::derived::{nat_type, unit_type};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

fn is_unit(ty: &Type) -> bool {
    ty.alpha_eq(&unit_type())
}

fn is_nat(ty: &Type) -> bool {
    ty.alpha_eq(&nat_type())
}

pub fn print_type(ty: &Type) -> String {
    if matches!(ty, Type::Sum(ts) if ts.is_empty()) {
        return "0".into();
    }
    if is_unit(ty) {
        return "unit".into();
    }
    if is_nat(ty) {
        return "nat".into();
    }
    match ty {
        Type::Var(t) => t.clone(),
        Type::Sum(ts) => {
            let items: Vec<String> = ts.iter().map(print_type).collect();
            format!("sum{{{}}}", items.join(", "))
        }
        Type::Lolli(a, b) => {
            let lhs = if matches!(a.as_ref(), Type::Lolli(_, _) | Type::Mu(_, _)) && !is_unit(a) {
                format!("({})", print_type(a))
            } else {
                print_type(a)
            };
            format!("{lhs} -o {}", print_type(b))
        }
        Type::Mu(t, body) => format!("mu {t}. {}", print_type(body)),
        Type::Bang(s, body) => {
            let inner = if matches!(body.as_ref(), Type::Lolli(_, _)) && !is_unit(body) {
                format!("({})", print_type(body))
            } else {
                print_type(body)
            };
            format!("!_{s} {inner}")
        }
    }
}

fn print_value_at(v: &Value, tight: bool) -> String {
    match v {
        Value::Var(x) => x.clone(),
        Value::Lam(x, ty, body) => {
            let s = format!("\\{x}:{}. {}", print_type(ty), print_term(body));
            if tight {
                format!("({s})")
            } else {
                s
            }
        }
        Value::Inj(i, ty, w) => {
            format!("inj_{}[{}] {}", i + 1, print_type(ty), print_value_at(w, true))
        }
        Value::Fold(ty, w) => format!("fold[{}] {}", print_type(ty), print_value_at(w, true)),
        Value::Bang(w) => format!("!{}", print_value_at(w, true)),
    }
}

pub fn print_value(v: &Value) -> String {
    print_value_at(v, false)
}

pub fn print_term(e: &Term) -> String {
    match e {
        Term::Return(v) => format!("return {}", print_value_at(v, true)),
        Term::App(f, a) => format!("{} {}", print_value_at(f, true), print_value_at(a, true)),
        Term::CaseSum(v, branches) => {
            let mut s = format!("case {} of {{", print_value_at(v, true));
            for (i, (x, body)) in branches.iter().enumerate() {
                s.push_str(&format!(" inj_{} {x} -> {};", i + 1, print_term(body)));
            }
            s.push_str(" }");
            s
        }
        Term::Let(x, e1, e2) => {
            format!("let {x} = {} in {}", print_term(e1), print_term(e2))
        }
        Term::CaseBang(v, x, body) => {
            format!("case! {} of !{x} -> {}", print_value_at(v, true), print_term(body))
        }
        Term::CaseFold(v, x, body) => {
            format!("casefold {} of fold {x} -> {}", print_value_at(v, true), print_term(body))
        }
        Term::Op(op, args) => {
            let items: Vec<String> = args.iter().map(print_term).collect();
            format!("{op}({})", items.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::derived::{numeral, omega, unit_type};
    use crate::syntax::parser::{parse_term, parse_type, parse_value};

    #[test]
    fn type_round_trips() {
        for src in ["unit", "nat", "0", "sum{unit, nat}", "(unit -o unit) -o 0", "mu t. sum{unit, !_2 t}"] {
            let t = parse_type(src).unwrap();
            assert!(parse_type(&print_type(&t)).unwrap().alpha_eq(&t), "failed on {src}");
        }
    }

    #[test]
    fn value_round_trips() {
        let vals = [numeral(3), crate::syntax::derived::star()];
        for v in &vals {
            assert!(parse_value(&print_value(v)).unwrap().alpha_eq(v));
        }
    }

    #[test]
    fn omega_round_trips() {
        let om = omega(&unit_type());
        let printed = print_term(&om);
        assert!(parse_term(&printed).unwrap().alpha_eq(&om));
    }
}
