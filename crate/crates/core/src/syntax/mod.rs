//! Syntax of V-Fuzz: types, values, and terms, capture-avoiding substitution,
//! derived forms, and the text-format parser/printer.

mod ast;
mod derived;
mod parser;
mod printer;

pub use ast::{subst_term, subst_value, Name, OpSym, Term, Type, Value};
pub use derived::{
    derived, identity_term, identity_value, nat_type, numeral, numeral_of, omega, omega_fixpoint_type,
    star, unit_type, zero_type, Derived,
};
pub use parser::{parse_term, parse_type, parse_value};
pub use printer::{print_term, print_type, print_value};
