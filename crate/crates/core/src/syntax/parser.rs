//! Recursive-descent parser for the UTF-8 text grammar.
//!
//! ```text
//! type  ::= "unit" | "nat" | "0" | tvar | "sum{" type ("," type)* "}"
//!         | type "-o" type | "mu" tvar "." type | "!_" scalar type | "(" type ")"
//! value ::= ident | "\" ident ":" type "." term | "inj_" n "[" type "]" value
//!         | "fold[" type "]" value | "!" value | "(" value ")"
//! term  ::= "return" value | value value
//!         | "case" value "of" "{" ("inj_" n ident "->" term ";")+ "}"
//!         | "let" ident "=" term "in" term
//!         | "case!" value "of" "!" ident "->" term
//!         | "casefold" value "of" "fold" ident "->" term
//!         | opname "(" term ("," term)* ")"
//! ```

use super::ast::{OpSym, Term, Type, Value};
use super::derived::{nat_type, unit_type, zero_type};
use crate::error::Error;
use crate::quantale::Cbe;
use crate::rational::ExtRat;
use crate::Result;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Ratio(u64, u64),
    InjIdx(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Semi,
    Colon,
    Backslash,
    Equals,
    Bang,
    BangUnder,
    LolliArrow,
    BranchArrow,
    OpPlus,
    KwReturn,
    KwCase,
    KwCaseBang,
    KwCaseFold,
    KwLet,
    KwIn,
    KwOf,
    KwFold,
    KwMu,
    KwSum,
    KwUnit,
    KwNat,
    KwInf,
    KwGet,
    KwSet0,
    KwSet1,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Nat(n) => format!("number {n}"),
            Tok::Ratio(p, q) => format!("rational {p}/{q}"),
            Tok::InjIdx(n) => format!("inj_{n}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Semi => "';'".into(),
            Tok::Colon => "':'".into(),
            Tok::Backslash => "'\\'".into(),
            Tok::Equals => "'='".into(),
            Tok::Bang => "'!'".into(),
            Tok::BangUnder => "'!_'".into(),
            Tok::LolliArrow => "'-o'".into(),
            Tok::BranchArrow => "'->'".into(),
            Tok::OpPlus => "'op+'".into(),
            Tok::KwReturn => "'return'".into(),
            Tok::KwCase => "'case'".into(),
            Tok::KwCaseBang => "'case!'".into(),
            Tok::KwCaseFold => "'casefold'".into(),
            Tok::KwLet => "'let'".into(),
            Tok::KwIn => "'in'".into(),
            Tok::KwOf => "'of'".into(),
            Tok::KwFold => "'fold'".into(),
            Tok::KwMu => "'mu'".into(),
            Tok::KwSum => "'sum'".into(),
            Tok::KwUnit => "'unit'".into(),
            Tok::KwNat => "'nat'".into(),
            Tok::KwInf => "'inf'".into(),
            Tok::KwGet => "'get'".into(),
            Tok::KwSet0 => "'set0'".into(),
            Tok::KwSet1 => "'set1'".into(),
        }
    }
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn ident_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().peekable(), line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.chars.peek() == Some(&want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn number(&mut self, first: char) -> core::result::Result<u64, Error> {
        let mut n: u64 = first.to_digit(10).unwrap() as u64;
        while let Some(c) = self.chars.peek().copied() {
            if let Some(d) = c.to_digit(10) {
                self.bump();
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as u64))
                    .ok_or_else(|| self.err("number literal too large"))?;
            } else {
                break;
            }
        }
        Ok(n)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.bump() else { break };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '\\' => Tok::Backslash,
                '=' => Tok::Equals,
                '!' => {
                    if self.eat('_') {
                        Tok::BangUnder
                    } else {
                        Tok::Bang
                    }
                }
                '-' => {
                    if self.eat('o') {
                        Tok::LolliArrow
                    } else if self.eat('>') {
                        Tok::BranchArrow
                    } else {
                        return Err(self.err("expected '-o' or '->'"));
                    }
                }
                c if c.is_ascii_digit() => {
                    let p = self.number(c)?;
                    if self.eat('/') {
                        let Some(d) = self.bump() else {
                            return Err(self.err("expected denominator after '/'"));
                        };
                        if !d.is_ascii_digit() {
                            return Err(self.err("expected denominator after '/'"));
                        }
                        let q = self.number(d)?;
                        if q == 0 {
                            return Err(self.err("zero denominator"));
                        }
                        Tok::Ratio(p, q)
                    } else {
                        Tok::Nat(p)
                    }
                }
                c if ident_start(c) => {
                    let mut s = String::new();
                    s.push(c);
                    while matches!(self.chars.peek(), Some(&c) if ident_cont(c)) {
                        s.push(self.bump().unwrap());
                    }
                    match s.as_str() {
                        "op" if self.chars.peek() == Some(&'+') => {
                            self.bump();
                            Tok::OpPlus
                        }
                        "return" => Tok::KwReturn,
                        "case" => {
                            if self.eat('!') {
                                Tok::KwCaseBang
                            } else {
                                Tok::KwCase
                            }
                        }
                        "casefold" => Tok::KwCaseFold,
                        "let" => Tok::KwLet,
                        "in" => Tok::KwIn,
                        "of" => Tok::KwOf,
                        "fold" => Tok::KwFold,
                        "mu" => Tok::KwMu,
                        "sum" => Tok::KwSum,
                        "unit" => Tok::KwUnit,
                        "nat" => Tok::KwNat,
                        "inf" => Tok::KwInf,
                        "get" => Tok::KwGet,
                        "set0" => Tok::KwSet0,
                        "set1" => Tok::KwSet1,
                        _ => {
                            if let Some(idx) = s.strip_prefix("inj_") {
                                let n: u64 = idx.parse().map_err(|_| {
                                    self.err(format!("bad injection index '{idx}'"))
                                })?;
                                if n == 0 {
                                    return Err(self.err("injection indices start at 1"));
                                }
                                Tok::InjIdx(n)
                            } else {
                                Tok::Ident(s)
                            }
                        }
                    }
                }
                other => return Err(self.err(format!("unexpected character '{other}'"))),
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        Ok(Parser { toks: Lexer::new(src).tokens()?, pos: 0 })
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|(t, _, _)| t.clone())
            .ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(format!("expected {}, found {}", want.describe(), got.describe())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected identifier, found {}", other.describe())))
            }
        }
    }

    fn scalar(&mut self) -> Result<ExtRat> {
        match self.next()? {
            Tok::Nat(n) => Ok(ExtRat::from_int(n)),
            Tok::Ratio(p, q) => Ok(ExtRat::from_ratio(p, q)),
            Tok::KwInf => Ok(ExtRat::Infinite),
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected scalar, found {}", other.describe())))
            }
        }
    }

    fn ty(&mut self) -> Result<Type> {
        let lhs = self.ty_prefix()?;
        if self.peek() == Some(&Tok::LolliArrow) {
            self.next()?;
            let rhs = self.ty()?;
            Ok(Type::lolli(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn ty_prefix(&mut self) -> Result<Type> {
        match self.peek() {
            Some(Tok::KwMu) => {
                self.next()?;
                let t = self.ident()?;
                self.expect(Tok::Dot)?;
                let body = self.ty()?;
                Ok(Type::Mu(t, alloc::boxed::Box::new(body)))
            }
            Some(Tok::BangUnder) => {
                self.next()?;
                let s = self.scalar()?;
                let body = self.ty_prefix()?;
                Ok(Type::bang(Cbe::new(s), body))
            }
            _ => self.ty_atom(),
        }
    }

    fn ty_atom(&mut self) -> Result<Type> {
        match self.next()? {
            Tok::KwUnit => Ok(unit_type()),
            Tok::KwNat => Ok(nat_type()),
            Tok::Nat(0) => Ok(zero_type()),
            Tok::Ident(t) => Ok(Type::Var(t)),
            Tok::KwSum => {
                self.expect(Tok::LBrace)?;
                let mut items = Vec::new();
                items.push(self.ty()?);
                while self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                    items.push(self.ty()?);
                }
                self.expect(Tok::RBrace)?;
                Ok(Type::Sum(items))
            }
            Tok::LParen => {
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected a type, found {}", other.describe())))
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.next()? {
            Tok::Ident(x) => Ok(Value::Var(x)),
            Tok::Bang => Ok(Value::bang(self.value()?)),
            Tok::Backslash => {
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Value::Lam(x, ty, alloc::boxed::Box::new(body)))
            }
            Tok::InjIdx(i) => {
                self.expect(Tok::LBracket)?;
                let ty = self.ty()?;
                self.expect(Tok::RBracket)?;
                let v = self.value()?;
                let arity = match &ty {
                    Type::Sum(ts) => ts.len(),
                    _ => return Err(self.err("injection annotation must be a sum type")),
                };
                if i as usize > arity {
                    return Err(self.err(format!(
                        "injection index {i} out of range for a {arity}-ary sum"
                    )));
                }
                Ok(Value::inj(i as usize - 1, ty, v))
            }
            Tok::KwFold => {
                self.expect(Tok::LBracket)?;
                let ty = self.ty()?;
                self.expect(Tok::RBracket)?;
                if !matches!(ty, Type::Mu(_, _)) {
                    return Err(self.err("fold annotation must be a mu type"));
                }
                let v = self.value()?;
                Ok(Value::fold(ty, v))
            }
            Tok::LParen => {
                let v = self.value()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected a value, found {}", other.describe())))
            }
        }
    }

    fn op_args(&mut self, op: OpSym) -> Result<Term> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        args.push(self.term()?);
        while self.peek() == Some(&Tok::Comma) {
            self.next()?;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        if args.len() != op.arity() {
            return Err(self.err(format!(
                "operation {op} expects {} arguments, got {}",
                op.arity(),
                args.len()
            )));
        }
        Ok(Term::Op(op, args))
    }

    fn bracketed_loc(&mut self) -> Result<String> {
        self.expect(Tok::LBracket)?;
        let l = self.ident()?;
        self.expect(Tok::RBracket)?;
        Ok(l)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::KwReturn) => {
                self.next()?;
                Ok(Term::Return(self.value()?))
            }
            Some(Tok::KwLet) => {
                self.next()?;
                let x = self.ident()?;
                self.expect(Tok::Equals)?;
                let e = self.term()?;
                self.expect(Tok::KwIn)?;
                let f = self.term()?;
                Ok(Term::Let(x, alloc::boxed::Box::new(e), alloc::boxed::Box::new(f)))
            }
            Some(Tok::KwCaseBang) => {
                self.next()?;
                let v = self.value()?;
                self.expect(Tok::KwOf)?;
                self.expect(Tok::Bang)?;
                let x = self.ident()?;
                self.expect(Tok::BranchArrow)?;
                let e = self.term()?;
                Ok(Term::CaseBang(v, x, alloc::boxed::Box::new(e)))
            }
            Some(Tok::KwCaseFold) => {
                self.next()?;
                let v = self.value()?;
                self.expect(Tok::KwOf)?;
                self.expect(Tok::KwFold)?;
                let x = self.ident()?;
                self.expect(Tok::BranchArrow)?;
                let e = self.term()?;
                Ok(Term::CaseFold(v, x, alloc::boxed::Box::new(e)))
            }
            Some(Tok::KwCase) => {
                self.next()?;
                let v = self.value()?;
                self.expect(Tok::KwOf)?;
                self.expect(Tok::LBrace)?;
                let mut branches = Vec::new();
                loop {
                    match self.next()? {
                        Tok::InjIdx(i) => {
                            if i as usize != branches.len() + 1 {
                                return Err(self.err(format!(
                                    "branches must cover inj_1..inj_n in order; expected inj_{}, found inj_{i}",
                                    branches.len() + 1
                                )));
                            }
                            let x = self.ident()?;
                            self.expect(Tok::BranchArrow)?;
                            let e = self.term()?;
                            self.expect(Tok::Semi)?;
                            branches.push((x, e));
                        }
                        Tok::RBrace => break,
                        other => {
                            self.pos -= 1;
                            return Err(self.err(format!(
                                "expected a branch or '}}', found {}",
                                other.describe()
                            )));
                        }
                    }
                }
                if branches.is_empty() {
                    return Err(self.err("case needs at least one branch"));
                }
                Ok(Term::CaseSum(v, branches))
            }
            Some(Tok::OpPlus) => {
                self.next()?;
                let p = if self.peek() == Some(&Tok::LBracket) {
                    self.next()?;
                    let s = self.scalar()?;
                    self.expect(Tok::RBracket)?;
                    match s {
                        ExtRat::Finite(r) => Some(r),
                        ExtRat::Infinite => {
                            return Err(self.err("choice probability must be finite"))
                        }
                    }
                } else {
                    None
                };
                self.op_args(OpSym::Choice(p))
            }
            Some(Tok::KwGet) => {
                self.next()?;
                let l = self.bracketed_loc()?;
                self.op_args(OpSym::Get(l))
            }
            Some(Tok::KwSet0) => {
                self.next()?;
                let l = self.bracketed_loc()?;
                self.op_args(OpSym::Set0(l))
            }
            Some(Tok::KwSet1) => {
                self.next()?;
                let l = self.bracketed_loc()?;
                self.op_args(OpSym::Set1(l))
            }
            _ => {
                let f = self.value()?;
                let a = self.value()?;
                Ok(Term::App(f, a))
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err(format!(
                "trailing input: {}",
                self.toks[self.pos].0.describe()
            )))
        }
    }
}

/// Parses a complete type.
pub fn parse_type(src: &str) -> Result<Type> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// Parses a complete value.
pub fn parse_value(src: &str) -> Result<Value> {
    let mut p = Parser::new(src)?;
    let v = p.value()?;
    p.finish()?;
    Ok(v)
}

/// Parses a complete term (a program).
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::derived::{identity_term, numeral, unit_type};
    use crate::syntax::printer::print_term;

    #[test]
    fn parses_identity() {
        let t = parse_term("return (\\x:unit. return x)").unwrap();
        assert!(t.alpha_eq(&identity_term(&unit_type())));
    }

    #[test]
    fn parses_choice_with_probability() {
        let zero = crate::syntax::printer::print_value(&numeral(0));
        let one = crate::syntax::printer::print_value(&numeral(1));
        let src = alloc::format!("let x = op+[1/2](return !{zero}, return !{one}) in return x");
        let t = parse_term(&src).unwrap();
        match &t {
            Term::Let(_, e, _) => match e.as_ref() {
                Term::Op(OpSym::Choice(Some(p)), args) => {
                    assert_eq!(p, &num_rational::BigRational::new(1.into(), 2.into()));
                    assert_eq!(args.len(), 2);
                }
                other => panic!("unexpected: {other:?}"),
            },
            other => panic!("unexpected: {other:?}"),
        }
        assert!(parse_term(&print_term(&t)).unwrap().alpha_eq(&t));
    }

    #[test]
    fn parses_types() {
        assert!(parse_type("unit -o unit").unwrap().alpha_eq(&Type::lolli(unit_type(), unit_type())));
        assert!(parse_type("mu t. sum{unit, t}")
            .unwrap()
            .alpha_eq(&crate::syntax::derived::nat_type()));
        let banged = parse_type("!_1/2 nat -o 0").unwrap();
        match banged {
            Type::Lolli(l, _) => assert!(matches!(*l, Type::Bang(_, _))),
            _ => panic!("bang should bind tighter than -o"),
        }
    }

    #[test]
    fn error_positions_are_reported() {
        let err = parse_term("return (\\x:unit return x)").unwrap_err();
        match err {
            Error::Parse { line: 1, col, .. } => assert!(col > 1),
            other => panic!("unexpected: {other:?}"),
        }
        assert!(parse_term("case v of {}").is_err());
        assert!(parse_term("op+[inf](return x, return y)").is_err());
    }
}
