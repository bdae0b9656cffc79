//! Deterministic generators for the property suites: quantale elements,
//! finite relations, monadic values, and well-typed closed programs.

use crate::effects::{EffectSig, MValue, Mass, MonadTag, State};
use crate::quantale::{Cbe, Quantale, QuantaleElem};
use crate::rational::ExtRat;
use crate::syntax::{numeral, omega, Term, Type, Value};
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};

/// Thin deterministic RNG over ChaCha8; all suites derive their randomness
/// from a single `u64` seed.
pub struct Rng(rand_chacha::ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw in `0..n` (modulo bias is irrelevant for tests).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// A rational in `[0, 1]` with denominator at most `max_den`.
    pub fn unit_ratio(&mut self, max_den: u64) -> BigRational {
        let den = 1 + self.below(max_den);
        let num = self.below(den + 1);
        BigRational::new((num as i64).into(), (den as i64).into())
    }

    /// A positive rational in `(0, 1]`.
    pub fn positive_unit_ratio(&mut self, max_den: u64) -> BigRational {
        let den = 1 + self.below(max_den);
        let num = 1 + self.below(den);
        BigRational::new((num as i64).into(), (den as i64).into())
    }

    /// A probability strictly inside `(0, 1)`.
    pub fn probability(&mut self) -> BigRational {
        let den = 2 + self.below(8);
        let num = 1 + self.below(den - 1);
        BigRational::new((num as i64).into(), (den as i64).into())
    }
}

/// A random element of the given quantale (occasionally `∞` where the
/// carrier allows it).
pub fn gen_elem(rng: &mut Rng, q: Quantale) -> QuantaleElem {
    match q {
        Quantale::Bool => q.elem_bool(rng.chance(1, 2)).unwrap(),
        Quantale::Lawvere | Quantale::UltraLawvere => {
            if rng.chance(1, 8) {
                q.elem_num(ExtRat::Infinite).unwrap()
            } else {
                let whole = rng.below(3);
                let frac = rng.unit_ratio(6);
                q.elem_num(ExtRat::from_big(frac + BigRational::from_integer((whole as i64).into())))
                    .unwrap()
            }
        }
        Quantale::UnitInterval | Quantale::TNorm(_) => {
            q.elem_num(ExtRat::from_big(rng.unit_ratio(8))).unwrap()
        }
    }
}

/// A random scalar CBE (integers, small fractions, occasionally 0 or ∞).
pub fn gen_cbe(rng: &mut Rng) -> Cbe {
    match rng.below(6) {
        0 => Cbe::zero(),
        1 => Cbe::one(),
        2 => Cbe::infinite(),
        3 => Cbe::from_int(2 + rng.below(3)),
        _ => Cbe::new(ExtRat::from_big(rng.positive_unit_ratio(5))),
    }
}

/// A random relation table over `0..n` atoms as a lookup map.
pub fn gen_relation(rng: &mut Rng, q: Quantale, n: u32) -> BTreeMap<(u32, u32), QuantaleElem> {
    let mut out = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            out.insert((x, y), gen_elem(rng, q));
        }
    }
    out
}

/// A random monadic value over atoms `0..n` for the signature's monad.
pub fn gen_mvalue(rng: &mut Rng, sig: &EffectSig, n: u32) -> MValue<u32> {
    match sig.monad {
        MonadTag::Partial => {
            if rng.chance(1, 3) {
                MValue::Partial(None)
            } else {
                MValue::Partial(Some(rng.below(n as u64) as u32))
            }
        }
        MonadTag::Powerset => {
            let mut set = alloc::collections::BTreeSet::new();
            for atom in 0..n {
                if rng.chance(1, 2) {
                    set.insert(atom);
                }
            }
            MValue::Pow(set)
        }
        MonadTag::SubDist => gen_subdist(rng, n),
        MonadTag::State => {
            let mut map = BTreeMap::new();
            for b in sig.states() {
                map.insert(b, gen_pair_dist(rng, sig, n));
            }
            MValue::state_kernel(sig, map).expect("generated masses are valid")
        }
    }
}

fn gen_subdist(rng: &mut Rng, n: u32) -> MValue<u32> {
    let entries = gen_mass_entries(rng, n);
    MValue::subdist(entries).expect("mass ≤ 1 by construction")
}

fn gen_pair_dist(rng: &mut Rng, sig: &EffectSig, n: u32) -> BTreeMap<(State, u32), Mass> {
    let states = sig.states();
    let entries = gen_mass_entries(rng, n);
    entries
        .into_iter()
        .map(|(a, m)| {
            let b = states[rng.below(states.len() as u64) as usize];
            ((b, a), m)
        })
        .fold(BTreeMap::new(), |mut acc, (k, m)| {
            *acc.entry(k).or_insert_with(Mass::zero) += m;
            acc
        })
}

/// Up to three atoms with positive masses summing to at most 1 (often
/// strictly less: divergence mass).
fn gen_mass_entries(rng: &mut Rng, n: u32) -> Vec<(u32, Mass)> {
    let count = rng.below(4) as usize;
    let mut remaining = Mass::one();
    let mut out = Vec::new();
    for _ in 0..count {
        if remaining.is_zero() {
            break;
        }
        let cut = rng.positive_unit_ratio(6) * &remaining;
        let atom = rng.below(n as u64) as u32;
        if !cut.is_zero() {
            out.push((atom, cut.clone()));
            remaining -= cut;
        }
    }
    out
}

/// A random ascending chain of monadic values (by adding mass/elements).
pub fn gen_chain(rng: &mut Rng, sig: &EffectSig, n: u32, len: usize) -> Vec<MValue<u32>> {
    let mut chain = Vec::with_capacity(len);
    let mut cur = crate::effects::bottom::<u32>(sig);
    for _ in 0..len {
        chain.push(cur.clone());
        cur = grow_mvalue(rng, sig, n, cur);
    }
    chain
}

/// One upward growth step in the monad's order.
pub fn grow_mvalue(rng: &mut Rng, sig: &EffectSig, n: u32, m: MValue<u32>) -> MValue<u32> {
    match m {
        MValue::Partial(None) => {
            if rng.chance(2, 3) {
                MValue::Partial(Some(rng.below(n as u64) as u32))
            } else {
                MValue::Partial(None)
            }
        }
        done @ MValue::Partial(Some(_)) => done,
        MValue::Pow(mut set) => {
            if rng.chance(2, 3) {
                set.insert(rng.below(n as u64) as u32);
            }
            MValue::Pow(set)
        }
        MValue::SubDist(mut map) => {
            let total: Mass = map.values().sum();
            let headroom = Mass::one() - total;
            if !headroom.is_zero() && rng.chance(2, 3) {
                let add = rng.positive_unit_ratio(4) * headroom;
                if !add.is_zero() {
                    *map.entry(rng.below(n as u64) as u32).or_insert_with(Mass::zero) += add;
                }
            }
            MValue::SubDist(map)
        }
        MValue::State(mut map) => {
            let states = sig.states();
            for dist in map.values_mut() {
                let total: Mass = dist.values().sum();
                let headroom = Mass::one() - total;
                if !headroom.is_zero() && rng.chance(1, 2) {
                    let add = rng.positive_unit_ratio(4) * headroom;
                    let b = states[rng.below(states.len() as u64) as usize];
                    if !add.is_zero() {
                        *dist.entry((b, rng.below(n as u64) as u32)).or_insert_with(Mass::zero) +=
                            add;
                    }
                }
            }
            MValue::State(map)
        }
    }
}

/// A closed, well-typed program of type `nat` over the signature's
/// operations. `depth` bounds the construction; divergence appears with
/// small probability so subdistributions keep genuine deficit mass.
pub fn gen_nat_program(rng: &mut Rng, sig: &EffectSig, depth: u32) -> Term {
    let nat = crate::syntax::nat_type();
    if depth == 0 {
        return Term::Return(numeral(rng.below(3)));
    }
    match rng.below(10) {
        0 | 1 => Term::Return(numeral(rng.below(4))),
        2 => {
            // let x = e in return x
            let e = gen_nat_program(rng, sig, depth - 1);
            Term::let_in("x", e, Term::Return(Value::var("x")))
        }
        3 => {
            // let x = e in f  with x unused
            let e = gen_nat_program(rng, sig, depth - 1);
            let f = gen_nat_program(rng, sig, depth - 1);
            Term::let_in("x", e, f)
        }
        4 => {
            // (\x:nat. body) n
            let body = if rng.chance(1, 2) {
                Term::Return(Value::var("x"))
            } else {
                pred_term(Value::var("x"))
            };
            Term::App(Value::lam("x", nat, body), numeral(rng.below(4)))
        }
        5 => pred_term(numeral(rng.below(4))),
        6 => {
            // case! !n of !x -> return x
            Term::case_bang(
                Value::bang(numeral(rng.below(4))),
                "x",
                Term::Return(Value::var("x")),
            )
        }
        7 if rng.chance(1, 2) => omega(&nat),
        _ => match effect_op(rng, sig) {
            Some(op) => {
                let args: Vec<Term> =
                    (0..op.arity()).map(|_| gen_nat_program(rng, sig, depth - 1)).collect();
                Term::Op(op, args)
            }
            None => {
                let e = gen_nat_program(rng, sig, depth - 1);
                Term::let_in("x", e, Term::Return(Value::var("x")))
            }
        },
    }
}

/// `pred`: pattern-match a numeral down by one.
pub fn pred_term(v: Value) -> Term {
    let nat = crate::syntax::nat_type();
    Term::case_fold(
        v,
        "u",
        Term::CaseSum(
            Value::var("u"),
            vec![
                ("z".to_string(), Term::Return(numeral(0))),
                ("p".to_string(), Term::Return(Value::var("p"))),
            ],
        ),
    )
    .into_checked(&nat)
}

trait IntoChecked {
    fn into_checked(self, ty: &Type) -> Term;
}

impl IntoChecked for Term {
    fn into_checked(self, ty: &Type) -> Term {
        debug_assert!(
            crate::typing::check(&self, &crate::typing::Env::new(), ty).is_ok()
                || !self.is_closed(),
            "generated term fails to type-check"
        );
        self
    }
}

fn effect_op(rng: &mut Rng, sig: &EffectSig) -> Option<crate::syntax::OpSym> {
    use crate::syntax::OpSym;
    match sig.monad {
        MonadTag::Partial => None,
        MonadTag::Powerset => Some(OpSym::Choice(None)),
        MonadTag::SubDist => Some(if rng.chance(1, 2) {
            OpSym::Choice(None)
        } else {
            OpSym::Choice(Some(rng.probability()))
        }),
        MonadTag::State => {
            let loc = sig.locations[rng.below(sig.locations.len() as u64) as usize].clone();
            Some(match rng.below(4) {
                0 => OpSym::Get(loc),
                1 => OpSym::Set0(loc),
                2 => OpSym::Set1(loc),
                _ => OpSym::Choice(Some(rng.probability())),
            })
        }
    }
}

/// A random closed value of a (small) supported type: `nat`, bangs of nat,
/// and `nat ⊸ nat` functions.
pub fn gen_value_of_type(rng: &mut Rng, ty: &Type) -> Option<Value> {
    let nat = crate::syntax::nat_type();
    if ty.alpha_eq(&nat) {
        return Some(numeral(rng.below(4)));
    }
    if let Type::Bang(_, inner) = ty {
        return gen_value_of_type(rng, inner).map(Value::bang);
    }
    if let Type::Lolli(dom, cod) = ty {
        if dom.alpha_eq(&nat) && cod.alpha_eq(&nat) {
            let body = match rng.below(4) {
                0 => Term::Return(Value::var("x")),
                1 => Term::Return(numeral(rng.below(3))),
                2 => pred_term(Value::var("x")),
                _ => omega(&nat),
            };
            return Some(Value::lam("x", nat, body));
        }
    }
    None
}

/// A random fuzzed AST (not necessarily well-typed) for parser round trips.
pub fn gen_raw_term(rng: &mut Rng, depth: u32) -> Term {
    if depth == 0 {
        return Term::Return(gen_raw_value(rng, 0));
    }
    match rng.below(7) {
        0 => Term::Return(gen_raw_value(rng, depth - 1)),
        1 => Term::App(gen_raw_value(rng, depth - 1), gen_raw_value(rng, depth - 1)),
        2 => Term::let_in("v", gen_raw_term(rng, depth - 1), gen_raw_term(rng, depth - 1)),
        3 => Term::case_bang(gen_raw_value(rng, depth - 1), "v", gen_raw_term(rng, depth - 1)),
        4 => Term::case_fold(gen_raw_value(rng, depth - 1), "v", gen_raw_term(rng, depth - 1)),
        5 => {
            let n = 1 + rng.below(3) as usize;
            let branches = (0..n)
                .map(|i| (alloc::format!("b{i}"), gen_raw_term(rng, depth - 1)))
                .collect();
            Term::CaseSum(gen_raw_value(rng, depth - 1), branches)
        }
        _ => {
            use crate::syntax::OpSym;
            let op = match rng.below(4) {
                0 => OpSym::Choice(None),
                1 => OpSym::Choice(Some(rng.probability())),
                2 => OpSym::Get("l".to_string()),
                _ => OpSym::Set1("l".to_string()),
            };
            let args = (0..op.arity()).map(|_| gen_raw_term(rng, depth - 1)).collect();
            Term::Op(op, args)
        }
    }
}

fn gen_raw_value(rng: &mut Rng, depth: u32) -> Value {
    if depth == 0 {
        return Value::var(["x", "y", "z"][rng.below(3) as usize]);
    }
    match rng.below(5) {
        0 => Value::var(["x", "y", "z"][rng.below(3) as usize]),
        1 => Value::lam("x", gen_raw_type(rng, depth - 1), gen_raw_term(rng, depth - 1)),
        2 => {
            let arity = 1 + rng.below(3) as usize;
            let tys: Vec<Type> = (0..arity).map(|_| gen_raw_type(rng, depth - 1)).collect();
            let idx = rng.below(arity as u64) as usize;
            Value::inj(idx, Type::Sum(tys), gen_raw_value(rng, depth - 1))
        }
        3 => {
            let body = gen_raw_type(rng, depth - 1);
            Value::fold(Type::mu("t", body), gen_raw_value(rng, depth - 1))
        }
        _ => Value::bang(gen_raw_value(rng, depth - 1)),
    }
}

pub(crate) fn gen_raw_type(rng: &mut Rng, depth: u32) -> Type {
    if depth == 0 {
        return match rng.below(3) {
            0 => crate::syntax::unit_type(),
            1 => crate::syntax::zero_type(),
            _ => crate::syntax::nat_type(),
        };
    }
    match rng.below(5) {
        0 => crate::syntax::unit_type(),
        1 => Type::Sum(
            (0..(1 + rng.below(3) as usize)).map(|_| gen_raw_type(rng, depth - 1)).collect(),
        ),
        2 => Type::lolli(gen_raw_type(rng, depth - 1), gen_raw_type(rng, depth - 1)),
        3 => Type::mu("t", Type::Sum(vec![crate::syntax::unit_type(), Type::Var("t".to_string())])),
        _ => Type::bang(gen_cbe(rng), gen_raw_type(rng, depth - 1)),
    }
}
