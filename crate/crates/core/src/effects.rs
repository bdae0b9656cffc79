//! The four Σ-continuous monads: partiality, finite powerset, finite
//! subdistribution, and the state-indexed subdistribution composite, with
//! their units, strong Kleisli extensions, algebraic operations, and the
//! ω-cppo order on monadic values.
//!
//! Monadic values are generic over the atom type so the relator law suites
//! can run on small abstract carriers; the evaluator instantiates atoms with
//! closed values in canonical form.

use crate::error::Error;
use crate::syntax::{Name, OpSym, Term, Value};
use crate::Result;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Mass = BigRational;

/// Which monad interprets the effects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonadTag {
    Partial,
    Powerset,
    SubDist,
    State,
}

impl MonadTag {
    pub fn from_name(name: &str) -> Result<MonadTag> {
        match name {
            "partial" => Ok(MonadTag::Partial),
            "powerset" => Ok(MonadTag::Powerset),
            "dist" => Ok(MonadTag::SubDist),
            "state" => Ok(MonadTag::State),
            other => Err(Error::InvalidConfig(format!("unknown monad '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonadTag::Partial => "partial",
            MonadTag::Powerset => "powerset",
            MonadTag::SubDist => "dist",
            MonadTag::State => "state",
        }
    }
}

/// A store state: one bit per configured location, packed little-endian in
/// the order of `EffectSig::locations`.
pub type State = u32;

/// The monad tag plus everything needed to interpret its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectSig {
    pub monad: MonadTag,
    pub locations: Vec<Name>,
}

impl EffectSig {
    pub fn new(monad: MonadTag, locations: Vec<Name>) -> Result<EffectSig> {
        if monad != MonadTag::State && !locations.is_empty() {
            return Err(Error::InvalidConfig(
                "locations are only meaningful for the state monad".to_string(),
            ));
        }
        if locations.len() > 10 {
            return Err(Error::InvalidConfig(
                "at most 10 locations are supported (the state space is materialized)".to_string(),
            ));
        }
        let mut seen = BTreeSet::new();
        for l in &locations {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidConfig(format!("duplicate location '{l}'")));
            }
        }
        Ok(EffectSig { monad, locations })
    }

    pub fn pure_monad(monad: MonadTag) -> EffectSig {
        EffectSig { monad, locations: Vec::new() }
    }

    /// All store states `{0,1}^L`, materialized eagerly.
    pub fn states(&self) -> Vec<State> {
        (0..(1u32 << self.locations.len())).collect()
    }

    fn bit_of(&self, loc: &str) -> Result<usize> {
        self.locations
            .iter()
            .position(|l| l == loc)
            .ok_or_else(|| Error::BadOperation(format!("unknown location '{loc}'")))
    }

    /// Checks that an operation symbol is interpretable on this monad.
    pub fn validate_op(&self, op: &OpSym) -> Result<()> {
        match (op, self.monad) {
            (OpSym::Choice(None), MonadTag::Powerset | MonadTag::SubDist | MonadTag::State) => {
                Ok(())
            }
            (OpSym::Choice(Some(p)), MonadTag::SubDist | MonadTag::State) => {
                if *p <= BigRational::zero() || *p >= BigRational::one() {
                    Err(Error::BadOperation("choice probability must lie in (0,1)".to_string()))
                } else {
                    Ok(())
                }
            }
            (OpSym::Choice(Some(_)), MonadTag::Powerset) => Err(Error::BadOperation(
                "the powerset monad interprets only bare nondeterministic choice".to_string(),
            )),
            (OpSym::Get(l) | OpSym::Set0(l) | OpSym::Set1(l), MonadTag::State) => {
                self.bit_of(l).map(|_| ())
            }
            (op, monad) => Err(Error::BadOperation(format!(
                "operation {op} is not interpretable on the {} monad",
                monad.name()
            ))),
        }
    }

    /// Walks a term validating every operation against the signature.
    pub fn validate_term(&self, e: &Term) -> Result<()> {
        match e {
            Term::Return(v) | Term::App(v, _) => self.validate_value(v),
            Term::CaseSum(v, branches) => {
                self.validate_value(v)?;
                branches.iter().try_for_each(|(_, b)| self.validate_term(b))
            }
            Term::Let(_, e1, e2) => {
                self.validate_term(e1)?;
                self.validate_term(e2)
            }
            Term::CaseBang(v, _, b) | Term::CaseFold(v, _, b) => {
                self.validate_value(v)?;
                self.validate_term(b)
            }
            Term::Op(op, args) => {
                self.validate_op(op)?;
                args.iter().try_for_each(|a| self.validate_term(a))
            }
        }
    }

    fn validate_value(&self, v: &Value) -> Result<()> {
        match v {
            Value::Var(_) => Ok(()),
            Value::Lam(_, _, body) => self.validate_term(body),
            Value::Inj(_, _, w) | Value::Fold(_, w) | Value::Bang(w) => self.validate_value(w),
        }
    }
}

/// A finitely supported monadic value over atoms of type `E`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MValue<E: Ord + Clone> {
    Partial(Option<E>),
    Pow(BTreeSet<E>),
    /// Map from atoms to positive masses; total at most 1, the deficit being
    /// divergence mass.
    SubDist(BTreeMap<E, Mass>),
    /// For each input state, a subdistribution over (output state, atom).
    State(BTreeMap<State, BTreeMap<(State, E), Mass>>),
}

/// Monadic values over closed program values.
pub type MonadicValue = MValue<Value>;

impl<E: Ord + Clone> MValue<E> {
    pub fn tag(&self) -> MonadTag {
        match self {
            MValue::Partial(_) => MonadTag::Partial,
            MValue::Pow(_) => MonadTag::Powerset,
            MValue::SubDist(_) => MonadTag::SubDist,
            MValue::State(_) => MonadTag::State,
        }
    }

    fn expect_tag(&self, tag: MonadTag) -> Result<()> {
        if self.tag() == tag {
            Ok(())
        } else {
            Err(Error::MonadMismatch {
                expected: tag.name().to_string(),
                found: self.tag().name().to_string(),
            })
        }
    }

    /// Constructs a subdistribution, dropping zero entries and validating
    /// positivity and total mass.
    pub fn subdist(entries: impl IntoIterator<Item = (E, Mass)>) -> Result<MValue<E>> {
        let mut map = BTreeMap::new();
        let mut total = Mass::zero();
        for (atom, mass) in entries {
            if mass < Mass::zero() {
                return Err(Error::InvalidConfig("negative probability mass".to_string()));
            }
            if mass.is_zero() {
                continue;
            }
            total += &mass;
            *map.entry(atom).or_insert_with(Mass::zero) += mass;
        }
        if total > Mass::one() {
            return Err(Error::InvalidConfig(format!(
                "subdistribution mass {total} exceeds 1"
            )));
        }
        Ok(MValue::SubDist(map))
    }

    /// Constructs a state kernel, padding missing states with the empty
    /// subdistribution and validating per-state mass.
    pub fn state_kernel(
        sig: &EffectSig,
        mut map: BTreeMap<State, BTreeMap<(State, E), Mass>>,
    ) -> Result<MValue<E>> {
        let states = sig.states();
        for b in &states {
            map.entry(*b).or_default();
        }
        for (b, dist) in &map {
            if !states.contains(b) {
                return Err(Error::InvalidConfig(format!("state {b} outside the state space")));
            }
            let mut total = Mass::zero();
            for ((b2, _), mass) in dist {
                if !states.contains(b2) {
                    return Err(Error::InvalidConfig(format!(
                        "output state {b2} outside the state space"
                    )));
                }
                if *mass <= Mass::zero() {
                    return Err(Error::InvalidConfig("non-positive probability mass".to_string()));
                }
                total += mass;
            }
            if total > Mass::one() {
                return Err(Error::InvalidConfig(format!(
                    "kernel mass {total} at state {b} exceeds 1"
                )));
            }
        }
        Ok(MValue::State(map))
    }

    /// The set of atoms occurring in the value.
    pub fn support(&self) -> BTreeSet<&E> {
        match self {
            MValue::Partial(opt) => opt.iter().collect(),
            MValue::Pow(set) => set.iter().collect(),
            MValue::SubDist(map) => map.keys().collect(),
            MValue::State(map) => map.values().flat_map(|d| d.keys().map(|(_, x)| x)).collect(),
        }
    }

    /// Total convergence mass of a subdistribution.
    pub fn convergence_mass(&self) -> Result<Mass> {
        match self {
            MValue::SubDist(map) => Ok(map.values().sum()),
            _ => Err(Error::MonadMismatch {
                expected: MonadTag::SubDist.name().to_string(),
                found: self.tag().name().to_string(),
            }),
        }
    }

    /// Functorial action on atoms (merging collisions additively for
    /// distributions, by union for sets).
    pub fn map_atoms<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> F) -> MValue<F> {
        match self {
            MValue::Partial(opt) => MValue::Partial(opt.as_ref().map(&mut f)),
            MValue::Pow(set) => MValue::Pow(set.iter().map(&mut f).collect()),
            MValue::SubDist(map) => {
                let mut out: BTreeMap<F, Mass> = BTreeMap::new();
                for (x, m) in map {
                    *out.entry(f(x)).or_insert_with(Mass::zero) += m;
                }
                MValue::SubDist(out)
            }
            MValue::State(map) => MValue::State(
                map.iter()
                    .map(|(b, dist)| {
                        let mut out: BTreeMap<(State, F), Mass> = BTreeMap::new();
                        for ((b2, x), m) in dist {
                            *out.entry((*b2, f(x))).or_insert_with(Mass::zero) += m;
                        }
                        (*b, out)
                    })
                    .collect(),
            ),
        }
    }
}

/// The bottom element `⊥` of the monad's ω-cppo.
pub fn bottom<E: Ord + Clone>(sig: &EffectSig) -> MValue<E> {
    match sig.monad {
        MonadTag::Partial => MValue::Partial(None),
        MonadTag::Powerset => MValue::Pow(BTreeSet::new()),
        MonadTag::SubDist => MValue::SubDist(BTreeMap::new()),
        MonadTag::State => {
            MValue::State(sig.states().into_iter().map(|b| (b, BTreeMap::new())).collect())
        }
    }
}

/// The monad unit `η`.
pub fn unit<E: Ord + Clone>(sig: &EffectSig, atom: E) -> MValue<E> {
    match sig.monad {
        MonadTag::Partial => MValue::Partial(Some(atom)),
        MonadTag::Powerset => MValue::Pow([atom].into_iter().collect()),
        MonadTag::SubDist => MValue::SubDist([(atom, Mass::one())].into_iter().collect()),
        MonadTag::State => MValue::State(
            sig.states()
                .into_iter()
                .map(|b| (b, [((b, atom.clone()), Mass::one())].into_iter().collect()))
                .collect(),
        ),
    }
}

/// The strong Kleisli extension `f‡`, strict in `⊥`.
pub fn strong_kleisli<E: Ord + Clone>(
    sig: &EffectSig,
    mut f: impl FnMut(&E) -> Result<MValue<E>>,
    m: &MValue<E>,
) -> Result<MValue<E>> {
    m.expect_tag(sig.monad)?;
    match m {
        MValue::Partial(None) => Ok(MValue::Partial(None)),
        MValue::Partial(Some(x)) => {
            let out = f(x)?;
            out.expect_tag(MonadTag::Partial)?;
            Ok(out)
        }
        MValue::Pow(set) => {
            let mut out = BTreeSet::new();
            for x in set {
                match f(x)? {
                    MValue::Pow(s) => out.extend(s),
                    other => return Err(mismatch(MonadTag::Powerset, &other)),
                }
            }
            Ok(MValue::Pow(out))
        }
        MValue::SubDist(map) => {
            let mut out: BTreeMap<E, Mass> = BTreeMap::new();
            for (x, mass) in map {
                match f(x)? {
                    MValue::SubDist(inner) => {
                        for (y, w) in inner {
                            *out.entry(y).or_insert_with(Mass::zero) += mass * &w;
                        }
                    }
                    other => return Err(mismatch(MonadTag::SubDist, &other)),
                }
            }
            Ok(MValue::SubDist(out))
        }
        MValue::State(map) => {
            // Thread the state: run the continuation from each output state.
            let mut cache: BTreeMap<E, MValue<E>> = BTreeMap::new();
            let mut out: BTreeMap<State, BTreeMap<(State, E), Mass>> = BTreeMap::new();
            for (b, dist) in map {
                let mut acc: BTreeMap<(State, E), Mass> = BTreeMap::new();
                for ((b2, x), mass) in dist {
                    if !cache.contains_key(x) {
                        let fx = f(x)?;
                        fx.expect_tag(MonadTag::State)?;
                        cache.insert(x.clone(), fx);
                    }
                    let MValue::State(fx) = &cache[x] else { unreachable!() };
                    let cont = fx.get(b2).cloned().unwrap_or_default();
                    for ((b3, y), w) in cont {
                        *acc.entry((b3, y)).or_insert_with(Mass::zero) += mass * &w;
                    }
                }
                out.insert(*b, acc);
            }
            Ok(MValue::State(out))
        }
    }
}

fn mismatch<E: Ord + Clone>(expected: MonadTag, found: &MValue<E>) -> Error {
    Error::MonadMismatch {
        expected: expected.name().to_string(),
        found: found.tag().name().to_string(),
    }
}

fn mix<K: Ord + Clone>(
    p: &BigRational,
    a: &BTreeMap<K, Mass>,
    b: &BTreeMap<K, Mass>,
) -> BTreeMap<K, Mass> {
    let q = BigRational::one() - p;
    let mut out: BTreeMap<K, Mass> = BTreeMap::new();
    for (k, m) in a {
        let w = p * m;
        if !w.is_zero() {
            *out.entry(k.clone()).or_insert_with(Mass::zero) += w;
        }
    }
    for (k, m) in b {
        let w = &q * m;
        if !w.is_zero() {
            *out.entry(k.clone()).or_insert_with(Mass::zero) += w;
        }
    }
    out
}

/// Interprets an algebraic operation on monadic values.
pub fn op_interp<E: Ord + Clone>(
    op: &OpSym,
    args: &[MValue<E>],
    sig: &EffectSig,
) -> Result<MValue<E>> {
    sig.validate_op(op)?;
    if args.len() != op.arity() {
        return Err(Error::BadOperation(format!(
            "operation {op} expects {} arguments, got {}",
            op.arity(),
            args.len()
        )));
    }
    for a in args {
        a.expect_tag(sig.monad)?;
    }
    match (op, sig.monad) {
        (OpSym::Choice(None), MonadTag::Powerset) => {
            let (MValue::Pow(a), MValue::Pow(b)) = (&args[0], &args[1]) else { unreachable!() };
            Ok(MValue::Pow(a.union(b).cloned().collect()))
        }
        (OpSym::Choice(p), MonadTag::SubDist) => {
            let p = p.clone().unwrap_or_else(|| BigRational::new(1.into(), 2.into()));
            let (MValue::SubDist(a), MValue::SubDist(b)) = (&args[0], &args[1]) else {
                unreachable!()
            };
            Ok(MValue::SubDist(mix(&p, a, b)))
        }
        (OpSym::Choice(p), MonadTag::State) => {
            let p = p.clone().unwrap_or_else(|| BigRational::new(1.into(), 2.into()));
            let (MValue::State(a), MValue::State(b)) = (&args[0], &args[1]) else { unreachable!() };
            let mut out = BTreeMap::new();
            for b0 in sig.states() {
                let da = a.get(&b0).cloned().unwrap_or_default();
                let db = b.get(&b0).cloned().unwrap_or_default();
                out.insert(b0, mix(&p, &da, &db));
            }
            Ok(MValue::State(out))
        }
        (OpSym::Get(l), MonadTag::State) => {
            let bit = sig.bit_of(l)?;
            let (MValue::State(m0), MValue::State(m1)) = (&args[0], &args[1]) else {
                unreachable!()
            };
            let mut out = BTreeMap::new();
            for b in sig.states() {
                let src = if (b >> bit) & 1 == 0 { m0 } else { m1 };
                out.insert(b, src.get(&b).cloned().unwrap_or_default());
            }
            Ok(MValue::State(out))
        }
        (OpSym::Set0(l) | OpSym::Set1(l), MonadTag::State) => {
            let bit = sig.bit_of(l)?;
            let MValue::State(m) = &args[0] else { unreachable!() };
            let write_one = matches!(op, OpSym::Set1(_));
            let mut out = BTreeMap::new();
            for b in sig.states() {
                let b_written = if write_one { b | (1 << bit) } else { b & !(1 << bit) };
                out.insert(b, m.get(&b_written).cloned().unwrap_or_default());
            }
            Ok(MValue::State(out))
        }
        _ => unreachable!("validate_op covers the remaining combinations"),
    }
}

/// The ω-cppo order.
pub fn order_leq<E: Ord + Clone>(m: &MValue<E>, n: &MValue<E>) -> Result<bool> {
    n.expect_tag(m.tag())?;
    Ok(match (m, n) {
        (MValue::Partial(a), MValue::Partial(b)) => match (a, b) {
            (None, _) => true,
            (Some(x), Some(y)) => x == y,
            (Some(_), None) => false,
        },
        (MValue::Pow(a), MValue::Pow(b)) => a.is_subset(b),
        (MValue::SubDist(a), MValue::SubDist(b)) => {
            a.iter().all(|(x, mx)| b.get(x).map(|nx| mx <= nx).unwrap_or(false))
        }
        (MValue::State(a), MValue::State(b)) => a.iter().all(|(s, da)| {
            let empty = BTreeMap::new();
            let db = b.get(s).unwrap_or(&empty);
            da.iter().all(|(k, mx)| db.get(k).map(|nx| mx <= nx).unwrap_or(false))
        }),
        _ => unreachable!("tags checked"),
    })
}

/// Least upper bound of a finite ascending chain: its last element. The
/// empty chain yields the bottom element.
pub fn lub<E: Ord + Clone>(sig: &EffectSig, chain: &[MValue<E>]) -> Result<MValue<E>> {
    for pair in chain.windows(2) {
        if !order_leq(&pair[0], &pair[1])? {
            return Err(Error::NotAChain);
        }
    }
    Ok(chain.last().cloned().unwrap_or_else(|| bottom(sig)))
}
