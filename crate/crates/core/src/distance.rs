//! Finite approximation of applicative Γ-similarity and Γ-bisimilarity.
//!
//! The behavioural distance is the greatest fixed point of a functional on
//! type-indexed value/term relations. The engine iterates that functional a
//! requested number of times starting from the indiscrete relation (every
//! pair at `k`), with two truncations: evaluation runs at a step budget, and
//! the arrow-type meet runs over a finite probe set. Both truncations move
//! the result up in the quantale order, so in the real reading of the
//! Lawvere-style quantales the reported value is a lower bound on the true
//! distance. The iteration index also breaks every recursion through μ-types
//! and evaluation, mirroring the `α ↦ [α]` chain.

use crate::effects::{EffectSig, MonadTag};
use crate::error::Error;
use crate::evaluation::{EvalBudget, Evaluator};
use crate::quantale::{Quantale, QuantaleElem};
use crate::relators::{apply_relator, kernel_relator, RelatorCfg};
use crate::syntax::{omega, Term, Type, Value};
use crate::typing::{self, Env};
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_rational::BigRational;

/// Whether to approximate similarity, bisimilarity (conversive-meet
/// relator), or two-way similarity (`δ ⊗ δ°`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sim,
    Bisim,
    TwoWay,
}

impl Mode {
    pub fn from_name(name: &str) -> Result<Mode> {
        match name {
            "sim" => Ok(Mode::Sim),
            "bisim" => Ok(Mode::Bisim),
            "twoway" => Ok(Mode::TwoWay),
            other => Err(Error::InvalidConfig(format!("unknown mode '{other}'"))),
        }
    }
}

/// Everything a distance query needs besides the subjects.
#[derive(Debug, Clone)]
pub struct DistConfig {
    pub quantale: Quantale,
    /// Base (simulation) relator; bisimulation mode wraps it in a
    /// conversive meet.
    pub relator: RelatorCfg,
    pub sig: EffectSig,
    pub budget: EvalBudget,
    pub iters: u32,
    pub probe_depth: u32,
}

impl DistConfig {
    pub fn validate(&self) -> Result<()> {
        self.relator.validate(self.quantale, self.sig.monad)
    }

    fn effective_relator(&self, mode: Mode) -> RelatorCfg {
        match mode {
            Mode::Bisim => match &self.relator {
                already @ (RelatorCfg::HausdorffSym | RelatorCfg::ConversiveMeet(_)) => {
                    already.clone()
                }
                base => RelatorCfg::ConversiveMeet(alloc::boxed::Box::new(base.clone())),
            },
            Mode::Sim | Mode::TwoWay => self.relator.clone(),
        }
    }
}

/// A closed query: two terms of a common closed type.
#[derive(Debug, Clone)]
pub struct DistQuery {
    pub lhs: Term,
    pub rhs: Term,
    pub ty: Type,
    pub mode: Mode,
    pub cfg: DistConfig,
}

/// Result of a distance query.
#[derive(Debug, Clone)]
pub struct DistOutcome {
    pub value: QuantaleElem,
    /// True when every evaluation stabilized and the last two iterations
    /// agreed on every memoized pair.
    pub stabilized: bool,
    pub iterations: u32,
    /// The queried pair's value at every iteration `0..=iters`.
    pub trace: Vec<QuantaleElem>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Subject {
    T(Term),
    V(Value),
}

type Key = (u32, Type, Subject, Subject);

/// The iteration engine. One engine per query owns its tables; separate
/// queries run concurrently without shared state.
pub struct Engine {
    cfg: DistConfig,
    relator: RelatorCfg,
    evaluator: Evaluator,
    memo: BTreeMap<Key, QuantaleElem>,
    probe_cache: ProbeCache,
    unstable_evals: usize,
}

impl Engine {
    pub fn new(cfg: DistConfig, mode: Mode) -> Result<Engine> {
        cfg.validate()?;
        let relator = cfg.effective_relator(mode);
        let evaluator = Evaluator::new(cfg.sig.clone());
        Ok(Engine {
            cfg,
            relator,
            evaluator,
            memo: BTreeMap::new(),
            probe_cache: BTreeMap::new(),
            unstable_evals: 0,
        })
    }

    pub fn quantale(&self) -> Quantale {
        self.cfg.quantale
    }

    /// Deterministic probe enumeration for a closed type. The depth budget
    /// is consumed by μ-unfoldings and by arrow-result enumeration; sums
    /// and bangs are structural, so `nat` probes at depth `d` reach exactly
    /// the numerals `0..=d` (in both unit-leaf variants).
    pub fn probes(&mut self, ty: &Type, depth: i64) -> Vec<Value> {
        enumerate_probes(&mut self.probe_cache, ty, depth)
    }

    fn eval(&mut self, e: &Term) -> Result<crate::effects::MonadicValue> {
        let (m, stabilized) = self.evaluator.eval(e, self.cfg.budget)?;
        if !stabilized {
            self.unstable_evals += 1;
        }
        Ok(m)
    }

    /// One application of the functional at iteration `m`, reading iteration
    /// `m − 1` through the memo table. Iteration 0 is the indiscrete
    /// relation.
    fn query(&mut self, m: u32, ty: &Type, lhs: &Subject, rhs: &Subject) -> Result<QuantaleElem> {
        let q = self.cfg.quantale;
        if m == 0 {
            return Ok(q.unit());
        }
        let key = (m, ty.canonical(), lhs.clone(), rhs.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let out = match (lhs, rhs) {
            (Subject::T(e), Subject::T(f)) => {
                let me = self.eval(e)?;
                let mf = self.eval(f)?;
                let relator = self.relator.clone();
                let ty = key.1.clone();
                apply_relator(&relator, q, &me, &mf, &mut |x, y| {
                    self.query(m - 1, &ty, &Subject::V(x.clone()), &Subject::V(y.clone()))
                })?
            }
            (Subject::V(v), Subject::V(w)) => self.value_clause(m, &key.1, v, w)?,
            _ => {
                return Err(Error::InvalidConfig(
                    "cannot compare a term with a value".to_string(),
                ))
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn value_clause(&mut self, m: u32, ty: &Type, v: &Value, w: &Value) -> Result<QuantaleElem> {
        let q = self.cfg.quantale;
        match ty {
            Type::Lolli(dom, cod) => {
                let probes = self.probes(dom, self.cfg.probe_depth as i64);
                let mut meets = Vec::new();
                for u in probes {
                    let a = Term::App(v.clone(), u.clone());
                    let b = Term::App(w.clone(), u);
                    meets.push(self.query(m - 1, cod, &Subject::T(a), &Subject::T(b))?);
                }
                q.meet(meets.iter())
            }
            Type::Sum(components) => match (v, w) {
                (Value::Inj(i, _, vi), Value::Inj(j, _, wj)) => {
                    if i != j {
                        Ok(q.bot())
                    } else {
                        let comp = components.get(*i).ok_or_else(|| {
                            Error::BadOperation("injection index out of range".to_string())
                        })?;
                        self.query(
                            m - 1,
                            comp,
                            &Subject::V(vi.as_ref().clone()),
                            &Subject::V(wj.as_ref().clone()),
                        )
                    }
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Mu(_, _) => match (v, w) {
                (Value::Fold(_, vi), Value::Fold(_, wi)) => {
                    let unfolded = ty.unfold_mu().expect("mu type");
                    self.query(
                        m - 1,
                        &unfolded,
                        &Subject::V(vi.as_ref().clone()),
                        &Subject::V(wi.as_ref().clone()),
                    )
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Bang(s, inner) => match (v, w) {
                (Value::Bang(vi), Value::Bang(wi)) => {
                    let base = self.query(
                        m - 1,
                        inner,
                        &Subject::V(vi.as_ref().clone()),
                        &Subject::V(wi.as_ref().clone()),
                    )?;
                    s.apply(&base)
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Var(_) => Err(Error::InvalidConfig("open type in a distance query".to_string())),
        }
    }

    /// True when every `(m, pair)` entry agrees with its `(m−1, pair)`
    /// counterpart wherever both were demanded, and every evaluation
    /// stabilized.
    fn stabilized(&self) -> bool {
        if self.unstable_evals > 0 {
            return false;
        }
        self.memo.iter().all(|((m, ty, a, b), value)| {
            if *m == 0 {
                return true;
            }
            match self.memo.get(&(m - 1, ty.clone(), a.clone(), b.clone())) {
                Some(prev) => prev == value,
                None => true,
            }
        })
    }

    fn term_distance_raw(
        &mut self,
        e: &Term,
        f: &Term,
        ty: &Type,
    ) -> Result<(QuantaleElem, Vec<QuantaleElem>)> {
        let lhs = Subject::T(e.canonical());
        let rhs = Subject::T(f.canonical());
        let mut trace = Vec::new();
        for m in 0..=self.cfg.iters {
            trace.push(self.query(m, ty, &lhs, &rhs)?);
        }
        Ok((trace.last().expect("iteration 0 always runs").clone(), trace))
    }

    fn value_distance_raw(
        &mut self,
        v: &Value,
        w: &Value,
        ty: &Type,
    ) -> Result<(QuantaleElem, Vec<QuantaleElem>)> {
        let lhs = Subject::V(v.canonical());
        let rhs = Subject::V(w.canonical());
        let mut trace = Vec::new();
        for m in 0..=self.cfg.iters {
            trace.push(self.query(m, ty, &lhs, &rhs)?);
        }
        Ok((trace.last().expect("iteration 0 always runs").clone(), trace))
    }
}

type ProbeCache = BTreeMap<(Type, i64), Vec<Value>>;

/// Deterministic probe enumeration for a closed type, with memoization. The
/// depth budget is consumed by μ-unfoldings and by arrow-result enumeration;
/// sums and bangs are structural. Recursive positions disappear at negative
/// depth, so `nat` probes at depth `d` reach exactly the numerals `0..=d`
/// (in both unit-leaf variants). Arrow types always contribute the identity
/// seed (when domain and codomain agree) and the constantly-divergent
/// function, plus constant functions onto the codomain's probes.
fn enumerate_probes(cache: &mut ProbeCache, ty: &Type, depth: i64) -> Vec<Value> {
    let key = (ty.canonical(), depth);
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let ty = key.0.clone();
    let mut out: Vec<Value> = Vec::new();
    let push = |v: Value, out: &mut Vec<Value>| {
        let v = v.canonical();
        if !out.contains(&v) {
            out.push(v);
        }
    };
    match &ty {
        Type::Var(_) => {}
        Type::Sum(components) => {
            for (i, comp) in components.iter().enumerate() {
                for w in enumerate_probes(cache, comp, depth) {
                    push(Value::inj(i, ty.clone(), w), &mut out);
                }
            }
        }
        Type::Mu(_, _) => {
            if depth >= 0 {
                let unfolded = ty.unfold_mu().expect("mu type");
                for w in enumerate_probes(cache, &unfolded, depth - 1) {
                    push(Value::fold(ty.clone(), w), &mut out);
                }
            }
        }
        Type::Bang(_, inner) => {
            for w in enumerate_probes(cache, inner, depth) {
                push(Value::bang(w), &mut out);
            }
        }
        Type::Lolli(dom, cod) => {
            if dom.alpha_eq(cod) {
                push(
                    Value::lam("x", dom.as_ref().clone(), Term::Return(Value::var("x"))),
                    &mut out,
                );
            }
            push(Value::lam("x", dom.as_ref().clone(), omega(cod)), &mut out);
            if depth >= 1 {
                for w in enumerate_probes(cache, cod, depth - 1) {
                    push(Value::lam("x", dom.as_ref().clone(), Term::Return(w)), &mut out);
                }
            }
        }
    }
    cache.insert(key, out.clone());
    out
}

fn shape_error(ty: &Type, v: &Value, w: &Value) -> Error {
    Error::TypeMismatch {
        expected: crate::syntax::print_type(ty),
        found: format!("{} / {}", crate::syntax::print_value(v), crate::syntax::print_value(w)),
        context: "distance value clause".to_string(),
    }
}

fn check_query(q: &DistQuery) -> Result<()> {
    if !q.ty.is_closed() {
        return Err(Error::InvalidConfig("query type must be closed".to_string()));
    }
    q.cfg.sig.validate_term(&q.lhs)?;
    q.cfg.sig.validate_term(&q.rhs)?;
    typing::check(&q.lhs, &Env::new(), &q.ty)?;
    typing::check(&q.rhs, &Env::new(), &q.ty)?;
    Ok(())
}

/// Runs a distance query end to end: iterate the functional `iters` times
/// from the indiscrete relation and report the queried pair.
pub fn distance(q: &DistQuery) -> Result<DistOutcome> {
    check_query(q)?;
    match q.mode {
        Mode::Sim | Mode::Bisim => {
            let mut engine = Engine::new(q.cfg.clone(), q.mode)?;
            let (value, trace) = engine.term_distance_raw(&q.lhs, &q.rhs, &q.ty)?;
            Ok(DistOutcome { value, stabilized: engine.stabilized(), iterations: q.cfg.iters, trace })
        }
        Mode::TwoWay => {
            let mut engine = Engine::new(q.cfg.clone(), Mode::Sim)?;
            let (fwd, trace_f) = engine.term_distance_raw(&q.lhs, &q.rhs, &q.ty)?;
            let (bwd, trace_b) = engine.term_distance_raw(&q.rhs, &q.lhs, &q.ty)?;
            let quantale = q.cfg.quantale;
            let value = quantale.tensor(&fwd, &bwd)?;
            let trace = trace_f
                .iter()
                .zip(trace_b.iter())
                .map(|(a, b)| quantale.tensor(a, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(DistOutcome { value, stabilized: engine.stabilized(), iterations: q.cfg.iters, trace })
        }
    }
}

/// Distance between two closed values at a closed type.
pub fn value_distance(
    cfg: &DistConfig,
    mode: Mode,
    v: &Value,
    w: &Value,
    ty: &Type,
) -> Result<(QuantaleElem, bool)> {
    typing::check_value_judgment(v, &Env::new(), ty)?;
    typing::check_value_judgment(w, &Env::new(), ty)?;
    match mode {
        Mode::Sim | Mode::Bisim => {
            let mut engine = Engine::new(cfg.clone(), mode)?;
            let (value, _) = engine.value_distance_raw(v, w, ty)?;
            Ok((value, engine.stabilized()))
        }
        Mode::TwoWay => {
            let mut engine = Engine::new(cfg.clone(), Mode::Sim)?;
            let (fwd, _) = engine.value_distance_raw(v, w, ty)?;
            let (bwd, _) = engine.value_distance_raw(w, v, ty)?;
            Ok((cfg.quantale.tensor(&fwd, &bwd)?, engine.stabilized()))
        }
    }
}

/// Open extension: the meet over closing substitutions drawn from the probe
/// sets of the environment types (CBE annotations play no role here).
pub fn open_term_distance(
    cfg: &DistConfig,
    mode: Mode,
    env: &Env,
    e: &Term,
    f: &Term,
    ty: &Type,
) -> Result<(QuantaleElem, bool)> {
    let mut engine = Engine::new(cfg.clone(), if mode == Mode::TwoWay { Mode::Sim } else { mode })?;
    let subs = closing_substitutions(&mut engine, env)?;
    let quantale = cfg.quantale;
    let mut meets = Vec::new();
    for sub in &subs {
        let (mut ce, mut cf) = (e.clone(), f.clone());
        for (x, v) in sub {
            ce = crate::syntax::subst_term(&ce, x, v);
            cf = crate::syntax::subst_term(&cf, x, v);
        }
        let (d, _) = engine.term_distance_raw(&ce, &cf, ty)?;
        if mode == Mode::TwoWay {
            let (b, _) = engine.term_distance_raw(&cf, &ce, ty)?;
            meets.push(quantale.tensor(&d, &b)?);
        } else {
            meets.push(d);
        }
    }
    let value = quantale.meet(meets.iter())?;
    Ok((value, engine.stabilized()))
}

/// As [`open_term_distance`] for values.
pub fn open_value_distance(
    cfg: &DistConfig,
    mode: Mode,
    env: &Env,
    v: &Value,
    w: &Value,
    ty: &Type,
) -> Result<(QuantaleElem, bool)> {
    let mut engine = Engine::new(cfg.clone(), if mode == Mode::TwoWay { Mode::Sim } else { mode })?;
    let subs = closing_substitutions(&mut engine, env)?;
    let quantale = cfg.quantale;
    let mut meets = Vec::new();
    for sub in &subs {
        let (mut cv, mut cw) = (v.clone(), w.clone());
        for (x, u) in sub {
            cv = crate::syntax::subst_value(&cv, x, u);
            cw = crate::syntax::subst_value(&cw, x, u);
        }
        let (d, _) = engine.value_distance_raw(&cv, &cw, ty)?;
        if mode == Mode::TwoWay {
            let (b, _) = engine.value_distance_raw(&cw, &cv, ty)?;
            meets.push(quantale.tensor(&d, &b)?);
        } else {
            meets.push(d);
        }
    }
    let value = quantale.meet(meets.iter())?;
    Ok((value, engine.stabilized()))
}

fn closing_substitutions(
    engine: &mut Engine,
    env: &Env,
) -> Result<Vec<Vec<(crate::syntax::Name, Value)>>> {
    let depth = engine.cfg.probe_depth as i64;
    let mut subs: Vec<Vec<(crate::syntax::Name, Value)>> = alloc::vec![Vec::new()];
    for (x, (_, ty)) in env.iter() {
        let probes = engine.probes(ty, depth);
        if probes.is_empty() {
            // A variable of an uninhabited type: no closing substitution,
            // the meet over the empty set is k.
            return Ok(Vec::new());
        }
        let mut next = Vec::with_capacity(subs.len() * probes.len());
        for sub in &subs {
            for p in &probes {
                let mut extended = sub.clone();
                extended.push((x.clone(), p.clone()));
                next.push(extended);
            }
        }
        subs = next;
    }
    Ok(subs)
}

/// The boolean pipeline: applicative Δ_Γ-similarity with the kernel relator
/// and the modified bang clause `(φ · s · ψ) ∘ R`.
pub struct BoolEngine {
    cfg: DistConfig,
    relator: RelatorCfg,
    evaluator: Evaluator,
    memo: BTreeMap<Key, bool>,
    probe_cache: ProbeCache,
    unstable_evals: usize,
}

impl BoolEngine {
    pub fn new(cfg: DistConfig, mode: Mode) -> Result<BoolEngine> {
        cfg.validate()?;
        let relator = cfg.effective_relator(mode);
        let evaluator = Evaluator::new(cfg.sig.clone());
        Ok(BoolEngine {
            cfg,
            relator,
            evaluator,
            memo: BTreeMap::new(),
            probe_cache: BTreeMap::new(),
            unstable_evals: 0,
        })
    }

    fn probes(&mut self, ty: &Type, depth: i64) -> Vec<Value> {
        enumerate_probes(&mut self.probe_cache, ty, depth)
    }

    fn query(&mut self, m: u32, ty: &Type, lhs: &Subject, rhs: &Subject) -> Result<bool> {
        if m == 0 {
            return Ok(true);
        }
        let key = (m, ty.canonical(), lhs.clone(), rhs.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(*hit);
        }
        let out = match (lhs, rhs) {
            (Subject::T(e), Subject::T(f)) => {
                let (me, se) = self.evaluator.eval(e, self.cfg.budget)?;
                let (mf, sf) = self.evaluator.eval(f, self.cfg.budget)?;
                if !se {
                    self.unstable_evals += 1;
                }
                if !sf {
                    self.unstable_evals += 1;
                }
                let relator = self.relator.clone();
                let ty = key.1.clone();
                kernel_relator(&relator, self.cfg.quantale, &me, &mf, &mut |x, y| {
                    self.query(m - 1, &ty, &Subject::V(x.clone()), &Subject::V(y.clone()))
                })?
            }
            (Subject::V(v), Subject::V(w)) => self.value_clause(m, &key.1, v, w)?,
            _ => {
                return Err(Error::InvalidConfig(
                    "cannot compare a term with a value".to_string(),
                ))
            }
        };
        self.memo.insert(key, out);
        Ok(out)
    }

    fn value_clause(&mut self, m: u32, ty: &Type, v: &Value, w: &Value) -> Result<bool> {
        match ty {
            Type::Lolli(dom, cod) => {
                let probes = self.probes(dom, self.cfg.probe_depth as i64);
                for u in probes {
                    let a = Term::App(v.clone(), u.clone());
                    let b = Term::App(w.clone(), u);
                    if !self.query(m - 1, cod, &Subject::T(a), &Subject::T(b))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Type::Sum(components) => match (v, w) {
                (Value::Inj(i, _, vi), Value::Inj(j, _, wj)) => {
                    if i != j {
                        Ok(false)
                    } else {
                        self.query(
                            m - 1,
                            &components[*i],
                            &Subject::V(vi.as_ref().clone()),
                            &Subject::V(wj.as_ref().clone()),
                        )
                    }
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Mu(_, _) => match (v, w) {
                (Value::Fold(_, vi), Value::Fold(_, wi)) => {
                    let unfolded = ty.unfold_mu().expect("mu type");
                    self.query(
                        m - 1,
                        &unfolded,
                        &Subject::V(vi.as_ref().clone()),
                        &Subject::V(wi.as_ref().clone()),
                    )
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Bang(s, inner) => match (v, w) {
                (Value::Bang(vi), Value::Bang(wi)) => {
                    let base = self.query(
                        m - 1,
                        inner,
                        &Subject::V(vi.as_ref().clone()),
                        &Subject::V(wi.as_ref().clone()),
                    )?;
                    // (φ · s · ψ) ∘ R in the original quantale.
                    let q = self.cfg.quantale;
                    let scaled = s.apply(&q.psi(base))?;
                    q.phi(&scaled)
                }
                _ => Err(shape_error(ty, v, w)),
            },
            Type::Var(_) => Err(Error::InvalidConfig("open type in a distance query".to_string())),
        }
    }

    fn stabilized(&self) -> bool {
        if self.unstable_evals > 0 {
            return false;
        }
        self.memo.iter().all(|((m, ty, a, b), value)| {
            if *m == 0 {
                return true;
            }
            match self.memo.get(&(m - 1, ty.clone(), a.clone(), b.clone())) {
                Some(prev) => prev == value,
                None => true,
            }
        })
    }
}

/// Runs the boolean Δ_Γ pipeline on a closed term pair.
pub fn boolean_similarity(q: &DistQuery) -> Result<(bool, bool)> {
    check_query(q)?;
    let mut engine = BoolEngine::new(q.cfg.clone(), q.mode)?;
    let lhs = Subject::T(q.lhs.canonical());
    let rhs = Subject::T(q.rhs.canonical());
    let mut out = true;
    for m in 0..=q.cfg.iters {
        out = engine.query(m, &q.ty, &lhs, &rhs)?;
    }
    Ok((out, engine.stabilized()))
}

/// Report of a kernel-agreement check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub agree: bool,
    pub kernel_of_distance: bool,
    pub boolean: bool,
    pub stabilized: bool,
}

/// Checks that the kernel of the quantitative pipeline agrees with the
/// boolean pipeline at identical budgets: `φ(δ(e,f)) == (e ≼ f)`.
pub fn kernel_check(q: &DistQuery) -> Result<KernelReport> {
    let quant = distance(q)?;
    let kernel_of_dist = q.cfg.quantale.phi(&quant.value)?;
    let (boolean, bool_stab) = boolean_similarity(q)?;
    Ok(KernelReport {
        agree: kernel_of_dist == boolean,
        kernel_of_distance: kernel_of_dist,
        boolean,
        stabilized: quant.stabilized && bool_stab,
    })
}

/// Report of an adequacy check on the subdistribution monad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequacyReport {
    pub holds: bool,
    pub mass_lhs: BigRational,
    pub mass_rhs: BigRational,
    pub distance: BigRational,
    pub stabilized: bool,
}

/// Adequacy on the subdistribution monad: the truncated difference of
/// convergence masses bounds the reported distance from below.
pub fn adequacy_check(q: &DistQuery) -> Result<AdequacyReport> {
    if q.cfg.sig.monad != MonadTag::SubDist || q.cfg.quantale != Quantale::UnitInterval {
        return Err(Error::InvalidConfig(
            "adequacy is stated for the subdistribution monad over the unit interval".to_string(),
        ));
    }
    let outcome = distance(q)?;
    let mut evaluator = Evaluator::new(q.cfg.sig.clone());
    let (me, _) = evaluator.eval(&q.lhs, q.cfg.budget)?;
    let (mf, _) = evaluator.eval(&q.rhs, q.cfg.budget)?;
    let mass_lhs = me.convergence_mass()?;
    let mass_rhs = mf.convergence_mass()?;
    let diff = if mass_lhs > mass_rhs {
        &mass_lhs - &mass_rhs
    } else {
        BigRational::from_integer(0.into())
    };
    let value = outcome
        .value
        .as_finite()
        .cloned()
        .ok_or_else(|| Error::InvalidConfig("non-finite unit-interval distance".to_string()))?;
    Ok(AdequacyReport {
        holds: diff <= value,
        mass_lhs,
        mass_rhs,
        distance: value,
        stabilized: outcome.stabilized,
    })
}

/// Report of a metric-preservation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricPreservationReport {
    pub holds: bool,
    pub lhs: QuantaleElem,
    pub rhs: QuantaleElem,
    pub stabilized: bool,
}

/// Metric preservation: `s₁∘δᵛ(v₁,w₁) ⊗ ⋯ ⊗ sₙ∘δᵛ(vₙ,wₙ) ≤
/// δᵗ(e[x⃗:=v⃗], e[x⃗:=w⃗])` at the approximants.
pub fn metric_preservation_check(
    cfg: &DistConfig,
    mode: Mode,
    env: &Env,
    e: &Term,
    vs: &[(crate::syntax::Name, Value)],
    ws: &[(crate::syntax::Name, Value)],
    ty: &Type,
) -> Result<MetricPreservationReport> {
    typing::check(e, env, ty)?;
    let quantale = cfg.quantale;
    let mut lhs = quantale.unit();
    let mut stabilized = true;
    for ((x, v), (x2, w)) in vs.iter().zip(ws.iter()) {
        if x != x2 {
            return Err(Error::InvalidConfig("substitution vectors disagree on names".to_string()));
        }
        let (s, var_ty) = env.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?.clone();
        let (d, stab) = value_distance(cfg, mode, v, w, &var_ty)?;
        stabilized &= stab;
        lhs = quantale.tensor(&lhs, &s.apply(&d)?)?;
    }
    let mut el = e.clone();
    let mut er = e.clone();
    for (x, v) in vs {
        el = crate::syntax::subst_term(&el, x, v);
    }
    for (x, w) in ws {
        er = crate::syntax::subst_term(&er, x, w);
    }
    let query = DistQuery { lhs: el, rhs: er, ty: ty.clone(), mode, cfg: cfg.clone() };
    let outcome = distance(&query)?;
    stabilized &= outcome.stabilized;
    Ok(MetricPreservationReport {
        holds: quantale.leq(&lhs, &outcome.value)?,
        lhs,
        rhs: outcome.value,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{identity_term, nat_type, numeral, unit_type, OpSym};
    use num_traits::One;

    fn flagship_cfg() -> DistConfig {
        DistConfig {
            quantale: Quantale::UnitInterval,
            relator: RelatorCfg::WassersteinBot,
            sig: EffectSig::pure_monad(MonadTag::SubDist),
            budget: 8,
            iters: 4,
            probe_depth: 2,
        }
    }

    fn half_elem() -> QuantaleElem {
        Quantale::UnitInterval.elem_num(crate::rational::ExtRat::from_ratio(1, 2)).unwrap()
    }

    #[test]
    fn probes_of_nat_contain_the_numerals() {
        let mut engine = Engine::new(flagship_cfg(), Mode::Sim).unwrap();
        let probes = engine.probes(&nat_type(), 3);
        for n in 0..=3u64 {
            assert!(probes.iter().any(|p| p.alpha_eq(&numeral(n))), "missing numeral {n}");
        }
        for p in &probes {
            assert!(matches!(p, Value::Fold(_, _)));
        }
        assert!(!probes.iter().any(|p| p.alpha_eq(&numeral(4))));
    }

    #[test]
    fn probes_of_small_types() {
        let mut engine = Engine::new(flagship_cfg(), Mode::Sim).unwrap();
        let two_units = Type::Sum(alloc::vec![unit_type(), unit_type()]);
        let probes = engine.probes(&two_units, 1);
        assert!(probes.iter().any(|p| matches!(p, Value::Inj(0, _, _))));
        assert!(probes.iter().any(|p| matches!(p, Value::Inj(1, _, _))));
        assert!(engine.probes(&Type::Sum(Vec::new()), 5).is_empty());
    }

    #[test]
    fn flagship_distance_is_exactly_one_half() {
        let ty = Type::lolli(unit_type(), unit_type());
        let lhs = identity_term(&unit_type());
        let rhs = Term::Op(OpSym::Choice(None), alloc::vec![lhs.clone(), omega(&ty)]);
        for mode in [Mode::Sim, Mode::Bisim] {
            let q = DistQuery {
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                ty: ty.clone(),
                mode,
                cfg: flagship_cfg(),
            };
            let out = distance(&q).unwrap();
            assert_eq!(out.value, half_elem(), "mode {mode:?}");
            assert!(out.stabilized, "mode {mode:?}");
        }
    }

    #[test]
    fn twoway_mode_tensors_both_directions() {
        let ty = Type::lolli(unit_type(), unit_type());
        let lhs = identity_term(&unit_type());
        let rhs = Term::Op(OpSym::Choice(None), alloc::vec![lhs.clone(), omega(&ty)]);
        let q = DistQuery {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            ty: ty.clone(),
            mode: Mode::TwoWay,
            cfg: flagship_cfg(),
        };
        let out = distance(&q).unwrap();
        // Forward costs 1/2, backward is free (divergence mass on the left
        // pairs at no cost), so the tensor is 1/2.
        assert_eq!(out.value, half_elem());
        let swapped = DistQuery { lhs: rhs, rhs: lhs, ..q };
        assert_eq!(distance(&swapped).unwrap().value, half_elem());
    }

    #[test]
    fn diagonal_distance_is_unit() {
        let ty = nat_type();
        let e = Term::Return(numeral(2));
        let q = DistQuery { lhs: e.clone(), rhs: e, ty, mode: Mode::Sim, cfg: flagship_cfg() };
        let out = distance(&q).unwrap();
        assert_eq!(out.value, Quantale::UnitInterval.unit());
        assert!(out.stabilized);
    }

    #[test]
    fn distinct_numerals_are_at_distance_one() {
        let q = DistQuery {
            lhs: Term::Return(numeral(0)),
            rhs: Term::Return(numeral(1)),
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: flagship_cfg(),
        };
        let out = distance(&q).unwrap();
        assert_eq!(out.value, Quantale::UnitInterval.bot());
    }

    #[test]
    fn trace_is_antitone_in_the_quantale_order() {
        let ty = Type::lolli(unit_type(), unit_type());
        let lhs = identity_term(&unit_type());
        let rhs = Term::Op(OpSym::Choice(None), alloc::vec![lhs.clone(), omega(&ty)]);
        let q = DistQuery { lhs, rhs, ty, mode: Mode::Sim, cfg: flagship_cfg() };
        let out = distance(&q).unwrap();
        let quantale = Quantale::UnitInterval;
        for pair in out.trace.windows(2) {
            assert!(quantale.leq(&pair[1], &pair[0]).unwrap());
        }
    }

    #[test]
    fn kernel_agreement_on_identity_and_omega() {
        let ty = unit_type();
        let cfg = DistConfig {
            quantale: Quantale::UnitInterval,
            relator: RelatorCfg::WassersteinBot,
            sig: EffectSig::pure_monad(MonadTag::SubDist),
            budget: 8,
            iters: 3,
            probe_depth: 1,
        };
        let arrow = Type::lolli(ty.clone(), ty.clone());
        let i = identity_term(&ty);
        let q = DistQuery {
            lhs: i.clone(),
            rhs: i.clone(),
            ty: arrow.clone(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        let report = kernel_check(&q).unwrap();
        assert!(report.agree);
        assert!(report.boolean);
        let q = DistQuery { lhs: i, rhs: omega(&arrow), ty: arrow, mode: Mode::Sim, cfg };
        let report = kernel_check(&q).unwrap();
        assert!(report.agree);
        assert!(!report.boolean);
    }

    #[test]
    fn adequacy_on_the_flagship_pair() {
        let ty = Type::lolli(unit_type(), unit_type());
        let lhs = identity_term(&unit_type());
        let rhs = Term::Op(OpSym::Choice(None), alloc::vec![lhs.clone(), omega(&ty)]);
        let q = DistQuery { lhs, rhs, ty, mode: Mode::Sim, cfg: flagship_cfg() };
        let report = adequacy_check(&q).unwrap();
        assert!(report.holds);
        assert_eq!(report.mass_lhs, BigRational::one());
        assert_eq!(report.mass_rhs, BigRational::new(1.into(), 2.into()));
        assert_eq!(report.distance, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn metric_preservation_with_unused_variable_is_trivial() {
        let cfg = flagship_cfg();
        let env = Env::new().bind("x", crate::quantale::Cbe::zero(), nat_type());
        let e = Term::Return(numeral(0));
        let vs = alloc::vec![("x".to_string(), numeral(1))];
        let ws = alloc::vec![("x".to_string(), numeral(2))];
        let report =
            metric_preservation_check(&cfg, Mode::Sim, &env, &e, &vs, &ws, &nat_type()).unwrap();
        assert!(report.holds);
        assert_eq!(report.lhs, Quantale::UnitInterval.unit());
    }

    #[test]
    fn open_distance_closes_with_probes() {
        let cfg = flagship_cfg();
        let env = Env::new().bind("x", crate::quantale::Cbe::one(), nat_type());
        let e = Term::Return(Value::var("x"));
        let (d, _) = open_term_distance(&cfg, Mode::Sim, &env, &e, &e, &nat_type()).unwrap();
        assert_eq!(d, Quantale::UnitInterval.unit());
    }

    #[test]
    fn value_clause_bottoms_out_on_mismatched_injections() {
        let cfg = flagship_cfg();
        let sum2 = Type::Sum(alloc::vec![nat_type(), nat_type()]);
        let a = Value::inj(0, sum2.clone(), numeral(0));
        let b = Value::inj(1, sum2.clone(), numeral(0));
        let (d, _) = value_distance(&cfg, Mode::Sim, &a, &b, &sum2).unwrap();
        assert_eq!(d, Quantale::UnitInterval.bot());
    }

    #[test]
    fn hausdorff_similarity_is_asymmetric_on_the_powerset_monad() {
        let cfg = DistConfig {
            quantale: Quantale::UnitInterval,
            relator: RelatorCfg::Hausdorff,
            sig: EffectSig::pure_monad(MonadTag::Powerset),
            budget: 6,
            iters: 3,
            probe_depth: 1,
        };
        let both = Term::Op(
            OpSym::Choice(None),
            alloc::vec![Term::Return(numeral(0)), Term::Return(numeral(1))],
        );
        let zero = Term::Return(numeral(0));
        let q = DistQuery {
            lhs: zero.clone(),
            rhs: both.clone(),
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        // {0} is simulated by {0,1} at no cost.
        assert_eq!(distance(&q).unwrap().value, Quantale::UnitInterval.unit());
        // {0,1} is not simulated by {0}: the 1 side has no cheap partner.
        let q = DistQuery { lhs: both, rhs: zero, ty: nat_type(), mode: Mode::Sim, cfg };
        assert_eq!(distance(&q).unwrap().value, Quantale::UnitInterval.bot());
    }

    #[test]
    fn state_distance_detects_a_differing_write() {
        let sig = EffectSig::new(MonadTag::State, alloc::vec!["l".to_string()]).unwrap();
        let cfg = DistConfig {
            quantale: Quantale::UnitInterval,
            relator: RelatorCfg::StateComposite,
            sig,
            budget: 6,
            iters: 3,
            probe_depth: 1,
        };
        let write0 = Term::Op(OpSym::Set0("l".to_string()), alloc::vec![Term::Return(numeral(0))]);
        let write1 = Term::Op(OpSym::Set1("l".to_string()), alloc::vec![Term::Return(numeral(0))]);
        let q = DistQuery {
            lhs: write0.clone(),
            rhs: write1,
            ty: nat_type(),
            mode: Mode::Bisim,
            cfg: cfg.clone(),
        };
        assert_eq!(distance(&q).unwrap().value, Quantale::UnitInterval.bot());
        let q = DistQuery { lhs: write0.clone(), rhs: write0, ty: nat_type(), mode: Mode::Bisim, cfg };
        let out = distance(&q).unwrap();
        assert_eq!(out.value, Quantale::UnitInterval.unit());
        assert!(out.stabilized);
    }

    #[test]
    fn bang_clause_scales_by_the_annotation() {
        let cfg = flagship_cfg();
        let ty = Type::bang(crate::typing::cbe_of_rational(1, 2), nat_type());
        let (d, _) = value_distance(
            &cfg,
            Mode::Sim,
            &Value::bang(numeral(0)),
            &Value::bang(numeral(1)),
            &ty,
        )
        .unwrap();
        assert_eq!(d, half_elem());
    }

    #[test]
    fn ill_typed_queries_are_rejected() {
        let cfg = flagship_cfg();
        // Type mismatch between the subjects and the declared type.
        let q = DistQuery {
            lhs: Term::Return(numeral(0)),
            rhs: identity_term(&unit_type()),
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        assert!(distance(&q).is_err());
        // Relator/monad mismatch is caught at configuration time.
        let bad = DistConfig { relator: RelatorCfg::Hausdorff, ..cfg.clone() };
        assert!(bad.validate().is_err());
        // Wasserstein liftings demand the unit-interval quantale.
        let bad = DistConfig { quantale: Quantale::Lawvere, ..cfg };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn goedel_tnorm_with_hausdorff_runs_end_to_end() {
        // Integer sensitivities act as tensor powers on t-norms; for the
        // Gödel t-norm the square is the identity, so distances pass through.
        let q = Quantale::TNorm(crate::quantale::TNormKind::Goedel);
        let cfg = DistConfig {
            quantale: q,
            relator: RelatorCfg::Hausdorff,
            sig: EffectSig::pure_monad(MonadTag::Powerset),
            budget: 6,
            iters: 4,
            probe_depth: 1,
        };
        let ty = Type::bang(crate::quantale::Cbe::from_int(2), nat_type());
        let (d, _) = value_distance(
            &cfg,
            Mode::Sim,
            &Value::bang(numeral(1)),
            &Value::bang(numeral(1)),
            &ty,
        )
        .unwrap();
        assert_eq!(d, q.unit());
        let (d, _) = value_distance(
            &cfg,
            Mode::Sim,
            &Value::bang(numeral(0)),
            &Value::bang(numeral(1)),
            &ty,
        )
        .unwrap();
        assert_eq!(d, q.bot());
        // Fractional sensitivities are not representable on t-norms.
        let frac = Type::bang(crate::typing::cbe_of_rational(1, 2), nat_type());
        assert!(value_distance(
            &cfg,
            Mode::Sim,
            &Value::bang(numeral(0)),
            &Value::bang(numeral(1)),
            &frac,
        )
        .is_err());
    }
}
