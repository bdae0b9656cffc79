//! Property suites for the language side: syntax round trips, sensitivity
//! inference, monad laws, evaluation, and the behavioural-distance checks
//! (diagonal/symmetry/transitivity, adequacy, kernel agreement, the
//! compatibility clauses, and metric preservation).

use super::gen::{self, Rng};
use super::{CheckResult, SuiteReport};
use crate::distance::{
    adequacy_check, distance, kernel_check, metric_preservation_check, open_term_distance,
    open_value_distance, value_distance, DistConfig, DistQuery, Mode,
};
use crate::effects::{self, EffectSig, MonadTag};
use crate::quantale::{Cbe, Quantale, QuantaleElem, SigmaOpInterp};
use crate::relators::RelatorCfg;
use crate::syntax::{
    nat_type, numeral, omega, parse_term, print_term, subst_term, unit_type, OpSym, Term, Type,
    Value,
};
use crate::typing::{self, Env};
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;


pub fn syntax_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut round_trip = CheckResult::new("print-parse-round-trip");
    let mut fv_account = CheckResult::new("free-variable-accounting");
    let mut subst_commute = CheckResult::new("substitutions-commute");
    for _ in 0..1000 * scale as usize {
        let t = gen::gen_raw_term(&mut rng, 3);
        let printed = print_term(&t);
        round_trip.record(match parse_term(&printed) {
            Ok(back) => back.alpha_eq(&t),
            Err(_) => false,
        });
    }
    for _ in 0..300 * scale as usize {
        let t = gen::gen_raw_term(&mut rng, 3);
        let closed = numeral(rng.below(3));
        let fv = t.free_vars();
        let after = subst_term(&t, "x", &closed);
        let mut expected = fv.clone();
        expected.remove("x");
        fv_account.record(after.free_vars() == expected);
        // Substituting distinct variables with closed values commutes.
        let closed2 = numeral(rng.below(3));
        let ab = subst_term(&subst_term(&t, "x", &closed), "y", &closed2);
        let ba = subst_term(&subst_term(&t, "y", &closed2), "x", &closed);
        subst_commute.record(ab == ba);
    }
    SuiteReport {
        suite: "syntax".to_string(),
        seed,
        checks: vec![round_trip, fv_account, subst_commute],
    }
}

/// Open `nat`-typed term templates over the scope `{var : nat}`.
fn open_nat_term_over(rng: &mut Rng, sig: &EffectSig, var: &str) -> Term {
    match rng.below(6) {
        0 => Term::Return(Value::var(var)),
        1 => gen::pred_term(Value::var(var)),
        2 => Term::let_in("z", Term::Return(Value::var(var)), Term::Return(Value::var("z"))),
        3 => Term::App(
            Value::lam("y", nat_type(), Term::Return(Value::var("y"))),
            Value::var(var),
        ),
        4 => Term::Return(numeral(rng.below(3))),
        _ => match sig.monad {
            MonadTag::SubDist => Term::Op(
                OpSym::Choice(Some(rng.probability())),
                vec![Term::Return(Value::var(var)), Term::Return(numeral(rng.below(3)))],
            ),
            _ => Term::Return(Value::var(var)),
        },
    }
}

fn open_nat_term(rng: &mut Rng, sig: &EffectSig) -> Term {
    open_nat_term_over(rng, sig, "x")
}

pub fn typing_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let sig = EffectSig::pure_monad(MonadTag::SubDist);
    let mut minimal = CheckResult::new("inferred-demand-is-minimal");
    let mut declarative = CheckResult::new("declarative-env-reconstruction");
    let mut typable = CheckResult::new("generated-programs-type-check");
    let mut canonical = CheckResult::new("canonical-forms");
    let scope: BTreeMap<crate::syntax::Name, Type> =
        [("x".to_string(), nat_type())].into_iter().collect();
    for _ in 0..200 * scale as usize {
        let e = open_nat_term(&mut rng, &sig);
        let Ok((ty, d)) = typing::infer_term(&e, &scope) else {
            minimal.record(false);
            continue;
        };
        // Declared = inferred passes; any single decrease fails.
        let declared = Env::new().bind("x", d.get("x"), nat_type());
        let mut ok = typing::check(&e, &declared, &ty).is_ok();
        let s = d.get("x");
        if !s.scalar().is_zero() {
            let lowered = if s.scalar().is_infinite() {
                Cbe::from_int(1_000_000)
            } else {
                Cbe::new(s.scalar().mul(&crate::rational::ExtRat::from_ratio(1, 2)))
            };
            let lowered_env = Env::new().bind("x", lowered, nat_type());
            ok &= typing::check(&e, &lowered_env, &ty).is_err();
        }
        minimal.record(ok);
        declarative.record(declarative_env_matches(&e, &scope).unwrap_or(false));
    }
    for _ in 0..200 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &sig, 3);
        typable.record(typing::check(&e, &Env::new(), &nat_type()).is_ok());
    }
    for ty in [nat_type(), unit_type(), Type::bang(Cbe::from_int(2), nat_type())] {
        for _ in 0..50 * scale as usize {
            if let Some(v) = gen::gen_value_of_type(&mut rng, &ty) {
                canonical.record(typing::canonical_form(&v, &ty));
            }
        }
        // I and Ω inhabit their stated types.
        let i = crate::syntax::identity_term(&ty);
        canonical
            .record(typing::check(&i, &Env::new(), &Type::lolli(ty.clone(), ty.clone())).is_ok());
        canonical.record(typing::check(&omega(&ty), &Env::new(), &ty).is_ok());
    }
    SuiteReport {
        suite: "typing".to_string(),
        seed,
        checks: vec![minimal, declarative, typable, canonical],
    }
}

/// Rebuilds the environment of the judgment rule by rule using the
/// *environment* algebra (scale/tensor/op on `Env`) rather than the demand
/// arithmetic, and compares with the inferred demand.
fn declarative_env_matches(e: &Term, scope: &BTreeMap<crate::syntax::Name, Type>) -> Result<bool> {
    let (ty, demand) = typing::infer_term(e, scope)?;
    let env = declarative_env_term(e, scope)?;
    // Same type through check mode.
    typing::check_term(e, scope, &ty)?;
    // Every demanded variable appears with the same scalar in the
    // reconstructed environment; padded entries are 0.
    for (x, s) in demand.iter() {
        match env.get(x) {
            Some((s2, _)) if s2 == s => {}
            _ => return Ok(false),
        }
    }
    for (x, (s, _)) in env.iter() {
        if demand.get(x) != s.clone() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn declarative_env_value(
    v: &Value,
    scope: &BTreeMap<crate::syntax::Name, Type>,
) -> Result<Env> {
    match v {
        Value::Var(x) => {
            let ty = scope
                .get(x)
                .ok_or_else(|| crate::Error::UnboundVariable(x.clone()))?
                .clone();
            Ok(Env::new().bind(x, Cbe::one(), ty))
        }
        Value::Lam(x, ty, body) => {
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty.clone());
            let env = declarative_env_term(body, &inner)?;
            Ok(drop_binding(env, x))
        }
        Value::Inj(_, _, w) | Value::Fold(_, w) => declarative_env_value(w, scope),
        Value::Bang(w) => {
            // Synthesis mode: bare bangs carry sensitivity 1, so s·Γ = Γ.
            declarative_env_value(w, scope)
        }
    }
}

fn declarative_env_term(e: &Term, scope: &BTreeMap<crate::syntax::Name, Type>) -> Result<Env> {
    match e {
        Term::Return(v) => declarative_env_value(v, scope),
        Term::App(v, w) => {
            let g = declarative_env_value(v, scope)?;
            let d = declarative_env_apply_arg(v, w, scope)?;
            typing::env_tensor(&g, &d)
        }
        Term::Let(x, e1, e2) => {
            let g = declarative_env_term(e1, scope)?;
            let (ty1, _) = typing::infer_term(e1, scope)?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), ty1);
            let d = declarative_env_term(e2, &inner)?;
            let s = d.get(x).map(|(s, _)| s.clone()).unwrap_or_else(Cbe::zero);
            let scaled = typing::env_scale(&s.meet(&Cbe::one()), &g);
            typing::env_tensor(&scaled, &drop_binding(d, x))
        }
        Term::CaseBang(v, x, body) => {
            let g = declarative_env_value(v, scope)?;
            let (vty, _) = typing::infer_value(v, scope)?;
            let Type::Bang(_, inner_ty) = vty else {
                return Err(crate::Error::InvalidConfig("case! scrutinee".to_string()));
            };
            let mut inner = scope.clone();
            inner.insert(x.clone(), *inner_ty);
            let d = declarative_env_term(body, &inner)?;
            // Reuse the checker's division to find the rule's s, then apply
            // the declarative formula s·Γ ⊗ Δ.
            let (_, demand) = typing::infer_term(e, scope)?;
            let s = rule_scale_from(&demand, &g);
            let scaled = typing::env_scale(&s, &g);
            typing::env_tensor(&scaled, &drop_binding(d, x))
        }
        Term::CaseFold(v, x, body) => {
            let g = declarative_env_value(v, scope)?;
            let (vty, _) = typing::infer_value(v, scope)?;
            let unfolded = vty
                .unfold_mu()
                .ok_or_else(|| crate::Error::InvalidConfig("casefold scrutinee".to_string()))?;
            let mut inner = scope.clone();
            inner.insert(x.clone(), unfolded);
            let d = declarative_env_term(body, &inner)?;
            let s = d.get(x).map(|(s, _)| s.clone()).unwrap_or_else(Cbe::zero);
            let scaled = typing::env_scale(&s, &g);
            typing::env_tensor(&scaled, &drop_binding(d, x))
        }
        Term::CaseSum(v, branches) => {
            let g = declarative_env_value(v, scope)?;
            let (vty, _) = typing::infer_value(v, scope)?;
            let Type::Sum(components) = vty else {
                return Err(crate::Error::InvalidConfig("case scrutinee".to_string()));
            };
            let mut s = Cbe::zero();
            let mut merged: Option<Env> = None;
            for ((x, body), comp) in branches.iter().zip(components) {
                let mut inner = scope.clone();
                inner.insert(x.clone(), comp);
                let d = declarative_env_term(body, &inner)?;
                s = s.meet(&d.get(x).map(|(s, _)| s.clone()).unwrap_or_else(Cbe::zero));
                let d = drop_binding(d, x);
                merged = Some(match merged {
                    None => d,
                    Some(m) => env_meet(&m, &d)?,
                });
            }
            let scaled = typing::env_scale(&s, &g);
            typing::env_tensor(&scaled, &merged.unwrap_or_default())
        }
        Term::Op(op, args) => {
            let envs: Vec<Env> =
                args.iter().map(|a| declarative_env_term(a, scope)).collect::<Result<_>>()?;
            typing::env_op(&typing::op_interp_on_quantale(op), &envs)
        }
    }
}

/// Argument demand, read through check mode so bang annotations from the
/// function's domain type are honoured.
fn declarative_env_apply_arg(
    v: &Value,
    w: &Value,
    scope: &BTreeMap<crate::syntax::Name, Type>,
) -> Result<Env> {
    let (fn_ty, _) = typing::infer_value(v, scope)?;
    let Type::Lolli(dom, _) = fn_ty else {
        return Err(crate::Error::InvalidConfig("application head".to_string()));
    };
    let demand = typing::check_value(w, scope, &dom)?;
    let mut env = Env::new();
    for (x, s) in demand.iter() {
        let ty = scope
            .get(x)
            .ok_or_else(|| crate::Error::UnboundVariable(x.clone()))?
            .clone();
        env = env.bind(x, s.clone(), ty);
    }
    Ok(env)
}

fn rule_scale_from(demand: &typing::Demand, scrutinee_env: &Env) -> Cbe {
    // The rule's s is recoverable from any scrutinee variable with nonzero
    // demand: total = s·1. Fall back to 0 for closed scrutinees.
    for (x, (base, _)) in scrutinee_env.iter() {
        if !base.scalar().is_zero() {
            let total = demand.get(x);
            if let Some(q) = total.scalar().div(base.scalar()) {
                return Cbe::new(q);
            }
        }
    }
    Cbe::zero()
}

fn drop_binding(env: Env, x: &str) -> Env {
    let mut out = Env::new();
    for (y, (s, t)) in env.iter() {
        if y != x {
            out = out.bind(y, s.clone(), t.clone());
        }
    }
    out
}

fn env_meet(a: &Env, b: &Env) -> Result<Env> {
    let mut out = Env::new();
    for (x, (s, t)) in a.iter() {
        let other = b.get(x).map(|(s, _)| s.clone()).unwrap_or_else(Cbe::zero);
        out = out.bind(x, s.meet(&other), t.clone());
    }
    for (x, (s, t)) in b.iter() {
        if a.get(x).is_none() {
            out = out.bind(x, s.meet(&Cbe::zero()), t.clone());
        }
    }
    Ok(out)
}

pub fn effects_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let n = 150 * scale as usize;
    let atoms = 3u32;
    let mut unit_laws = CheckResult::new("monad-unit-laws");
    let mut assoc = CheckResult::new("kleisli-associativity");
    let mut algebraic = CheckResult::new("operations-are-algebraic");
    let mut monotone = CheckResult::new("kleisli-monotone");
    let mut mass = CheckResult::new("mass-conservation");
    let sigs = [
        EffectSig::pure_monad(MonadTag::Partial),
        EffectSig::pure_monad(MonadTag::Powerset),
        EffectSig::pure_monad(MonadTag::SubDist),
        EffectSig::new(MonadTag::State, vec!["l".to_string()]).expect("one location"),
    ];
    for sig in &sigs {
        for _ in 0..n {
            let m = gen::gen_mvalue(&mut rng, sig, atoms);
            let f: BTreeMap<u32, effects::MValue<u32>> =
                (0..atoms).map(|x| (x, gen::gen_mvalue(&mut rng, sig, atoms))).collect();
            let g: BTreeMap<u32, effects::MValue<u32>> =
                (0..atoms).map(|x| (x, gen::gen_mvalue(&mut rng, sig, atoms))).collect();
            unit_laws.record(check_unit_laws(sig, &m, &f).unwrap_or(false));
            assoc.record(check_assoc(sig, &m, &f, &g).unwrap_or(false));
            if let Some(op) = default_op(sig, &mut rng) {
                algebraic.record(check_algebraic(sig, &op, &m, &f, &mut rng).unwrap_or(false));
            }
            monotone.record(check_kleisli_monotone(sig, &m, &f, &mut rng, atoms).unwrap_or(false));
            if sig.monad == MonadTag::SubDist {
                let bound = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), &m)
                    .and_then(|out| Ok((out.convergence_mass()?, m.convergence_mass()?)))
                    .map(|(out, inp)| out <= inp)
                    .unwrap_or(false);
                mass.record(bound);
            }
        }
    }
    SuiteReport {
        suite: "effects".to_string(),
        seed,
        checks: vec![unit_laws, assoc, algebraic, monotone, mass],
    }
}

fn default_op(sig: &EffectSig, rng: &mut Rng) -> Option<OpSym> {
    match sig.monad {
        MonadTag::Partial => None,
        MonadTag::Powerset => Some(OpSym::Choice(None)),
        MonadTag::SubDist => Some(OpSym::Choice(Some(rng.probability()))),
        MonadTag::State => Some(match rng.below(3) {
            0 => OpSym::Get("l".to_string()),
            1 => OpSym::Set0("l".to_string()),
            _ => OpSym::Choice(Some(rng.probability())),
        }),
    }
}

fn check_unit_laws(
    sig: &EffectSig,
    m: &effects::MValue<u32>,
    f: &BTreeMap<u32, effects::MValue<u32>>,
) -> Result<bool> {
    // right unit: unit‡ m = m
    let right = effects::strong_kleisli(sig, |x| Ok(effects::unit(sig, *x)), m)? == *m;
    // left unit: f‡ (unit x) = f x
    let mut left = true;
    for x in f.keys() {
        let out = effects::strong_kleisli(sig, |y| Ok(f[y].clone()), &effects::unit(sig, *x))?;
        left &= out == f[x];
    }
    Ok(left && right)
}

fn check_assoc(
    sig: &EffectSig,
    m: &effects::MValue<u32>,
    f: &BTreeMap<u32, effects::MValue<u32>>,
    g: &BTreeMap<u32, effects::MValue<u32>>,
) -> Result<bool> {
    let fm = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), m)?;
    let lhs = effects::strong_kleisli(sig, |x| Ok(g[x].clone()), &fm)?;
    let rhs = effects::strong_kleisli(
        sig,
        |x| {
            let fx = f[x].clone();
            effects::strong_kleisli(sig, |y| Ok(g[y].clone()), &fx)
        },
        m,
    )?;
    Ok(lhs == rhs)
}

fn check_algebraic(
    sig: &EffectSig,
    op: &OpSym,
    m: &effects::MValue<u32>,
    f: &BTreeMap<u32, effects::MValue<u32>>,
    rng: &mut Rng,
) -> Result<bool> {
    let n = gen::gen_mvalue(rng, sig, 3);
    let args = match op.arity() {
        1 => vec![m.clone()],
        _ => vec![m.clone(), n],
    };
    let lhs = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), &effects::op_interp(op, &args, sig)?)?;
    let mapped: Vec<effects::MValue<u32>> = args
        .iter()
        .map(|a| effects::strong_kleisli(sig, |x| Ok(f[x].clone()), a))
        .collect::<Result<_>>()?;
    let rhs = effects::op_interp(op, &mapped, sig)?;
    Ok(lhs == rhs)
}

fn check_kleisli_monotone(
    sig: &EffectSig,
    m: &effects::MValue<u32>,
    f: &BTreeMap<u32, effects::MValue<u32>>,
    rng: &mut Rng,
    atoms: u32,
) -> Result<bool> {
    let chain = gen::gen_chain(rng, sig, atoms, 3);
    let mut ok = true;
    // Monotone in the monadic argument.
    for pair in chain.windows(2) {
        let a = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), &pair[0])?;
        let b = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), &pair[1])?;
        ok &= effects::order_leq(&a, &b)?;
    }
    // Monotone in the function argument.
    let f2: BTreeMap<u32, effects::MValue<u32>> = f
        .iter()
        .map(|(x, v)| (*x, gen::grow_mvalue(rng, sig, atoms, v.clone())))
        .collect();
    let a = effects::strong_kleisli(sig, |x| Ok(f[x].clone()), m)?;
    let b = effects::strong_kleisli(sig, |x| Ok(f2[x].clone()), m)?;
    ok &= effects::order_leq(&a, &b)?;
    Ok(ok)
}

pub fn evaluation_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut monotone = CheckResult::new("index-monotonicity");
    let mut preserve = CheckResult::new("type-preservation");
    let sigs = [
        EffectSig::pure_monad(MonadTag::Partial),
        EffectSig::pure_monad(MonadTag::Powerset),
        EffectSig::pure_monad(MonadTag::SubDist),
        EffectSig::new(MonadTag::State, vec!["l".to_string()]).expect("one location"),
    ];
    let per_sig = (500 * scale as usize).div_ceil(sigs.len());
    for sig in &sigs {
        for _ in 0..per_sig {
            let e = gen::gen_nat_program(&mut rng, sig, 3);
            let mut ev = crate::evaluation::Evaluator::new(sig.clone());
            let ok = (|| -> Result<bool> {
                let mut prev = ev.eval_n(&e, 0)?;
                for n in 1..=12 {
                    let next = ev.eval_n(&e, n)?;
                    if !effects::order_leq(&prev, &next)? {
                        return Ok(false);
                    }
                    prev = next;
                }
                Ok(true)
            })()
            .unwrap_or(false);
            monotone.record(ok);
            let ok = (|| -> Result<bool> {
                let out = ev.eval_n(&e, 10)?;
                for v in out.support() {
                    typing::check_value_judgment(v, &Env::new(), &nat_type())?;
                }
                Ok(true)
            })()
            .unwrap_or(false);
            preserve.record(ok);
        }
    }
    SuiteReport { suite: "evaluation".to_string(), seed, checks: vec![monotone, preserve] }
}

fn small_cfg(monad: MonadTag) -> DistConfig {
    let (sig, relator) = match monad {
        MonadTag::Partial => (EffectSig::pure_monad(monad), RelatorCfg::Partiality),
        MonadTag::Powerset => (EffectSig::pure_monad(monad), RelatorCfg::Hausdorff),
        MonadTag::SubDist => (EffectSig::pure_monad(monad), RelatorCfg::WassersteinBot),
        MonadTag::State => (
            EffectSig::new(monad, vec!["l".to_string()]).expect("one location"),
            RelatorCfg::StateComposite,
        ),
    };
    DistConfig {
        quantale: Quantale::UnitInterval,
        relator,
        sig,
        budget: 6,
        iters: 2,
        probe_depth: 1,
    }
}

pub fn distance_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let cfg = small_cfg(MonadTag::SubDist);
    let mut diagonal = CheckResult::new("diagonal-is-unit");
    let mut antitone = CheckResult::new("iterates-descend");
    let mut probe_mono = CheckResult::new("probe-depth-monotone");
    let mut budget_mono = CheckResult::new("budget-monotone-on-stabilized");
    let mut symmetry = CheckResult::new("bisim-symmetry");
    let mut transitivity = CheckResult::new("transitivity-tensor");
    let quantale = Quantale::UnitInterval;

    for _ in 0..500 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let q = DistQuery {
            lhs: e.clone(),
            rhs: e,
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        match distance(&q) {
            Ok(out) => {
                if out.stabilized {
                    diagonal.record(out.value == quantale.unit());
                } else {
                    diagonal.inconclusive += 1;
                }
            }
            Err(_) => diagonal.record(false),
        }
    }

    for _ in 0..150 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let q = DistQuery {
            lhs: e.clone(),
            rhs: f.clone(),
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        match distance(&q) {
            Ok(out) => {
                let ok = out
                    .trace
                    .windows(2)
                    .all(|p| quantale.leq(&p[1], &p[0]).unwrap_or(false));
                antitone.record(ok);
                // Raising the probe depth cannot raise the value.
                let mut deeper = cfg.clone();
                deeper.probe_depth += 1;
                let q2 = DistQuery { cfg: deeper, ..q.clone() };
                match distance(&q2) {
                    Ok(out2) => {
                        probe_mono.record(quantale.leq(&out2.value, &out.value).unwrap_or(false))
                    }
                    Err(_) => probe_mono.record(false),
                }
                // Raising the budget cannot raise the value once every
                // evaluation stabilized at the lower budget.
                if out.stabilized {
                    let mut bigger = cfg.clone();
                    bigger.budget += 3;
                    let q3 = DistQuery { cfg: bigger, ..q.clone() };
                    match distance(&q3) {
                        Ok(out3) => budget_mono
                            .record(quantale.leq(&out3.value, &out.value).unwrap_or(false)),
                        Err(_) => budget_mono.record(false),
                    }
                } else {
                    budget_mono.inconclusive += 1;
                }
            }
            Err(_) => antitone.record(false),
        }
    }

    for _ in 0..200 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let fwd = DistQuery {
            lhs: e.clone(),
            rhs: f.clone(),
            ty: nat_type(),
            mode: Mode::Bisim,
            cfg: cfg.clone(),
        };
        let bwd = DistQuery { lhs: f, rhs: e, ..fwd.clone() };
        match (distance(&fwd), distance(&bwd)) {
            (Ok(a), Ok(b)) => {
                if a.stabilized && b.stabilized {
                    symmetry.record(a.value == b.value);
                } else {
                    symmetry.inconclusive += 1;
                }
            }
            _ => symmetry.record(false),
        }
    }

    for _ in 0..200 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let g = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let mk = |lhs: &Term, rhs: &Term| DistQuery {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            ty: nat_type(),
            mode: Mode::Sim,
            cfg: cfg.clone(),
        };
        match (distance(&mk(&e, &g)), distance(&mk(&e, &f)), distance(&mk(&f, &g))) {
            (Ok(eg), Ok(ef), Ok(fg)) => {
                if eg.stabilized && ef.stabilized && fg.stabilized {
                    let ok = (|| -> Result<bool> {
                        let tensor = quantale.tensor(&ef.value, &fg.value)?;
                        quantale.leq(&tensor, &eg.value)
                    })()
                    .unwrap_or(false);
                    transitivity.record(ok);
                } else {
                    transitivity.inconclusive += 1;
                }
            }
            _ => transitivity.record(false),
        }
    }

    SuiteReport {
        suite: "distance".to_string(),
        seed,
        checks: vec![diagonal, antitone, probe_mono, budget_mono, symmetry, transitivity],
    }
}

pub fn adequacy_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut bound = CheckResult::new("convergence-mass-bounds-distance");
    let mut cfg = small_cfg(MonadTag::SubDist);
    cfg.budget = 10;
    for _ in 0..300 * scale as usize {
        let e = gen::gen_nat_program(&mut rng, &cfg.sig, 3);
        let f = gen::gen_nat_program(&mut rng, &cfg.sig, 3);
        let q = DistQuery { lhs: e, rhs: f, ty: nat_type(), mode: Mode::Sim, cfg: cfg.clone() };
        match adequacy_check(&q) {
            Ok(report) => bound.record(report.holds),
            Err(_) => bound.record(false),
        }
    }
    SuiteReport { suite: "adequacy".to_string(), seed, checks: vec![bound] }
}

pub fn kernel_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut checks = Vec::new();
    for monad in [MonadTag::Partial, MonadTag::Powerset, MonadTag::SubDist, MonadTag::State] {
        let cfg = small_cfg(monad);
        let mut agree = CheckResult::new(&alloc::format!("{}-kernel-agreement", monad.name()));
        for _ in 0..200 * scale as usize {
            let e = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
            let f = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
            let q =
                DistQuery { lhs: e, rhs: f, ty: nat_type(), mode: Mode::Sim, cfg: cfg.clone() };
            match kernel_check(&q) {
                Ok(report) => {
                    if report.stabilized {
                        agree.record(report.agree);
                    } else {
                        agree.inconclusive += 1;
                    }
                }
                Err(_) => agree.record(false),
            }
        }
        checks.push(agree);
    }
    SuiteReport { suite: "kernel".to_string(), seed, checks }
}

/// One sampled filling of a compatibility clause, reduced to an inequality
/// between engine-computed approximants.
enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

fn record(check: &mut CheckResult, outcome: Outcome) {
    match outcome {
        Outcome::Holds => check.passed += 1,
        Outcome::Fails => check.failed += 1,
        Outcome::Inconclusive => check.inconclusive += 1,
    }
}

fn leq_outcome(
    q: Quantale,
    lhs: Result<(QuantaleElem, bool)>,
    rhs: Result<(QuantaleElem, bool)>,
) -> Outcome {
    match (lhs, rhs) {
        (Ok((l, sl)), Ok((r, sr))) => match q.leq(&l, &r) {
            Ok(true) => Outcome::Holds,
            Ok(false) if sl && sr => Outcome::Fails,
            Ok(false) => Outcome::Inconclusive,
            Err(_) => Outcome::Fails,
        },
        _ => Outcome::Fails,
    }
}

pub fn compat_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let mut cfg = small_cfg(MonadTag::SubDist);
    cfg.budget = 10;
    let quantale = cfg.quantale;
    let n = 50 * scale as usize;
    let nat = nat_type();
    let arrow = Type::lolli(nat.clone(), nat.clone());
    let scales = [Cbe::zero(), Cbe::one(), Cbe::from_int(2), crate::typing::cbe_of_rational(1, 2)];

    let mut c_var = CheckResult::new("clause-var");
    let mut c_lam = CheckResult::new("clause-lam");
    let mut c_app = CheckResult::new("clause-app");
    let mut c_inj = CheckResult::new("clause-inj");
    let mut c_casesum = CheckResult::new("clause-casesum");
    let mut c_return = CheckResult::new("clause-return");
    let mut c_let = CheckResult::new("clause-let");
    let mut c_bang = CheckResult::new("clause-bang");
    let mut c_casebang = CheckResult::new("clause-casebang");
    let mut c_fold = CheckResult::new("clause-fold");
    let mut c_casefold = CheckResult::new("clause-casefold");
    let mut c_op = CheckResult::new("clause-op");

    for _ in 0..n {
        // var: k ≤ (x :_s σ ⊢ α(x, x)).
        let env = Env::new().bind("x", scales[rng.below(4) as usize].clone(), nat.clone());
        let lhs = Ok((quantale.unit(), true));
        let rhs =
            open_value_distance(&cfg, Mode::Sim, &env, &Value::var("x"), &Value::var("x"), &nat);
        record(&mut c_var, leq_outcome(quantale, lhs, rhs));

        // lam: (x :_1 σ ⊢ α(e, f)) ≤ α(λx.e, λx.f).
        let e = open_nat_term(&mut rng, &cfg.sig);
        let f = open_nat_term(&mut rng, &cfg.sig);
        let env1 = Env::new().bind("x", Cbe::one(), nat.clone());
        let lhs = open_term_distance(&cfg, Mode::Sim, &env1, &e, &f, &nat);
        let rhs = value_distance(
            &cfg,
            Mode::Sim,
            &Value::lam("x", nat.clone(), e.clone()),
            &Value::lam("x", nat.clone(), f.clone()),
            &arrow,
        );
        record(&mut c_lam, leq_outcome(quantale, lhs, rhs));

        // app: α(v, v') ⊗ α(w, w') ≤ α(v w, v' w'), arguments within probes.
        let v = gen::gen_value_of_type(&mut rng, &arrow).expect("arrow values");
        let v2 = gen::gen_value_of_type(&mut rng, &arrow).expect("arrow values");
        let w = numeral(rng.below(2));
        let w2 = numeral(rng.below(2));
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (dv, sv) = value_distance(&cfg, Mode::Sim, &v, &v2, &arrow)?;
            let (dw, sw) = value_distance(&cfg, Mode::Sim, &w, &w2, &nat)?;
            Ok((quantale.tensor(&dv, &dw)?, sv && sw))
        })();
        let rhs = dist_pair(&cfg, &Term::App(v, w), &Term::App(v2, w2), &nat);
        record(&mut c_app, leq_outcome(quantale, lhs, rhs));

        // inj / casesum over sum{nat, nat}.
        let sum2 = Type::Sum(vec![nat.clone(), nat.clone()]);
        let idx = rng.below(2) as usize;
        let a = numeral(rng.below(3));
        let b = numeral(rng.below(3));
        let ia = Value::inj(idx, sum2.clone(), a.clone());
        let ib = Value::inj(idx, sum2.clone(), b.clone());
        let lhs = value_distance(&cfg, Mode::Sim, &a, &b, &nat);
        let rhs = value_distance(&cfg, Mode::Sim, &ia, &ib, &sum2);
        record(&mut c_inj, leq_outcome(quantale, lhs, rhs));

        let s = scales[1 + rng.below(2) as usize].clone();
        let branches_e = vec![
            ("x".to_string(), open_nat_term(&mut rng, &cfg.sig)),
            ("x".to_string(), open_nat_term(&mut rng, &cfg.sig)),
        ];
        let branches_f = vec![
            ("x".to_string(), open_nat_term(&mut rng, &cfg.sig)),
            ("x".to_string(), open_nat_term(&mut rng, &cfg.sig)),
        ];
        let env_s = Env::new().bind("x", s.clone(), nat.clone());
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (d_scrut, s1) = value_distance(&cfg, Mode::Sim, &ia, &ib, &sum2)?;
            let (d_branch, s2) = open_term_distance(
                &cfg,
                Mode::Sim,
                &env_s,
                &branches_e[idx].1,
                &branches_f[idx].1,
                &nat,
            )?;
            Ok((quantale.tensor(&s.apply(&d_scrut)?, &d_branch)?, s1 && s2))
        })();
        let rhs = dist_pair(
            &cfg,
            &Term::CaseSum(ia.clone(), branches_e.clone()),
            &Term::CaseSum(ib.clone(), branches_f.clone()),
            &nat,
        );
        record(&mut c_casesum, leq_outcome(quantale, lhs, rhs));

        // return.
        let a = numeral(rng.below(3));
        let b = numeral(rng.below(3));
        let lhs = value_distance(&cfg, Mode::Sim, &a, &b, &nat);
        let rhs = dist_pair(&cfg, &Term::Return(a.clone()), &Term::Return(b.clone()), &nat);
        record(&mut c_return, leq_outcome(quantale, lhs, rhs));

        // let: (s ∧ 1)∘α(e, e') ⊗ (x :_s ⊢ α(f, f')) ≤ α(let…, let…).
        let e1 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let e2 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f1 = open_nat_term(&mut rng, &cfg.sig);
        let f2 = open_nat_term(&mut rng, &cfg.sig);
        let s = scales[rng.below(4) as usize].clone();
        let env_s = Env::new().bind("x", s.clone(), nat.clone());
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (de, s1) = dist_pair(&cfg, &e1, &e2, &nat)?;
            let (df, s2) = open_term_distance(&cfg, Mode::Sim, &env_s, &f1, &f2, &nat)?;
            let scaled = s.meet(&Cbe::one()).apply(&de)?;
            Ok((quantale.tensor(&scaled, &df)?, s1 && s2))
        })();
        let rhs = dist_pair(
            &cfg,
            &Term::let_in("x", e1.clone(), f1.clone()),
            &Term::let_in("x", e2.clone(), f2.clone()),
            &nat,
        );
        record(&mut c_let, leq_outcome(quantale, lhs, rhs));

        // bang: s∘α(v, w) ≤ α(!v, !w) at !_s nat.
        let s = scales[rng.below(4) as usize].clone();
        let a = numeral(rng.below(3));
        let b = numeral(rng.below(3));
        let bang_ty = Type::bang(s.clone(), nat.clone());
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (d, stab) = value_distance(&cfg, Mode::Sim, &a, &b, &nat)?;
            Ok((s.apply(&d)?, stab))
        })();
        let rhs =
            value_distance(&cfg, Mode::Sim, &Value::bang(a.clone()), &Value::bang(b.clone()), &bang_ty);
        record(&mut c_bang, leq_outcome(quantale, lhs, rhs));

        // casebang at !_r nat with rule scale s.
        let r = Cbe::from_int(1 + rng.below(2));
        let s = scales[1 + rng.below(2) as usize].clone();
        let bang_ty = Type::bang(r.clone(), nat.clone());
        let va = Value::bang(numeral(rng.below(3)));
        let vb = Value::bang(numeral(rng.below(3)));
        let body_e = open_nat_term(&mut rng, &cfg.sig);
        let body_f = open_nat_term(&mut rng, &cfg.sig);
        let env_sr = Env::new().bind("x", s.compose(&r), nat.clone());
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (d_scrut, s1) = value_distance(&cfg, Mode::Sim, &va, &vb, &bang_ty)?;
            let (d_body, s2) =
                open_term_distance(&cfg, Mode::Sim, &env_sr, &body_e, &body_f, &nat)?;
            Ok((quantale.tensor(&s.apply(&d_scrut)?, &d_body)?, s1 && s2))
        })();
        let rhs = dist_pair(
            &cfg,
            &Term::case_bang(va.clone(), "x", body_e.clone()),
            &Term::case_bang(vb.clone(), "x", body_f.clone()),
            &nat,
        );
        record(&mut c_casebang, leq_outcome(quantale, lhs, rhs));

        // fold: α(v, w at unfold) ≤ α(fold v, fold w at μ).
        let unfolded = nat.unfold_mu().expect("nat is a mu type");
        let (na, nb) = (numeral(rng.below(3)), numeral(rng.below(3)));
        let (inner_a, inner_b) = match (&na, &nb) {
            (Value::Fold(_, a), Value::Fold(_, b)) => (a.as_ref().clone(), b.as_ref().clone()),
            _ => unreachable!("numerals are folds"),
        };
        let lhs = value_distance(&cfg, Mode::Sim, &inner_a, &inner_b, &unfolded);
        let rhs = value_distance(&cfg, Mode::Sim, &na, &nb, &nat);
        record(&mut c_fold, leq_outcome(quantale, lhs, rhs));

        // casefold with bodies over the unfolded type: the scrutinee binder
        // has the sum type, the nested branch variable the nat type.
        let s = scales[1 + rng.below(2) as usize].clone();
        let body = |rng: &mut Rng, sig: &EffectSig| -> Term {
            let nested = open_nat_term_over(rng, sig, "p");
            Term::CaseSum(
                Value::var("x"),
                vec![
                    ("u".to_string(), Term::Return(numeral(0))),
                    ("p".to_string(), nested),
                ],
            )
        };
        let body_e = body(&mut rng, &cfg.sig);
        let body_f = body(&mut rng, &cfg.sig);
        let env_s = Env::new().bind("x", s.clone(), unfolded.clone());
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (d_scrut, s1) = value_distance(&cfg, Mode::Sim, &na, &nb, &nat)?;
            let (d_body, s2) = open_term_distance(&cfg, Mode::Sim, &env_s, &body_e, &body_f, &nat)?;
            Ok((quantale.tensor(&s.apply(&d_scrut)?, &d_body)?, s1 && s2))
        })();
        let rhs = dist_pair(
            &cfg,
            &Term::case_fold(na.clone(), "x", body_e.clone()),
            &Term::case_fold(nb.clone(), "x", body_f.clone()),
            &nat,
        );
        record(&mut c_casefold, leq_outcome(quantale, lhs, rhs));

        // op: op_V(α(e_i, f_i)) ≤ α(op(e⃗), op(f⃗)).
        let p = rng.probability();
        let op = OpSym::Choice(Some(p.clone()));
        let e1 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let e2 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f1 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let f2 = gen::gen_nat_program(&mut rng, &cfg.sig, 2);
        let lhs = (|| -> Result<(QuantaleElem, bool)> {
            let (d1, s1) = dist_pair(&cfg, &e1, &f1, &nat)?;
            let (d2, s2) = dist_pair(&cfg, &e2, &f2, &nat)?;
            let combined = SigmaOpInterp::ProbChoice(p.clone()).eval(quantale, &[d1, d2])?;
            Ok((combined, s1 && s2))
        })();
        let rhs = dist_pair(
            &cfg,
            &Term::Op(op.clone(), vec![e1.clone(), e2.clone()]),
            &Term::Op(op, vec![f1.clone(), f2.clone()]),
            &nat,
        );
        record(&mut c_op, leq_outcome(quantale, lhs, rhs));
    }

    SuiteReport {
        suite: "compat".to_string(),
        seed,
        checks: vec![
            c_var, c_lam, c_app, c_inj, c_casesum, c_return, c_let, c_bang, c_casebang, c_fold,
            c_casefold, c_op,
        ],
    }
}

fn dist_pair(cfg: &DistConfig, e: &Term, f: &Term, ty: &Type) -> Result<(QuantaleElem, bool)> {
    let q = DistQuery {
        lhs: e.clone(),
        rhs: f.clone(),
        ty: ty.clone(),
        mode: Mode::Sim,
        cfg: cfg.clone(),
    };
    let out = distance(&q)?;
    Ok((out.value, out.stabilized))
}

pub fn metric_suite(seed: u64, scale: u32) -> SuiteReport {
    let mut rng = Rng::new(seed);
    let cfg = small_cfg(MonadTag::SubDist);
    let mut holds = CheckResult::new("corollary-inequality");
    let nat = nat_type();
    let scales = [Cbe::zero(), Cbe::one(), Cbe::from_int(2), crate::typing::cbe_of_rational(1, 2)];
    for i in 0..100 * scale as usize {
        let s = scales[rng.below(4) as usize].clone();
        let use_bang = rng.chance(1, 2);
        let (var_ty, v, w, e) = if use_bang {
            let r = Cbe::from_int(1 + rng.below(2));
            let ty = Type::bang(r, nat.clone());
            let v = Value::bang(numeral(rng.below(3)));
            let w = Value::bang(numeral(rng.below(3)));
            let body = match rng.below(3) {
                0 => Term::Return(Value::var("y")),
                1 => Term::Op(
                    OpSym::Choice(None),
                    vec![Term::Return(Value::var("y")), omega(&nat)],
                ),
                _ => gen::pred_term(Value::var("y")),
            };
            let e = Term::case_bang(Value::var("x"), "y", body);
            (ty, v, w, e)
        } else {
            let v = numeral(rng.below(3));
            let w = numeral(rng.below(3));
            let e = match rng.below(4) {
                0 => Term::Return(Value::var("x")),
                1 => gen::pred_term(Value::var("x")),
                2 => Term::let_in("z", Term::Return(Value::var("x")), Term::Return(Value::var("z"))),
                _ => Term::Op(
                    OpSym::Choice(Some(rng.probability())),
                    vec![Term::Return(Value::var("x")), Term::Return(numeral(rng.below(3)))],
                ),
            };
            (nat.clone(), v, w, e)
        };
        // The corollary assumes a valid judgment: raise the sampled
        // annotation to the inferred demand when it falls below it.
        let scope = [("x".to_string(), var_ty.clone())].into_iter().collect();
        let Ok((_, demand)) = typing::infer_term(&e, &scope) else {
            holds.failed += 1;
            continue;
        };
        let s = if typing::check(&e, &Env::new().bind("x", s.clone(), var_ty.clone()), &nat).is_ok()
        {
            s
        } else {
            demand.get("x")
        };
        let env = Env::new().bind("x", s, var_ty);
        let vs = vec![("x".to_string(), v)];
        let ws = vec![("x".to_string(), w)];
        match metric_preservation_check(&cfg, Mode::Sim, &env, &e, &vs, &ws, &nat) {
            Ok(report) => {
                if report.holds {
                    holds.passed += 1;
                } else if report.stabilized {
                    holds.failed += 1;
                } else {
                    holds.inconclusive += 1;
                }
            }
            Err(_) => holds.failed += 1,
        }
        let _ = i;
    }
    SuiteReport { suite: "metric".to_string(), seed, checks: vec![holds] }
}
