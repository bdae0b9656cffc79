//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Tolerances are exact rational equalities or explicit
//! percentage bounds; time limits are asserted with wall-clock measurement.

use std::time::Instant;
use vfuzz_core::distance::{distance, DistConfig, DistQuery, Mode};
use vfuzz_core::effects::{EffectSig, MonadTag};
use vfuzz_core::quantale::Quantale;
use vfuzz_core::rational::ExtRat;
use vfuzz_core::relators::RelatorCfg;
use vfuzz_core::syntax::{identity_term, omega, unit_type, OpSym, Term, Type};
use vfuzz_core::verify::{self, SuiteReport};

const SEED: u64 = 42;

fn report(criterion: &str, pass: bool, details: &str) {
    println!("acceptance {criterion}: {}: {details}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion}: {details}");
}

fn suite_details(r: &SuiteReport) -> String {
    r.checks
        .iter()
        .map(|c| {
            if c.inconclusive > 0 {
                format!("{} {}p/{}f/{}i", c.name, c.passed, c.failed, c.inconclusive)
            } else {
                format!("{} {}p/{}f", c.name, c.passed, c.failed)
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Criterion 1: the distance between the identity program and its fair
/// choice with divergence, at `unit ⊸ unit` over the subdistribution monad
/// with the bottomed Wasserstein lifting, is exactly 1/2 and stabilizes,
/// within 5 seconds.
#[test]
fn criterion_01_flagship_exactness() {
    let start = Instant::now();
    let ty = Type::lolli(unit_type(), unit_type());
    let lhs = identity_term(&unit_type());
    let rhs = Term::Op(OpSym::Choice(None), vec![lhs.clone(), omega(&ty)]);
    let cfg = DistConfig {
        quantale: Quantale::UnitInterval,
        relator: RelatorCfg::WassersteinBot,
        sig: EffectSig::pure_monad(MonadTag::SubDist),
        budget: 8,
        iters: 4,
        probe_depth: 2,
    };
    let query = DistQuery { lhs, rhs, ty, mode: Mode::Sim, cfg };
    let out = distance(&query).expect("flagship query runs");
    let elapsed = start.elapsed();
    let half = Quantale::UnitInterval.elem_num(ExtRat::from_ratio(1, 2)).unwrap();
    let pass = out.value == half && out.stabilized && elapsed.as_secs_f64() < 5.0;
    report(
        "1 (flagship exactness)",
        pass,
        &format!("value={} stabilized={} in {:.2}s", out.value, out.stabilized, elapsed.as_secs_f64()),
    );
}

/// Criterion 2: adequacy on 300 fuzzed closed subdistribution programs of
/// type nat at budget 10: truncated convergence-mass difference is bounded
/// by the reported distance, 100% pass, within 60 seconds.
#[test]
fn criterion_02_adequacy() {
    let start = Instant::now();
    let r = verify::run_suite("adequacy", SEED, 1).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let total: usize = r.checks.iter().map(|c| c.total()).sum();
    let pass = r.ok() && total >= 300 && elapsed < 60.0;
    report("2 (adequacy)", pass, &format!("{} in {elapsed:.2}s", suite_details(&r)));
}

/// Criterion 3: network-simplex primal = dual = brute-force vertex oracle
/// on 500 random exact-rational instances with supports ≤ 4×4, within 30
/// seconds.
#[test]
fn criterion_03_transport_duality() {
    let start = Instant::now();
    let r = verify::run_suite("transport", SEED, 1).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let enough = r.checks.iter().all(|c| c.total() >= 500);
    let pass = r.ok() && enough && elapsed < 30.0;
    report("3 (transport duality)", pass, &format!("{} in {elapsed:.2}s", suite_details(&r)));
}

/// Criterion 4: (V-rel 1)–(V-rel 4) for the partiality, Hausdorff,
/// Wasserstein, bottomed-Wasserstein, and state liftings, and (V-rel 5)
/// for the conversive ones, 200 randomized instances each, within 60
/// seconds.
#[test]
fn criterion_04_relator_laws() {
    let start = Instant::now();
    let r = verify::run_suite("relators", SEED, 1).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let enough = r.checks.iter().all(|c| c.total() >= 200);
    let pass = r.ok() && enough && elapsed < 60.0;
    report("4 (relator laws)", pass, &format!("{} checks in {elapsed:.2}s", r.checks.len()));
}

/// Criterion 5: lax unit and the concrete L-strong lax bind inequality for
/// the bottomed Wasserstein and Hausdorff liftings, 200 fuzzed instances
/// each, 100% pass.
#[test]
fn criterion_05_strong_relator_laws() {
    let r = verify::run_suite("strong-relators", SEED, 1).unwrap();
    let enough = r.checks.iter().all(|c| c.total() >= 400);
    report("5 (strong-relator laws)", r.ok() && enough, &suite_details(&r));
}

/// Criterion 6: the kernel of the quantitative pipeline agrees with the
/// boolean Δ_Γ pipeline on 200 randomized pairs per monad at matched
/// budgets, 100% agreement on stabilized runs.
#[test]
fn criterion_06_kernel_agreement() {
    let r = verify::run_suite("kernel", SEED, 1).unwrap();
    let enough = r.checks.iter().all(|c| c.total() >= 200);
    report("6 (kernel agreement)", r.ok() && enough, &suite_details(&r));
}

/// Criterion 7: evaluation is monotone in the step index for 500 fuzzed
/// closed terms up to index 12, 100% pass.
#[test]
fn criterion_07_evaluation_monotonicity() {
    let r = verify::run_suite("evaluation", SEED, 1).unwrap();
    let monotone = r.checks.iter().find(|c| c.name == "index-monotonicity").unwrap();
    let pass = r.ok() && monotone.total() >= 500;
    report("7 (evaluation monotonicity)", pass, &suite_details(&r));
}

/// Criterion 8: every compatibility clause holds on ≥ 50 well-typed
/// sampled fillings at stabilized approximants, with the inconclusive
/// (non-stabilized) rate below 20% at budget 10.
#[test]
fn criterion_08_compatibility_sampling() {
    let r = verify::run_suite("compat", SEED, 1).unwrap();
    let mut pass = r.ok();
    for c in &r.checks {
        let total = c.total();
        pass &= total >= 50;
        pass &= (c.inconclusive as f64) < 0.20 * total as f64;
    }
    report("8 (compatibility sampling)", pass, &suite_details(&r));
}

/// Criterion 9: the metric-preservation inequality holds on 100 instances
/// over nat and bang types, 100% pass on stabilized runs.
#[test]
fn criterion_09_metric_preservation() {
    let r = verify::run_suite("metric", SEED, 1).unwrap();
    let enough = r.checks.iter().all(|c| c.total() >= 100);
    report("9 (metric preservation)", r.ok() && enough, &suite_details(&r));
}

/// Criterion 10: on stabilized runs the approximant has unit diagonal
/// (500 samples), bisimulation symmetry (200 pairs), and the transitivity
/// tensor inequality (200 triples), 100% pass.
#[test]
fn criterion_10_preorder_structure() {
    let r = verify::run_suite("distance", SEED, 1).unwrap();
    let need = [("diagonal-is-unit", 500), ("bisim-symmetry", 200), ("transitivity-tensor", 200)];
    let mut pass = r.ok();
    for (name, count) in need {
        let c = r.checks.iter().find(|c| c.name == name).unwrap();
        pass &= c.total() >= count;
    }
    report("10 (diagonal/symmetry/transitivity)", pass, &suite_details(&r));
}
