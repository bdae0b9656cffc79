//! End-to-end tests of the `vfuzz` binary: output shapes, exactness of the
//! emitted rationals, determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vfuzz"))
}

fn programs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dist_reports_one_half_for_the_identity_vs_choice_with_divergence() {
    let dir = programs();
    let out = run(&[
        "dist",
        dir.join("I.vf").to_str().unwrap(),
        dir.join("IOmegaHalf.vf").to_str().unwrap(),
        "--type",
        "unit -o unit",
        "--monad",
        "dist",
        "--quantale",
        "unit",
        "--relator",
        "auto",
        "--mode",
        "sim",
        "--budget",
        "8",
        "--iters",
        "4",
        "--probe-depth",
        "2",
        "--json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["value"], "1/2");
    assert_eq!(json["stabilized"], true);
    // The emitted rational parses back exactly.
    assert!(vfuzz_core::rational::parse_rational(json["value"].as_str().unwrap()).is_some());
}

#[test]
fn check_prints_the_inferred_type() {
    let dir = programs();
    let out = run(&["check", dir.join("I.vf").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "unit -o unit");
}

#[test]
fn check_reports_sensitivities_of_declared_variables() {
    let dir = tempdir();
    let file = dir.join("open.vf");
    std::fs::write(&file, "case! x of !y -> return y").unwrap();
    let out = run(&["check", file.to_str().unwrap(), "--var", "x:!_2 nat", "--json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["type"], "nat");
    assert_eq!(json["sensitivities"]["x"], "1/2");
}

#[test]
fn eval_reports_support_mass_and_stabilization() {
    let dir = programs();
    let out = run(&[
        "eval",
        dir.join("CoinBang.vf").to_str().unwrap(),
        "--budget",
        "6",
        "--monad",
        "dist",
        "--json",
    ]);
    assert!(out.status.success());
    let json = stdout_json(&out);
    assert_eq!(json["mass"], "1");
    assert_eq!(json["stabilized"], true);
    assert_eq!(json["support"].as_array().unwrap().len(), 2);
    let out = run(&[
        "eval",
        dir.join("OmegaUnit.vf").to_str().unwrap(),
        "--budget",
        "12",
        "--monad",
        "dist",
        "--json",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["mass"], "0");
    assert_eq!(json["stabilized"], false);
}

#[test]
fn verify_is_deterministic_for_a_fixed_seed() {
    let a = run(&["verify", "--suite", "quantale", "--seed", "9", "--json"]);
    let b = run(&["verify", "--suite", "quantale", "--seed", "9", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same flags and seed must give identical bytes");
    let c = run(&["verify", "--suite", "quantale", "--seed", "10", "--json"]);
    assert!(c.status.success());
}

#[test]
fn vfuzz_seed_environment_variable_overrides_the_flag() {
    let flag = run(&["verify", "--suite", "syntax", "--seed", "11", "--json"]);
    let env = bin()
        .args(["verify", "--suite", "syntax", "--seed", "12", "--json"])
        .env("VFUZZ_SEED", "11")
        .output()
        .expect("binary runs");
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn exit_codes_distinguish_usage_from_check_failures() {
    let dir = tempdir();
    // Usage error: Wasserstein lifting demands the unit-interval quantale.
    let i = programs().join("I.vf");
    let out = run(&[
        "dist",
        i.to_str().unwrap(),
        i.to_str().unwrap(),
        "--type",
        "unit -o unit",
        "--quantale",
        "bool",
        "--relator",
        "wasserstein-bot",
    ]);
    assert_eq!(out.status.code(), Some(2), "config errors exit 2");

    // Check failure: under-declared sensitivity.
    let file = dir.join("low.vf");
    std::fs::write(&file, "return x").unwrap();
    let out = run(&["check", file.to_str().unwrap(), "--var", "x:0 -o 0"]);
    assert!(out.status.success(), "weakening admits unconstrained declarations");
    let bad = dir.join("bad.vf");
    std::fs::write(&bad, "return (\\x:unit. return y)").unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "type errors exit 1");

    // Parse errors also exit 1 with a position.
    let syn = dir.join("syn.vf");
    std::fs::write(&syn, "return (\\x:unit return x)").unwrap();
    let out = run(&["check", syn.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse-error"));
}

#[test]
fn boolean_quantale_distances_are_booleans() {
    let i = programs().join("I.vf");
    let om = programs().join("OmegaUnit.vf");
    let out = run(&[
        "dist",
        i.to_str().unwrap(),
        i.to_str().unwrap(),
        "--type",
        "unit -o unit",
        "--quantale",
        "bool",
        "--monad",
        "partial",
        "--relator",
        "partial",
        "--mode",
        "sim",
        "--json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["value"], true);
    // A converging program is not simulated by a diverging one.
    let star = programs().join("Star.vf");
    let out = run(&[
        "dist",
        star.to_str().unwrap(),
        om.to_str().unwrap(),
        "--type",
        "unit",
        "--quantale",
        "bool",
        "--monad",
        "partial",
        "--relator",
        "partial",
        "--mode",
        "sim",
        "--json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["value"], false);
}

#[test]
fn state_monad_round_trip_through_the_cli() {
    let dir = tempdir();
    let file = dir.join("state.vf");
    std::fs::write(
        &file,
        "set1[l](get[l](return fold[nat] inj_1[sum{unit, nat}] (\\w:0. return w), return fold[nat] inj_2[sum{unit, nat}] fold[nat] inj_1[sum{unit, nat}] (\\w:0. return w)))",
    )
    .unwrap();
    let out = run(&[
        "eval",
        file.to_str().unwrap(),
        "--budget",
        "6",
        "--monad",
        "state",
        "--locations",
        "l",
        "--json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["stabilized"], true);
    // One entry per input state; writing then reading routes per the store.
    assert_eq!(json["support"].as_array().unwrap().len(), 2);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vfuzz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
