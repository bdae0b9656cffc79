//! `vfuzz`: check, evaluate, and compare programs of the sensitivity-typed
//! effectful calculus, and run the executable law suites.
//!
//! Exit codes: 0 on success, 1 on a check/verify failure (including parse,
//! type, and sensitivity errors in the input programs), 2 on usage errors
//! (bad flags or inconsistent configuration).

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vfuzz_core::distance::{self, DistConfig, DistQuery, Mode};
use vfuzz_core::effects::{EffectSig, MonadTag, MValue};
use vfuzz_core::evaluation::Evaluator;
use vfuzz_core::quantale::{Quantale, QuantaleElem};
use vfuzz_core::relators::RelatorCfg;
use vfuzz_core::syntax::{parse_term, parse_type, print_type, print_value, Term, Type};
use vfuzz_core::typing::{self, Env};
use vfuzz_core::verify;

#[derive(Parser)]
#[command(name = "vfuzz", version, about = "Sensitivity-typed effectful programs and their behavioural distances")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check a program and print its type and per-variable sensitivities.
    Check {
        /// Program file in the surface grammar.
        file: PathBuf,
        /// Declare a free variable, e.g. --var "x:nat" (repeatable).
        #[arg(long = "var", value_name = "NAME:TYPE")]
        vars: Vec<String>,
        /// Emit JSON instead of a human-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closed program under the step-indexed semantics.
    Eval {
        file: PathBuf,
        /// Step budget for the approximation semantics.
        #[arg(long, default_value_t = 8)]
        budget: u32,
        /// Monad: partial | powerset | dist | state.
        #[arg(long, default_value = "dist")]
        monad: String,
        /// Store locations for the state monad, e.g. --locations l1,l2.
        #[arg(long, value_delimiter = ',')]
        locations: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Approximate the behavioural distance between two closed programs.
    Dist {
        lhs: PathBuf,
        rhs: PathBuf,
        /// Common closed type of the two programs, in the surface grammar.
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        /// Quantale: bool | lawvere | unit | ultra | tnorm:product | tnorm:lukasiewicz | tnorm:goedel.
        #[arg(long, default_value = "unit")]
        quantale: String,
        /// Relator: auto | partial | hausdorff | hausdorff-sym | wasserstein | wasserstein-bot | state.
        #[arg(long, default_value = "auto")]
        relator: String,
        /// Monad: partial | powerset | dist | state.
        #[arg(long, default_value = "dist")]
        monad: String,
        #[arg(long, value_delimiter = ',')]
        locations: Vec<String>,
        /// Mode: sim | bisim | twoway.
        #[arg(long, default_value = "sim")]
        mode: String,
        #[arg(long, default_value_t = 8)]
        budget: u32,
        /// Fixed-point iterations from the indiscrete relation.
        #[arg(long, default_value_t = 4)]
        iters: u32,
        /// Probe enumeration depth for arrow-type arguments.
        #[arg(long = "probe-depth", default_value_t = 2)]
        probe_depth: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run the executable property suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// RNG seed (the VFUZZ_SEED environment variable overrides it).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instance-count multiplier (1 = acceptance scale).
        #[arg(long, default_value_t = 1)]
        scale: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Failures carry the exit code they map to.
struct Failure {
    exit: u8,
    code: String,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { exit: 2, code: "usage".into(), message: msg.into() }
    }

    fn from_config(err: vfuzz_core::Error) -> Failure {
        Failure { exit: 2, code: err.code().into(), message: err.to_string() }
    }

    fn from_work(err: vfuzz_core::Error) -> Failure {
        Failure { exit: 1, code: err.code().into(), message: err.to_string() }
    }

    fn io(path: &Path, err: std::io::Error) -> Failure {
        Failure { exit: 1, code: "io".into(), message: format!("{}: {err}", path.display()) }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = match &cli.cmd {
        Cmd::Check { json, .. } | Cmd::Eval { json, .. } | Cmd::Dist { json, .. } | Cmd::Verify { json, .. } => *json,
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json_mode {
                println!("{}", json!({"error": {"code": f.code, "message": f.message}}));
            } else {
                eprintln!("error[{}]: {}", f.code, f.message);
            }
            ExitCode::from(f.exit)
        }
    }
}

fn read_program(path: &Path) -> Result<Term, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse_term(&text).map_err(Failure::from_work)
}

fn build_sig(monad: &str, locations: &[String]) -> Result<EffectSig, Failure> {
    let monad = MonadTag::from_name(monad).map_err(Failure::from_config)?;
    EffectSig::new(monad, locations.to_vec()).map_err(Failure::from_config)
}

fn elem_json(v: &QuantaleElem) -> Json {
    match v.as_bool() {
        Some(b) => Json::Bool(b),
        None => Json::String(v.to_string()),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Check { file, vars, json } => {
            let term = read_program(&file)?;
            let mut env = Env::new();
            for decl in &vars {
                let (name, ty_text) = decl
                    .split_once(':')
                    .ok_or_else(|| Failure::usage(format!("--var expects NAME:TYPE, got '{decl}'")))?;
                let ty = parse_type(ty_text.trim()).map_err(Failure::from_config)?;
                // Declared sensitivities default to ∞ (no restriction); the
                // report prints the inferred least demand.
                env = env.bind(name.trim(), vfuzz_core::quantale::Cbe::infinite(), ty);
            }
            let scope = env.scope();
            let (ty, demand) = typing::infer_term(&term, &scope).map_err(Failure::from_work)?;
            let sensitivities: Vec<(String, String)> = scope
                .keys()
                .map(|x| (x.clone(), demand.get(x).to_string()))
                .collect();
            if json {
                let map: serde_json::Map<String, Json> = sensitivities
                    .iter()
                    .map(|(k, v)| (k.clone(), Json::String(v.clone())))
                    .collect();
                println!(
                    "{}",
                    json!({"type": print_type(&ty), "sensitivities": Json::Object(map)})
                );
            } else {
                println!("{}", print_type(&ty));
                for (x, s) in sensitivities {
                    println!("{x} :_{s}");
                }
            }
            Ok(0)
        }
        Cmd::Eval { file, budget, monad, locations, json } => {
            let term = read_program(&file)?;
            let sig = build_sig(&monad, &locations)?;
            sig.validate_term(&term).map_err(Failure::from_work)?;
            let mut evaluator = Evaluator::new(sig.clone());
            let (out, stabilized) = evaluator.eval(&term, budget).map_err(Failure::from_work)?;
            print_eval(&out, stabilized, &sig, json);
            Ok(0)
        }
        Cmd::Dist {
            lhs,
            rhs,
            ty,
            quantale,
            relator,
            monad,
            locations,
            mode,
            budget,
            iters,
            probe_depth,
            json,
        } => {
            let lhs = read_program(&lhs)?;
            let rhs = read_program(&rhs)?;
            let ty: Type = parse_type(&ty).map_err(Failure::from_config)?;
            let quantale = Quantale::from_name(&quantale).map_err(Failure::from_config)?;
            let mode = Mode::from_name(&mode).map_err(Failure::from_config)?;
            let sig = build_sig(&monad, &locations)?;
            let relator = RelatorCfg::from_name(&relator, sig.monad, false)
                .map_err(Failure::from_config)?;
            let cfg = DistConfig { quantale, relator, sig, budget, iters, probe_depth };
            cfg.validate().map_err(Failure::from_config)?;
            let query = DistQuery { lhs, rhs, ty, mode, cfg };
            let outcome = distance::distance(&query).map_err(Failure::from_work)?;
            if json {
                let trace: Vec<Json> = outcome.trace.iter().map(elem_json).collect();
                println!(
                    "{}",
                    json!({
                        "value": elem_json(&outcome.value),
                        "stabilized": outcome.stabilized,
                        "iterations": outcome.iterations,
                        "trace": trace,
                    })
                );
            } else {
                println!("value: {}", outcome.value);
                println!("stabilized: {}", outcome.stabilized);
                println!("iterations: {}", outcome.iterations);
                let trace: Vec<String> =
                    outcome.trace.iter().map(|v| v.to_string()).collect();
                println!("trace: {}", trace.join(" -> "));
            }
            Ok(0)
        }
        Cmd::Verify { suite, seed, scale, json } => {
            let seed = match std::env::var("VFUZZ_SEED") {
                Ok(text) => text
                    .parse::<u64>()
                    .map_err(|_| Failure::usage(format!("VFUZZ_SEED must be a u64, got '{text}'")))?,
                Err(_) => seed,
            };
            let reports = if suite == "all" {
                verify::run_all(seed, scale).map_err(Failure::from_config)?
            } else {
                vec![verify::run_suite(&suite, seed, scale).map_err(Failure::from_config)?]
            };
            let ok = reports.iter().all(|r| r.ok());
            if json {
                let suites: Vec<Json> = reports
                    .iter()
                    .map(|r| {
                        let checks: Vec<Json> = r
                            .checks
                            .iter()
                            .map(|c| {
                                json!({
                                    "name": c.name,
                                    "passed": c.passed,
                                    "failed": c.failed,
                                    "inconclusive": c.inconclusive,
                                })
                            })
                            .collect();
                        json!({"suite": r.suite, "seed": r.seed, "checks": checks, "ok": r.ok()})
                    })
                    .collect();
                println!("{}", json!({"seed": seed, "ok": ok, "suites": suites}));
            } else {
                for r in &reports {
                    for line in r.lines() {
                        println!("{line}");
                    }
                }
                println!("verify: {} (seed {seed})", if ok { "pass" } else { "FAIL" });
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn print_eval(out: &MValue<vfuzz_core::syntax::Value>, stabilized: bool, sig: &EffectSig, json: bool) {
    let (support, mass): (Vec<(String, String)>, String) = match out {
        MValue::Partial(opt) => {
            let support: Vec<(String, String)> =
                opt.iter().map(|v| (print_value(v), "1".to_string())).collect();
            let mass = if opt.is_some() { "1" } else { "0" };
            (support, mass.to_string())
        }
        MValue::Pow(set) => {
            let support: Vec<(String, String)> =
                set.iter().map(|v| (print_value(v), "1".to_string())).collect();
            (support, set.len().to_string())
        }
        MValue::SubDist(map) => {
            let support: Vec<(String, String)> = map
                .iter()
                .map(|(v, m)| (print_value(v), vfuzz_core::rational::display_rational(m)))
                .collect();
            let total: vfuzz_core::effects::Mass = map.values().sum();
            (support, vfuzz_core::rational::display_rational(&total))
        }
        MValue::State(kernels) => {
            let bits = sig.locations.len();
            let fmt_state = |b: u32| -> String {
                (0..bits).map(|i| if (b >> i) & 1 == 1 { '1' } else { '0' }).collect()
            };
            let support: Vec<(String, String)> = kernels
                .iter()
                .flat_map(|(b, dist)| {
                    let fmt_state = &fmt_state;
                    dist.iter().map(move |((b2, v), m)| {
                        (
                            format!("{} -> {} . {}", fmt_state(*b), fmt_state(*b2), print_value(v)),
                            vfuzz_core::rational::display_rational(m),
                        )
                    })
                })
                .collect();
            (support, "per-state".to_string())
        }
    };
    if json {
        let entries: Vec<Json> = support
            .iter()
            .map(|(v, m)| json!([Json::String(v.clone()), Json::String(m.clone())]))
            .collect();
        println!(
            "{}",
            json!({"support": entries, "mass": mass, "stabilized": stabilized})
        );
    } else {
        for (v, m) in &support {
            println!("{m}\t{v}");
        }
        println!("mass: {mass}");
        println!("stabilized: {stabilized}");
    }
}
