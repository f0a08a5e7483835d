//! Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cyclic_lie::coinv;
use cyclic_lie::scalar::FieldSpec;
use cyclic_lie::verify::{self, Report, Suite, SuiteConfig};
use serde_json::Value;

const SEED: u64 = 20240601;

fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("prime field")
}

struct Outcome {
    ok: bool,
    summary: String,
}

impl Outcome {
    fn new(ok: bool, summary: impl Into<String>) -> Self {
        Outcome { ok, summary: summary.into() }
    }
}

/// Runs each configuration and folds the reports into one outcome.
fn suites(runs: &[(Suite, SuiteConfig)]) -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    for (suite, cfg) in runs {
        match verify::run(*suite, cfg) {
            Ok(report) => {
                checks += report.trials;
                if !report.passed() {
                    bad.push(describe(&report));
                }
            }
            Err(e) => bad.push(format!("{suite} over {} dim {}: error {e}", cfg.field, cfg.dim)),
        }
    }
    let summary = if bad.is_empty() {
        format!("{} runs, {checks} checks, 0 failures", runs.len())
    } else {
        format!("{} runs, {checks} checks; {}", runs.len(), bad.join("; "))
    };
    Outcome::new(bad.is_empty(), summary)
}

fn describe(report: &Report) -> String {
    let first = report.failures.first().map(|f| f.detail.as_str()).unwrap_or("");
    format!(
        "{} over {} dim {}: {} failures, first: {first}",
        report.suite,
        report.field,
        report.dim,
        report.failures.len()
    )
}

fn cfg(field: FieldSpec, dim: usize, trials: usize, max_len: Option<usize>) -> SuiteConfig {
    SuiteConfig { field, dim, seed: SEED, trials, max_len, ..SuiteConfig::default() }
}

fn grid(suites: &[Suite], fields: &[FieldSpec], dims: &[usize], trials: usize, max_len: Option<usize>) -> Vec<(Suite, SuiteConfig)> {
    let mut out = Vec::new();
    for &s in suites {
        for &f in fields {
            for &d in dims {
                out.push((s, cfg(f, d, trials, max_len)));
            }
        }
    }
    out
}

fn all_fields() -> Vec<FieldSpec> {
    vec![q(), fp(2), fp(3), fp(5)]
}

fn jacobi() -> Outcome {
    suites(&grid(&[Suite::Jacobi], &all_fields(), &[2, 4], 200, Some(6)))
}

fn alternating_grading() -> Outcome {
    suites(&grid(&[Suite::Alternating, Suite::Grading], &all_fields(), &[2, 4], 200, Some(6)))
}

fn derivation() -> Outcome {
    suites(&grid(&[Suite::Derivation], &all_fields(), &[2, 4], 200, Some(6)))
}

fn well_defined() -> Outcome {
    suites(&[(Suite::WellDefined, cfg(fp(3), 2, 1, Some(5)))])
}

fn tangency() -> Outcome {
    suites(&grid(&[Suite::Tangency], &[q(), fp(2), fp(5)], &[2], 100, Some(6)))
}

fn vf_hom() -> Outcome {
    suites(&grid(&[Suite::VfHom], &[q(), fp(2), fp(5), fp(7)], &[2], 100, Some(6)))
}

fn involution() -> Outcome {
    suites(&grid(&[Suite::IotaHom], &[q(), fp(3), fp(5)], &[2, 4], 100, Some(6)))
}

fn lemma() -> Outcome {
    suites(&grid(&[Suite::Lemma], &[q(), fp(3), fp(5)], &[1, 2, 3], 1, Some(5)))
}

fn classical() -> Outcome {
    suites(&grid(&[Suite::SoSpClosure, Suite::Proposition], &[q(), fp(7)], &[2], 20, None))
}

fn sp_iso() -> Outcome {
    let mut found = Vec::new();
    let mut bad = Vec::new();
    // basis size n gives n image checks, one injectivity check and n^2 pairs
    for (dim, basis) in [(2usize, 3usize), (4, 10)] {
        match verify::run(Suite::SpIso, &cfg(q(), dim, 1, None)) {
            Ok(report) => {
                if !report.passed() {
                    bad.push(describe(&report));
                }
                if report.trials != basis + 1 + basis * basis {
                    bad.push(format!("dim {dim}: {} checks, expected {}", report.trials, basis + 1 + basis * basis));
                }
                match report.notes.get("s") {
                    Some(s) => found.push(format!("dim {dim}: s = {s}")),
                    None => bad.push(format!("dim {dim}: no scalar s determined")),
                }
            }
            Err(e) => bad.push(format!("dim {dim}: error {e}")),
        }
    }
    let same = found.len() == 2 && found[0].split(": ").nth(1) == found[1].split(": ").nth(1);
    if !same && bad.is_empty() {
        bad.push("the scalar differs between dims".into());
    }
    let ok = bad.is_empty();
    Outcome::new(ok, format!("{}{}", found.join(", "), if ok { String::new() } else { format!("; {}", bad.join("; ")) }))
}

fn dimensions() -> Outcome {
    let mut out = suites(&grid(&[Suite::Dims], &[q(), fp(2)], &[1, 2, 3], 1, Some(7)));
    let values: Vec<usize> = (2..=4).map(|l| coinv::graded_dimension(2, l)).collect();
    let oracle: Vec<usize> = (2..=4).map(|l| coinv::quotient_dimension(q(), 2, l)).collect();
    if values != [3, 4, 6] || oracle != [3, 4, 6] {
        out.ok = false;
    }
    out.summary.push_str(&format!("; dim 2, l = 2..4: {values:?}, oracle {oracle:?}"));
    out
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclic-lie"))
        .args(args)
        .output()
        .expect("run the binary");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn sensitivity() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let flip = [
        "verify", "jacobi", "--field", "q", "--dim", "2", "--trials", "200", "--max-len", "6",
        "--seed", "7", "--output", "json", "--mutate", "bracket-sign-flip",
    ];
    let (code, first) = cli(&flip);
    let (code2, second) = cli(&flip);
    ok &= code == 1 && code2 == 1 && first == second;
    notes.push(format!("jacobi under bracket-sign-flip exits {code}"));
    let report: Value = serde_json::from_str(&first).unwrap_or(Value::Null);
    match report["failures"].get(0) {
        Some(fail) => {
            let trial = fail["trial"].as_u64().unwrap_or(0).to_string();
            let mut replay = flip.to_vec();
            replay.extend(["--trial", trial.as_str()]);
            let (code, text) = cli(&replay);
            let again: Value = serde_json::from_str(&text).unwrap_or(Value::Null);
            let same = again["failures"].get(0).map(|f| &f["detail"]) == Some(&fail["detail"]);
            ok &= code == 1 && same;
            notes.push(format!("trial {trial} replays {}", if same { "identically" } else { "differently" }));
        }
        None => {
            ok = false;
            notes.push("no counterexample reported".into());
        }
    }
    let (code, _) = cli(&["verify", "vf-hom", "--field", "q", "--trials", "100", "--mutate", "dij-literal-zero"]);
    ok &= code == 1;
    notes.push(format!("vf-hom under dij-literal-zero exits {code}"));
    // the unmutated runs stay green
    let (base1, _) = cli(&["verify", "jacobi", "--field", "q", "--dim", "2", "--trials", "200", "--seed", "7"]);
    let (base6, _) = cli(&["verify", "vf-hom", "--field", "q", "--trials", "100"]);
    ok &= base1 == 0 && base6 == 0;
    notes.push(format!("unmutated exits {base1} and {base6}"));
    Outcome::new(ok, notes.join(", "))
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "jacobi identity", Some(60), jacobi),
        (2, "alternating and grading", Some(10), alternating_grading),
        (3, "derivation rule", Some(30), derivation),
        (4, "rotation independence", Some(30), well_defined),
        (5, "commutator tangency", Some(60), tangency),
        (6, "vector field homomorphism", Some(120), vf_hom),
        (7, "involution", None, involution),
        (8, "first-letter eigenspace lemma", None, lemma),
        (9, "so/sp closure and invariance", None, classical),
        (10, "degree zero is sp(V)", None, sp_iso),
        (11, "graded dimensions", None, dimensions),
        (12, "suite sensitivity", None, sensitivity),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took < Duration::from_secs(s));
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let budget = match limit {
            Some(s) => format!("{:.2} s, limit {s} s", took.as_secs_f64()),
            None => format!("{:.2} s", took.as_secs_f64()),
        };
        println!(
            "{} criterion {id:>2} {name}: {} ({budget})",
            if ok { "PASS" } else { "FAIL" },
            outcome.summary
        );
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
