//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stdout so that it shows up even when test output is captured.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::thread;
use std::time::{Duration, Instant};

use hypersukp::exponents::table;
use hypersukp::harness::{verify, Check, VerifyOptions, VerifyReport};

const SEED: u64 = 20_240_601;

struct Outcome {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn report(o: &Outcome) {
    let ok = o.passed && o.elapsed <= o.limit;
    let line = format!(
        "[{}] criterion {} {:<18} {:>8.2?} (limit {:?})  {}",
        if ok { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.elapsed,
        o.limit,
        o.detail
    );
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
}

fn timed<F: FnOnce() -> (bool, String)>(id: usize, name: &'static str, limit: Duration, f: F) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    Outcome { id, name, passed, detail, elapsed: start.elapsed(), limit }
}

fn run_check(check: Check, trials: usize) -> VerifyReport {
    verify(check, &VerifyOptions::default().trials(trials).seed(SEED)).unwrap()
}

fn checks(reports: &[VerifyReport], min_trials: usize) -> (bool, String) {
    let passed = reports.iter().all(|r| r.passed() && r.trials >= min_trials && r.unchecked == 0);
    let detail = reports.iter().map(VerifyReport::summary).collect::<Vec<_>>().join(" | ");
    (passed, detail)
}

fn exponent_table() -> (bool, String) {
    let rows = table(6).unwrap();
    let theta: Vec<String> = rows.iter().map(|r| r.theta.to_string()).collect();
    let alpha: Vec<String> = rows.iter().map(|r| r.alpha.to_string()).collect();
    let ok = theta == ["1/4", "5/6", "11/8", "19/10", "29/12"] && alpha == ["2/5", "12/11", "34/19", "72/29", "130/41"];
    (ok, format!("theta={theta:?} alpha={alpha:?}"))
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_hypersukp"))
        .env_remove("RUST_LOG")
        .args(args)
        .output()
        .unwrap();
    (o.status.code(), o.stdout)
}

fn determinism(dir: &Path) -> (bool, String) {
    let write = |name: &str, spec: &str| {
        let s = dir.join(format!("{name}.spec.json"));
        std::fs::write(&s, spec).unwrap();
        let f = dir.join(format!("{name}.json"));
        let (code, _) = cli(&["gen", "--spec", s.to_str().unwrap(), "--out", f.to_str().unwrap()]);
        assert_eq!(code, Some(0));
        f.to_str().unwrap().to_string()
    };
    let g = write("g", r#"{"kind":"uniform-random","n":16,"m":3,"edge_count":60,"seed":7}"#);
    let s = write(
        "s",
        r#"{"kind":"sukp-correlated","n":14,"m":3,"edge_count":20,"vertex_profit_probability":0.3,"seed":8}"#,
    );
    let commands: Vec<Vec<String>> = [
        vec!["--json", "--seed", "3", "solve", "dksh", "--input", &g, "--k", "8"],
        vec!["--json", "--seed", "3", "solve", "dksh", "--input", &g, "--k", "8", "--base", "exact"],
        vec!["--json", "--seed", "3", "solve", "sukp", "--input", &s, "--trace"],
        vec!["--json", "--seed", "3", "verify", "lemma22", "sukp", "blowup", "--trials", "40"],
        vec!["--json", "--seed", "3", "bench", "--family", "sukp-random", "--n", "8,10", "--per-n", "2"],
        vec!["--seed", "3", "bench", "--family", "dksh-planted", "--n", "9,11", "--per-n", "2"],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    let mut mismatches = Vec::new();
    for args in &commands {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let reference = cli(&argv);
        let mut runs = vec![cli(&argv)];
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let args = args.clone();
                thread::spawn(move || {
                    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
                    cli(&argv)
                })
            })
            .collect();
        runs.extend(handles.into_iter().map(|h| h.join().unwrap()));
        if reference.0 != Some(0) || reference.1.is_empty() || runs.iter().any(|r| r != &reference) {
            mismatches.push(args[3..5].join(" "));
        }
    }
    (
        mismatches.is_empty(),
        format!("{} commands x 6 runs (2 sequential, 4 concurrent); differing: {mismatches:?}", commands.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let dir = tempfile::TempDir::new().unwrap();
    let secs = Duration::from_secs;
    let outcomes = vec![
        timed(1, "exponent-table", secs(1), exponent_table),
        timed(2, "identities", secs(1), || checks(&[run_check(Check::Identities, 0)], 96)),
        timed(3, "halving-bound", secs(120), || checks(&[run_check(Check::Lemma22, 1000)], 1000)),
        timed(4, "weighted-reduction", secs(120), || checks(&[run_check(Check::Lemma23, 300)], 300)),
        timed(5, "dksh-feasibility", secs(600), || checks(&[run_check(Check::Dksh, 1000)], 1000)),
        timed(6, "sukp-pipeline", secs(600), || {
            checks(&[run_check(Check::Sukp, 500), run_check(Check::Rounding4x, 500)], 500)
        }),
        timed(7, "blow-up", secs(600), || checks(&[run_check(Check::Blowup, 100)], 100)),
        timed(8, "knapsack-fptas", secs(600), || checks(&[run_check(Check::Fptas, 500)], 500)),
        timed(9, "determinism", secs(600), || determinism(dir.path())),
    ];
    for o in &outcomes {
        report(o);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed || o.elapsed > o.limit).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
