//! Runs every verification suite and prints one PASS or FAIL line per
//! acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use relchar_cli::suites::{self, Report, SUITES};

const SEED: u64 = 7;
const BUDGET: Duration = Duration::from_secs(60);

/// Extra requirements beyond "no failures", keyed by suite.
fn extra_checks(report: &Report) -> Vec<String> {
    let mut problems = Vec::new();
    let at_least = |problems: &mut Vec<String>, n: usize| {
        if report.cases < n {
            problems.push(format!("{} cases, expected at least {n}", report.cases));
        }
    };
    let with_prefix = |p: &str| report.ids.iter().filter(|id| id.starts_with(p)).count();
    match report.suite.as_str() {
        "chain-axioms" => at_least(&mut problems, 1000),
        "homology-golden" => {
            if with_prefix("golden/") == 0 {
                problems.push("no golden cases".into());
            }
        }
        "exact-sequences" => {
            // Ids are `<position>/<sample kind>/<index>`.
            let mut per_position: BTreeMap<String, usize> = BTreeMap::new();
            for id in &report.ids {
                let parts: Vec<&str> = id.split('/').collect();
                *per_position.entry(parts[..parts.len() - 2].join("/")).or_default() += 1;
            }
            for (pos, n) in per_position {
                if n < 50 {
                    problems.push(format!("position {pos} has {n} cases"));
                }
            }
        }
        "comparison-theorem" | "parallel-sections" => at_least(&mut problems, 100),
        "kunneth" => {
            if !report.ids.iter().any(|id| id.contains("/sk/")) || !report.ids.iter().any(|id| id.contains("/complement/")) {
                problems.push("missing S∘K or complement cases".into());
            }
        }
        _ => {}
    }
    problems
}

fn relchar(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relchar")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Checks against the built binary for the command line criterion.
fn binary_checks() -> Vec<String> {
    let mut problems = Vec::new();
    let seed = SEED.to_string();
    let first = relchar(&["verify", "all", "--seed", &seed]);
    let second = relchar(&["verify", "all", "--seed", &seed]);
    if first.0 != 0 {
        problems.push(format!("verify all exited with {}", first.0));
    }
    if first.1 != second.1 {
        problems.push("verify all output differs between runs".into());
    }
    let (code, out) = relchar(&["verify", "stokes", "--seed", "7"]);
    if code != 0 || !out.contains("\"failures\": []") {
        problems.push("verify stokes did not pass".into());
    }
    let (code, out) = relchar(&["homology", "DEG2", "1"]);
    if code != 0 || out.lines().next() != Some("Z/2") || !out.contains("witness") {
        problems.push(format!("homology DEG2 1 printed {out:?}"));
    }
    let (code, out) = relchar(&["char", "eval", "flat2tor", "torsion:0"]);
    if code != 0 || out.trim() != "1/2" {
        problems.push(format!("char eval printed {out:?}"));
    }
    if relchar(&["no-such-command"]).0 != 2 {
        problems.push("unknown command did not exit with 2".into());
    }
    if relchar(&["char", "eval", "no-such-character", "gen:0"]).0 != 1 {
        problems.push("validation failure did not exit with 1".into());
    }
    problems
}

fn main() {
    let mut all_pass = true;
    for (i, suite) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let report = suites::run(suite, SEED).expect("known suite");
        let mut problems: Vec<String> = report.failures.iter().map(|f| format!("{}: {} != {}", f.id, f.lhs, f.rhs)).collect();
        problems.extend(extra_checks(&report));
        if *suite == "cli-roundtrip" {
            problems.extend(binary_checks());
        }
        let elapsed = start.elapsed();
        if elapsed > BUDGET {
            problems.push(format!("took {:.1} s", elapsed.as_secs_f64()));
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {suite}: {}/{} cases in {:.2} s", i + 1, report.passes, report.cases, elapsed.as_secs_f64());
        for p in problems.iter().take(10) {
            println!("     {p}");
        }
        all_pass &= problems.is_empty();
    }
    if !all_pass {
        std::process::exit(1);
    }
}
