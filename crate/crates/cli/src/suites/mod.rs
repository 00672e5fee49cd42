//! Verification suites. Each suite draws its cases from a seeded generator,
//! checks them exactly and reports the failures, sorted by case id.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::panic::{self, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use relchar_core::{Character, Int, Rat, Result};

mod chain;
mod characters;
mod comparison;
mod fiber;
mod homology;
mod kunneth;
mod products;
mod roundtrip;
mod sections;
mod sequences;

/// Suites in acceptance order.
pub const SUITES: [&str; 10] = [
    "chain-axioms",
    "homology-golden",
    "character-axioms",
    "exact-sequences",
    "comparison-theorem",
    "parallel-sections",
    "kunneth",
    "products",
    "fiber-integration",
    "cli-roundtrip",
];

/// Extra names accepted by `verify`.
pub const ALIASES: [&str; 2] = ["stokes", "all"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    /// Every case id, in sorted order. Not part of the rendered report.
    pub ids: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self.failures.iter().map(|f| json!({ "id": f.id, "lhs": f.lhs, "rhs": f.rhs })).collect();
        json!({ "suite": self.suite, "cases": self.cases, "passes": self.passes, "failures": failures })
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Collects case outcomes for one suite.
pub struct Runner {
    suite: String,
    outcomes: BTreeMap<String, Option<Failure>>,
}

impl Runner {
    pub fn new(suite: &str) -> Self {
        Runner { suite: suite.to_string(), outcomes: BTreeMap::new() }
    }

    /// Runs one case. The closure renders both sides of the identity being
    /// checked; the case passes when the renderings agree. Errors and panics
    /// count as failures.
    pub fn case(&mut self, id: impl Into<String>, check: impl FnOnce() -> Result<(String, String)>) {
        let id = id.into();
        let failure = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok((l, r))) if l == r => None,
            Ok(Ok((lhs, rhs))) => Some(Failure { id: id.clone(), lhs, rhs }),
            Ok(Err(e)) => Some(Failure { id: id.clone(), lhs: format!("error: {e}"), rhs: "ok".into() }),
            Err(p) => {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
                Some(Failure { id: id.clone(), lhs: format!("panic: {msg}"), rhs: "ok".into() })
            }
        };
        let previous = self.outcomes.insert(id.clone(), failure);
        assert!(previous.is_none(), "duplicate case id {id}");
    }

    pub fn finish(self) -> Report {
        let cases = self.outcomes.len();
        let ids = self.outcomes.keys().cloned().collect();
        let failures: Vec<Failure> = self.outcomes.into_values().flatten().collect();
        Report { suite: self.suite, cases, passes: cases - failures.len(), failures, ids }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn show_ints(v: &[Int]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn show_rats(v: &[Rat]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn show_char(h: &Character) -> String {
    format!(
        "{} deg {}: c={} lift={} curv={}",
        h.space().describe(),
        h.degree(),
        show_ints(h.cocycle()),
        show_rats(h.lift()),
        show_rats(h.curvature())
    )
}

/// Both sides of `a == b` in the character group.
pub fn same_char(a: &Character, b: &Character) -> Result<(String, String)> {
    Ok(if a.equals(b)? { ("equal".into(), "equal".into()) } else { (show_char(a), show_char(b)) })
}

pub fn same<T: Display>(a: T, b: T) -> (String, String) {
    (a.to_string(), b.to_string())
}

pub fn holds(ok: bool, what: &str) -> (String, String) {
    if ok {
        ("holds".into(), "holds".into())
    } else {
        (format!("{what} fails"), "holds".into())
    }
}

pub fn run(suite: &str, seed: u64) -> Option<Report> {
    Some(match suite {
        "chain-axioms" => chain::run(seed, false),
        "stokes" => chain::run(seed, true),
        "homology-golden" => homology::run(seed),
        "character-axioms" => characters::run(seed),
        "exact-sequences" => sequences::run(seed),
        "comparison-theorem" => comparison::run(seed),
        "parallel-sections" => sections::run(seed),
        "kunneth" => kunneth::run(seed),
        "products" => products::run(seed),
        "fiber-integration" => fiber::run(seed),
        "cli-roundtrip" => roundtrip::run(seed),
        "all" => return Some(run_all(seed)),
        _ => return None,
    })
}

/// Every suite in turn, merged into one report; failure ids carry the
/// suite name as a prefix.
pub fn run_all(seed: u64) -> Report {
    let mut all = Report { suite: "all".into(), cases: 0, passes: 0, failures: Vec::new(), ids: Vec::new() };
    for s in SUITES {
        let r = run(s, seed).expect("known suite");
        all.cases += r.cases;
        all.passes += r.passes;
        all.failures.extend(r.failures.into_iter().map(|f| Failure { id: format!("{s}:{}", f.id), ..f }));
        all.ids.extend(r.ids.into_iter().map(|id| format!("{s}:{id}")));
    }
    all.failures.sort_by(|a, b| a.id.cmp(&b.id));
    all
}
