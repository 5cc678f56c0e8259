//! Command reports: a human-readable rendering and a deterministic JSON mirror.
//!
//! JSON schema (all numbers exact, as strings):
//!
//! ```text
//! {
//!   "command": "spectrum fib.sub",
//!   "config":  { "<bound name>": "<value>", ... },
//!   "checks":  [ { "name": ..., "passed": true, "detail": ... }, ... ],
//!   "results": { "<key>": <string | array | object>, ... },
//!   "status":  "pass" | "check-failed" | "budget-exhausted"
//! }
//! ```
//!
//! Integers are decimal strings, rationals `"p/q"`, and real intervals
//! `{"lo": "p/q", "hi": "p/q", "width": "p/q"}`. Object keys are sorted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use retword::spectrum::RootEnclosure;
use retword::Check;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    CheckFailed,
    BudgetExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::CheckFailed => 1,
            Status::BudgetExhausted => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Check> for CheckLine {
    fn from(c: &Check) -> Self {
        CheckLine {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckLine>,
    pub results: BTreeMap<String, Value>,
    /// Set when a bounded search ended without a witness.
    #[serde(skip)]
    pub exhausted: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            config: BTreeMap::new(),
            checks: Vec::new(),
            results: BTreeMap::new(),
            exhausted: false,
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.config.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_owned(), value.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn checks_from<'a>(&mut self, checks: impl IntoIterator<Item = &'a Check>) -> &mut Self {
        self.checks.extend(checks.into_iter().map(CheckLine::from));
        self
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| !c.passed) {
            Status::CheckFailed
        } else if self.exhausted {
            Status::BudgetExhausted
        } else {
            Status::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        v["status"] = serde_json::to_value(self.status()).unwrap();
        serde_json::to_string_pretty(&v).unwrap()
    }

    pub fn to_human(&self, elapsed_ms: Option<u128>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (k, v) in &self.results {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Object(o) if o.contains_key("lo") => {
                    let _ = writeln!(out, "{k}: {}", human_interval(v));
                }
                Value::Array(items) if !items.is_empty() && items.iter().all(|x| x.get("lo").is_some()) => {
                    let parts: Vec<String> = items.iter().map(human_interval).collect();
                    let _ = writeln!(out, "{k}: {}", parts.join(", "));
                }
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    let parts: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
                    let _ = writeln!(out, "{k}: {}", parts.join(", "));
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "[{mark}] {}", c.name);
            } else {
                let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
            }
        }
        let status = match self.status() {
            Status::Pass => "pass",
            Status::CheckFailed => "check failed",
            Status::BudgetExhausted => "budget exhausted",
        };
        let _ = write!(out, "status: {status}");
        if let Some(ms) = elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        out
    }
}

/// `lo` for a point, else `[lo, hi] ≈ mid`; the float is for reading only.
fn human_interval(v: &Value) -> String {
    let field = |k: &str| v[k].as_str().unwrap_or("?").trim_end_matches("/1").to_owned();
    let (lo, hi) = (field("lo"), field("hi"));
    if lo == hi {
        return lo;
    }
    let approx = |s: &str| -> f64 {
        match s.split_once('/') {
            Some((p, q)) => p.parse::<f64>().unwrap_or(f64::NAN) / q.parse::<f64>().unwrap_or(f64::NAN),
            None => s.parse().unwrap_or(f64::NAN),
        }
    };
    format!("[{lo}, {hi}] ≈ {:.10}", (approx(&lo) + approx(&hi)) / 2.0)
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

pub fn interval(e: &RootEnclosure) -> Value {
    json!({ "lo": rational(&e.lo), "hi": rational(&e.hi), "width": rational(&e.width()) })
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}
