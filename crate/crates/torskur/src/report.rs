//! Verification reports. Ordering is canonical so reports are byte-stable;
//! wall-clock timing is only recorded when asked for.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

fn timing_enabled() -> bool {
    std::env::var("TORSKUR_TIMING").is_ok_and(|v| v == "1")
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report { suite: suite.into(), parameters: BTreeMap::new(), checks: Vec::new(), data: None }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Report {
        self.parameters.insert(key.into(), serde_json::to_value(v).unwrap());
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Run `f`, which returns `Ok(detail)` on success and `Err(witness)` on failure.
    pub fn run(&mut self, id: impl Into<String>, f: impl FnOnce() -> std::result::Result<Option<Value>, String>) {
        let start = Instant::now();
        let r = f();
        let timing_ms = timing_enabled().then(|| start.elapsed().as_millis() as u64);
        let c = match r {
            Ok(detail) => Check { id: id.into(), status: Status::Pass, witness: None, detail, timing_ms },
            Err(w) => Check { id: id.into(), status: Status::Fail, witness: Some(w), detail: None, timing_ms },
        };
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.checks.push(c);
        }
    }

    /// Overall status: fail beats inconclusive beats pass.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status != Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}

pub fn inconclusive(id: impl Into<String>, why: impl Into<String>) -> Check {
    Check { id: id.into(), status: Status::Inconclusive, witness: Some(why.into()), detail: None, timing_ms: None }
}
