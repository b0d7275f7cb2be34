//! Structured verification reports. Every `verify_*` entry point returns one
//! of these instead of panicking on a mathematical failure: a failed identity
//! is data, carried with a rendered witness.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub parameters: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall time; not serialized so that reports are byte-reproducible.
    #[serde(skip)]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_seed(seed: u64) -> Self {
        Self {
            checks: Vec::new(),
            seed: Some(seed),
        }
    }

    pub fn record(&mut self, name: &str, parameters: String, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            parameters,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { witness },
            runtime_ms: None,
        });
    }

    pub fn record_skipped(&mut self, name: &str, parameters: String, reason: String) {
        self.checks.push(Check {
            name: name.to_string(),
            parameters,
            status: Status::Skipped,
            witness: Some(reason),
            runtime_ms: None,
        });
    }

    /// Run `f`, recording the outcome and its wall time.
    pub fn timed(&mut self, name: &str, parameters: String, f: impl FnOnce() -> (bool, Option<String>)) {
        let start = Instant::now();
        let (ok, witness) = f();
        let ms = start.elapsed().as_millis() as u64;
        self.checks.push(Check {
            name: name.to_string(),
            parameters,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { witness },
            runtime_ms: Some(ms),
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Lexicographic by name, then parameters: the canonical report order.
    pub fn sort(&mut self) {
        self.checks
            .sort_by(|a, b| (a.name.as_str(), a.parameters.as_str()).cmp(&(b.name.as_str(), b.parameters.as_str())));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.sort();
        serde_json::to_string_pretty(&sorted).expect("report serialization")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted = self.clone();
        sorted.sort();
        for c in &sorted.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "{status}  {}", c.name)?;
            if !c.parameters.is_empty() {
                write!(f, " [{}]", c.parameters)?;
            }
            if let Some(ms) = c.runtime_ms {
                write!(f, " ({ms} ms)")?;
            }
            if let Some(w) = &c.witness {
                write!(f, "\n      witness: {w}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}
