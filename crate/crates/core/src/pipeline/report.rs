use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{DEFAULT_CLOSURE_CAP, DEFAULT_QUOTIENT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Resource limits and sample sizes, recorded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub closure_cap: usize,
    pub quotient_cap: usize,
    /// Overrides the per-verification default sample count.
    pub samples: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closure_cap: DEFAULT_CLOSURE_CAP,
            quotient_cap: DEFAULT_QUOTIENT_CAP,
            samples: None,
        }
    }
}

impl Caps {
    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub id: u32,
    pub description: String,
    /// Quoted statement this step certifies.
    pub anchor: String,
    pub status: Status,
    pub evidence: BTreeMap<String, Value>,
}

impl Step {
    pub fn new(id: u32, description: &str, anchor: &str) -> Self {
        Step {
            id,
            description: description.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.evidence.insert(key.to_string(), value.into());
        self
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.evidence.insert(key.to_string(), value.into());
    }

    pub fn pass_if(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn skipped(mut self, reason: &str) -> Self {
        self.status = Status::Skipped;
        self.evidence.insert("skip_reason".into(), reason.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub title: String,
    pub parameters: BTreeMap<String, Value>,
    pub steps: Vec<Step>,
    /// `Fail` if any step failed, else `Pass`; skipped steps do not count.
    pub overall: Status,
    /// A requested step could not run within the caps.
    pub cap_exhausted: bool,
    pub seed: u64,
    pub caps: Caps,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim: &str, title: &str, seed: u64, caps: &Caps) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            title: title.to_string(),
            parameters: BTreeMap::new(),
            steps: Vec::new(),
            overall: Status::Pass,
            cap_exhausted: false,
            seed,
            caps: caps.clone(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
        self.recompute();
    }

    pub fn recompute(&mut self) {
        self.overall = if self.steps.iter().any(|s| s.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn step(&self, id: u32) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_tracks_failures() {
        let mut r = VerificationReport::new("x", "x", 0, &Caps::default());
        r.push(Step::new(1, "a", "q").pass_if(true));
        r.push(Step::new(2, "b", "q").skipped("not requested"));
        assert!(r.passed());
        r.push(Step::new(3, "c", "q").pass_if(false));
        assert_eq!(r.overall, Status::Fail);
        assert_eq!(r.step(2).unwrap().status, Status::Skipped);
    }
}
