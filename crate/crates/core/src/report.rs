//! Structured results for verification suites, renderable as text or JSON.
//! JSON output is byte-stable for a fixed configuration: map keys are
//! emitted sorted and wall-clock time appears only in the text rendering.

use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Deliberately not attempted; the payload names the reason (e.g.
    /// "budget").
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> String {
        match self {
            Status::Pass => "PASS".into(),
            Status::Fail => "FAIL".into(),
            Status::Skipped(reason) => format!("SKIPPED({reason})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AssertionRecord {
    /// What was checked, in a stable machine-friendly phrasing.
    pub claim: String,
    /// Which instance it was checked on.
    pub instance: String,
    pub status: Status,
    /// For failures, enough data to replay the check by hand.
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub instances: u64,
    pub assertions: Vec<AssertionRecord>,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, config: BTreeMap<String, String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            config,
            instances: 0,
            assertions: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn record(&mut self, claim: &str, instance: &str, status: Status, witness: Option<String>) {
        self.assertions.push(AssertionRecord {
            claim: claim.into(),
            instance: instance.into(),
            status,
            witness,
        });
    }

    pub fn pass(&mut self, claim: &str, instance: &str) {
        self.record(claim, instance, Status::Pass, None);
    }

    pub fn fail(&mut self, claim: &str, instance: &str, witness: String) {
        self.record(claim, instance, Status::Fail, Some(witness));
    }

    pub fn skip(&mut self, claim: &str, instance: &str, reason: &str) {
        self.record(claim, instance, Status::Skipped(reason.into()), None);
    }

    /// Record a boolean check in a single call.
    pub fn check(&mut self, claim: &str, instance: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(claim, instance);
        } else {
            self.fail(claim, instance, witness());
        }
    }

    pub fn counts(&self) -> (u64, u64, u64) {
        let mut c = (0, 0, 0);
        for a in &self.assertions {
            match a.status {
                Status::Pass => c.0 += 1,
                Status::Fail => c.1 += 1,
                Status::Skipped(_) => c.2 += 1,
            }
        }
        c
    }

    pub fn has_failures(&self) -> bool {
        self.assertions.iter().any(|a| a.status == Status::Fail)
    }

    /// Failures restricted to claims with the given prefix.
    pub fn claim_ok(&self, prefix: &str) -> bool {
        !self
            .assertions
            .iter()
            .any(|a| a.claim.starts_with(prefix) && a.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let (pass, fail, skipped) = self.counts();
        json!({
            "schema": 1,
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config,
            "instances": self.instances,
            "counts": { "pass": pass, "fail": fail, "skipped": skipped },
            "assertions": self
                .assertions
                .iter()
                .map(|a| {
                    json!({
                        "claim": a.claim,
                        "instance": a.instance,
                        "status": a.status.label(),
                        "witness": a.witness,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        out.push_str(&format!("seed: {}\n", self.seed));
        for (k, v) in &self.config {
            out.push_str(&format!("config {k}={v}\n"));
        }
        out.push_str(&format!("instances: {}\n", self.instances));
        for a in &self.assertions {
            out.push_str(&format!("[{}] {} :: {}\n", a.status.label(), a.claim, a.instance));
            if let Some(w) = &a.witness {
                for line in w.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        let (pass, fail, skipped) = self.counts();
        out.push_str(&format!("summary: {pass} pass, {fail} fail, {skipped} skipped\n"));
        out.push_str(&format!("wall time: {:.3}s\n", self.wall_time.as_secs_f64()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_byte_stable_and_sorted() {
        let mut cfg = BTreeMap::new();
        cfg.insert("threads".to_string(), "1".to_string());
        cfg.insert("enum_budget".to_string(), "2000000".to_string());
        let mut r = VerificationReport::new("demo", 7, cfg);
        r.pass("a-claim", "inst-1");
        r.fail("b-claim", "inst-2", "expected 3, got 4".into());
        r.skip("c-claim", "inst-3", "budget");
        r.instances = 3;
        r.wall_time = Duration::from_millis(1234);
        let one = serde_json::to_string(&r.to_json()).unwrap();
        r.wall_time = Duration::from_millis(99); // wall time must not leak
        let two = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(one, two);
        assert!(one.find("\"config\"").unwrap() < one.find("\"counts\"").unwrap());
        assert!(one.contains("SKIPPED(budget)"));
    }

    #[test]
    fn failure_detection() {
        let mut r = VerificationReport::new("demo", 0, BTreeMap::new());
        r.pass("x", "i");
        assert!(!r.has_failures());
        r.fail("y", "i", "w".into());
        assert!(r.has_failures());
        assert!(r.claim_ok("x"));
        assert!(!r.claim_ok("y"));
        let text = r.render_text();
        assert!(text.contains("[FAIL] y :: i"));
        assert!(text.contains("summary: 1 pass, 1 fail, 0 skipped"));
    }
}
