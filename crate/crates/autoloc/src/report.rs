//! Check records and suite reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PreconditionSkip,
}

/// One evaluated check, before it is placed in a report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, inputs: Value, holds: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            inputs,
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            reason: None,
            witness,
        }
    }

    pub fn skip(name: impl Into<String>, inputs: Value, reason: impl Into<String>) -> Self {
        Check { name: name.into(), inputs, verdict: Verdict::PreconditionSkip, reason: Some(reason.into()), witness: Value::Null }
    }

    /// A check whose computation raised an error.
    pub fn error(name: impl Into<String>, inputs: Value, err: impl std::fmt::Display) -> Self {
        Check { name: name.into(), inputs, verdict: Verdict::Fail, reason: Some(err.to_string()), witness: Value::Null }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    /// `None` for checks that do not depend on the seed.
    pub instance: Option<usize>,
    pub seed: Option<u64>,
    pub inputs_digest: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub inputs: Value,
    pub witness: Value,
}

pub fn digest(v: &Value) -> String {
    let canonical = serde_json::to_string(v).expect("values serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Record {
    pub fn from_check(c: Check, instance: Option<usize>, seed: Option<u64>) -> Self {
        Record {
            inputs_digest: digest(&c.inputs),
            name: c.name,
            instance,
            seed,
            verdict: c.verdict,
            reason: c.reason,
            inputs: c.inputs,
            witness: c.witness,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub max_degree: usize,
    pub instance_count: usize,
    pub primes: Vec<u64>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, seed: u64, max_degree: usize, instance_count: usize, primes: Vec<u64>, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::PreconditionSkip => summary.skip += 1,
            }
        }
        Report { suite: suite.to_string(), seed, max_degree, instance_count, primes, records, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per record, with the inputs and witness of failures.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "suite {} seed {} instances {} max-degree {} primes {}",
            self.suite,
            self.seed,
            self.instance_count,
            self.max_degree,
            primes.join(",")
        )
        .unwrap();
        for r in &self.records {
            let tag = match r.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::PreconditionSkip => "SKIP",
            };
            let at = r.instance.map_or_else(|| "fixed".to_string(), |i| format!("#{}", i));
            write!(out, "{} {} {} {}", tag, r.name, at, &r.inputs_digest[..16]).unwrap();
            if let Some(reason) = &r.reason {
                write!(out, " ({})", reason).unwrap();
            }
            out.push('\n');
            if r.verdict == Verdict::Fail {
                writeln!(out, "  inputs: {}", r.inputs).unwrap();
                writeln!(out, "  witness: {}", r.witness).unwrap();
            }
        }
        writeln!(out, "summary: {} pass, {} fail, {} skip", self.summary.pass, self.summary.fail, self.summary.skip).unwrap();
        out
    }
}
