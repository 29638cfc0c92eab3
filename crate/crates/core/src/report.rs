//! Run reports: the JSON document emitted by `bf verify --json`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ideal::SearchBox;
use crate::probe::{ClaimReport, ClaimStatus};

/// Process exit codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExitStatus {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
    Usage = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub claim_id: String,
    pub status: String,
    pub details: Value,
    pub box_used: Option<SearchBox>,
    pub timing_ms: u64,
}

impl From<&ClaimReport> for ClaimEntry {
    fn from(r: &ClaimReport) -> Self {
        ClaimEntry {
            claim_id: r.claim_id.clone(),
            status: r.status.as_str().into(),
            details: Value::Array(r.details.iter().map(|d| d.to_json()).collect()),
            box_used: r.box_used,
            timing_ms: r.timing.as_millis() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub config: Value,
    pub claims: Vec<ClaimEntry>,
    pub summary: Summary,
    /// Seconds.
    pub wall_time: f64,
}

impl RunReport {
    pub fn new(config: Value, reports: &[ClaimReport], wall_time: f64) -> Self {
        let claims: Vec<ClaimEntry> = reports.iter().map(ClaimEntry::from).collect();
        let mut summary = Summary::default();
        for r in reports {
            match r.status {
                ClaimStatus::Pass => summary.pass += 1,
                ClaimStatus::Fail => summary.fail += 1,
                ClaimStatus::Inconclusive => summary.inconclusive += 1,
            }
        }
        RunReport { version: env!("CARGO_PKG_VERSION").into(), config, claims, summary, wall_time }
    }

    /// Whether `summary` agrees with the claim list.
    pub fn summary_consistent(&self) -> bool {
        let count = |s: &str| self.claims.iter().filter(|c| c.status == s).count();
        self.summary
            == Summary { pass: count("pass"), fail: count("fail"), inconclusive: count("inconclusive") }
    }

    pub fn exit_status(&self) -> ExitStatus {
        if self.summary.fail > 0 {
            ExitStatus::Fail
        } else if self.summary.inconclusive > 0 {
            ExitStatus::Inconclusive
        } else {
            ExitStatus::Pass
        }
    }

    /// Copy with every timing field zeroed, for comparing runs.
    pub fn without_timing(&self) -> RunReport {
        let mut out = self.clone();
        out.wall_time = 0.0;
        for c in &mut out.claims {
            c.timing_ms = 0;
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("[{}] {} ({} ms)\n", c.status.to_uppercase(), c.claim_id, c.timing_ms));
            if let Value::Array(details) = &c.details {
                for d in details {
                    let status = d["status"].as_str().unwrap_or("?");
                    let subject = d["subject"].as_str().unwrap_or("?");
                    out.push_str(&format!("    {status:<12} {subject}\n"));
                }
            }
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} inconclusive ({:.2} s)\n",
            self.summary.pass, self.summary.fail, self.summary.inconclusive, self.wall_time
        ));
        out
    }
}
