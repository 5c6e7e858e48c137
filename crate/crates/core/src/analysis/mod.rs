//! Verification suites for the conjectures on key polynomials, the casework
//! identities for small `n`, topological profiles and the counting formulas.
//!
//! Every suite returns a [`VerificationReport`]: one row per parameter
//! combination, rows in a deterministic order, and a verdict.

mod casework;
mod counting;
mod numerology;
mod numeric;
mod profile;
mod suite;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use casework::casework_identities;
pub use counting::{inflection_budget, omega_real, InflectionBudget};
pub use numerology::{default_grid, numerology_pairs, verify_numerology, verify_numerology_pairs};
pub use numeric::{default_samples, numeric_parametrization_check};
pub use profile::{
    profile_compare, profile_extract, profile_rows, Incidence, IntervalProfile, ProfileRow,
    ProfileSignature,
    BASE_INTERVALS,
};
pub use suite::{verify_all, verify_suite, VerifyBounds, SUITES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The row's input was refused (for instance a singular curve).
    Rejected,
}

/// One parameter combination of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub observed: Value,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportRow {
    pub fn new(check: &str, params: Value, expected: Value, observed: Value, pass: bool) -> Self {
        ReportRow {
            check: check.into(),
            params,
            expected,
            observed,
            status: if pass { RowStatus::Pass } else { RowStatus::Fail },
            note: None,
        }
    }

    pub fn rejected(check: &str, params: Value, err: &Error) -> Self {
        ReportRow {
            check: check.into(),
            params,
            expected: Value::Null,
            observed: Value::String(err.to_string()),
            status: RowStatus::Rejected,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == RowStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "VERIFIED-UP-TO-BOUND")]
    VerifiedUpToBound,
    #[serde(rename = "FALSIFIED")]
    Falsified,
    #[serde(rename = "INPUT-REJECTED")]
    InputRejected,
}

impl Verdict {
    fn of(rows: &[ReportRow]) -> Verdict {
        if rows.iter().any(|r| r.status == RowStatus::Fail) {
            Verdict::Falsified
        } else if rows.iter().any(|r| r.status == RowStatus::Rejected) {
            Verdict::InputRejected
        } else {
            Verdict::VerifiedUpToBound
        }
    }
}

/// Verdict of one section of a consolidated report, with the first failing
/// row as witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSummary {
    pub section: String,
    pub rows: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub bounds: Value,
    pub rows: Vec<ReportRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionSummary>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, bounds: Value, rows: Vec<ReportRow>, started: Instant) -> Self {
        let verdict = Verdict::of(&rows);
        VerificationReport {
            suite: suite.into(),
            bounds,
            rows,
            sections: Vec::new(),
            verdict,
            elapsed: started.elapsed(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdict == Verdict::VerifiedUpToBound
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.status != RowStatus::Pass)
    }
}

/// Cooperative wall-clock budget for long suites.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
