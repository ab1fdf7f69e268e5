//! Structured pass/fail reports.

use crate::error::Verdict;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    /// The object or morphism the check ran over.
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn from_verdict(check_id: &str, subject: impl Into<String>, v: &Verdict) -> CheckResult {
        CheckResult {
            check_id: check_id.to_string(),
            subject: subject.into(),
            pass: v.holds,
            counterexample: v.witness.clone(),
        }
    }

    pub fn error(check_id: &str, subject: impl Into<String>, err: impl ToString) -> CheckResult {
        CheckResult {
            check_id: check_id.to_string(),
            subject: subject.into(),
            pass: false,
            counterexample: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, result: CheckResult) {
        self.checks.push(result);
    }

    /// Records only the first failure per check id, so a long sweep
    /// reports one witness per check instead of thousands.
    pub fn merge(&mut self, check_id: &str, subject: impl Into<String>, v: &Verdict) {
        match self.checks.iter_mut().find(|c| c.check_id == check_id) {
            Some(existing) => {
                if existing.pass && !v.holds {
                    *existing = CheckResult::from_verdict(check_id, subject, v);
                }
            }
            None => self.push(CheckResult::from_verdict(check_id, subject, v)),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.title));
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {:<40} {}\n", c.check_id, c.subject));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("         counterexample: {ce}\n"));
            }
        }
        let verdict = if self.all_pass() { "ALL PASS" } else { "FAILURES PRESENT" };
        out.push_str(&format!("result: {verdict}\n"));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
