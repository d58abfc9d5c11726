//! Machine-readable certification reports with an agreeing human summary.
//!
//! Reports are deterministic: identical inputs produce byte-identical JSON,
//! except for the optional timestamp field which callers may omit.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskRecord {
    pub task: String,
    pub subject: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl TaskRecord {
    pub fn pass(task: &str, subject: &str, details: Vec<String>) -> Self {
        TaskRecord { task: task.into(), subject: subject.into(), status: Status::Pass, details }
    }

    pub fn fail(task: &str, subject: &str, details: Vec<String>) -> Self {
        TaskRecord { task: task.into(), subject: subject.into(), status: Status::Fail, details }
    }

    pub fn error(task: &str, subject: &str, message: String) -> Self {
        TaskRecord {
            task: task.into(),
            subject: subject.into(),
            status: Status::Error,
            details: vec![message],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub records: Vec<TaskRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(records: Vec<TaskRecord>, timestamp: Option<String>) -> Self {
        let summary = Summary {
            total: records.len(),
            passed: records.iter().filter(|r| r.status == Status::Pass).count(),
            failed: records.iter().filter(|r| r.status == Status::Fail).count(),
            errors: records.iter().filter(|r| r.status == Status::Error).count(),
        };
        Report { schema_version: SCHEMA_VERSION, timestamp, records, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errors == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per record plus a summary line, agreeing with the JSON.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            out.push_str(&format!("{status:5} {}: {}", r.task, r.subject));
            if r.status != Status::Pass {
                for d in &r.details {
                    out.push_str(&format!("\n      {d}"));
                }
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "summary: {} total, {} passed, {} failed, {} errors\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.errors
        ));
        out
    }
}
