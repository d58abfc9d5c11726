//! The built-in certification suite: one record per certified property over
//! the shipped fixture catalogue. `run_all` is what `currents certify --all`
//! executes; the acceptance test target asserts the same records.

use crate::report::{Report, TaskRecord};

mod suite;

pub use suite::{all_criteria, criterion, CriterionOutcome, CRITERIA};

/// Runs the full suite and packages it as a report.
pub fn run_all(timestamp: Option<String>) -> Report {
    let records = all_criteria()
        .into_iter()
        .map(|c| {
            if c.passed {
                TaskRecord::pass("certify", &c.title, c.details)
            } else {
                TaskRecord::fail("certify", &c.title, c.details)
            }
        })
        .collect();
    Report::new(records, timestamp)
}
