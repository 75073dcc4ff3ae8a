//! Pass/fail/skip reporting shared by the multi-step verification
//! operations.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of one named sub-check. A failure always carries a witness
/// rendered as text sufficient to reproduce it; a skip carries its reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl CheckOutcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail { .. })
    }
}

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub outcome: CheckOutcome,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, outcome: CheckOutcome) -> Self {
        CheckItem {
            name: name.into(),
            outcome,
        }
    }
}

/// A group of sub-checks about one subject (an algebra, a representation).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub subject: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, outcome: CheckOutcome) {
        self.items.push(CheckItem::new(name, outcome));
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| !i.outcome.is_fail())
    }

    pub fn first_fail(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.outcome.is_fail())
    }
}
