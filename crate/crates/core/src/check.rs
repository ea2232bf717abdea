//! Named pass/fail results with optional witnesses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not evaluated because a prerequisite failed.
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// On failure: the offending indices or values. On pass: optional detail.
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered list of checks plus informational notes (values that are
/// reported but not asserted).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: &str, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    pub fn pass(&mut self, name: &str) {
        self.record(name, true, None);
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.record(name, false, Some(witness));
    }

    /// Record a check from a first-failure search: `None` means pass.
    pub fn expect_none(&mut self, name: &str, failure: Option<String>) {
        let ok = failure.is_none();
        self.record(name, ok, failure);
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Skipped,
            witness: Some(reason.to_string()),
        });
    }

    pub fn note(&mut self, key: &str, value: impl fmt::Display) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// True iff no check failed. Skipped checks do not count as failures.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn note_value(&self, key: &str) -> Option<&str> {
        self.notes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{:>7}] {}", c.status.as_str(), c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {}", w)?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.notes {
            writeln!(f, "  {} = {}", k, v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_is_not_failure() {
        let mut r = Report::new();
        r.pass("a");
        r.skip("b", "needs a");
        assert!(r.all_passed());
        r.fail("c", "i=1".into());
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.get("c").unwrap().witness.as_deref(), Some("i=1"));
    }
}
