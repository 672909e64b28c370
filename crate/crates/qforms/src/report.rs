//! Check lists shared by the verification layers and the CLI: every
//! verdict carries a name, a status, human-readable details, and the
//! certificate of the linear algebra behind it.

use crate::linalg::RankCertificate;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

/// An append-only list of checks; failures are entries, not exceptions.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status,
            details: details.into(),
            certificate: None,
        });
    }

    /// Record a boolean verdict as pass/fail.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, details);
    }

    pub fn check_certified(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        details: impl Into<String>,
        cert: &RankCertificate,
    ) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
            certificate: Some(cert.tag().to_string()),
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.push(name, Status::Skipped, details);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_and_merge() {
        let mut r = Report::new();
        r.check("a", true, "fine");
        r.skip("b", "not applicable");
        assert!(r.all_passed());
        let mut s = Report::new();
        s.check("c", false, "broken");
        r.merge(s);
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
    }
}
