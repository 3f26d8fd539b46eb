//! Verification reports with a stable JSON form.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Human-readable statement of what was checked.
    pub anchor: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Extra information recorded on passing checks (e.g. a computed phase).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, pass: bool) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            pass,
            witness: None,
            note: None,
        }
    }

    /// Passes iff `failures` is empty; failures become the witness.
    pub fn from_failures(id: impl Into<String>, anchor: impl Into<String>, failures: Vec<String>) -> Self {
        let pass = failures.is_empty();
        let witness = (!pass).then(|| failures.join("; "));
        Self {
            witness,
            ..Self::new(id, anchor, pass)
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        if !self.pass {
            self.witness = Some(witness.into());
        }
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Self {
            suite: suite.into(),
            pass: summary.failed == 0,
            checks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        for c in &self.checks {
            writeln!(f, "[{}] {:<40} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.anchor)?;
            if let Some(w) = &c.witness {
                writeln!(f, "       witness: {w}")?;
            }
            if let Some(n) = &c.note {
                writeln!(f, "       note: {n}")?;
            }
        }
        writeln!(
            f,
            "{}: {} checks, {} passed, {} failed",
            if self.pass { "PASS" } else { "FAIL" },
            self.summary.total,
            self.summary.passed,
            self.summary.failed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = VerificationReport::new(
            "demo",
            vec![
                Check::new("a/one", "x = x", true).with_note("phase i"),
                Check::from_failures("a/two", "y = 0", vec!["entry (1,2)".into()]),
            ],
        );
        assert!(!r.pass);
        let s = r.to_json();
        let back = VerificationReport::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), s);
        assert!(s.find("\"suite\"").unwrap() < s.find("\"checks\"").unwrap());
    }

    #[test]
    fn witness_only_on_failure() {
        assert_eq!(Check::new("x", "y", true).with_witness("w").witness, None);
        assert_eq!(Check::new("x", "y", false).with_witness("w").witness.as_deref(), Some("w"));
    }
}
