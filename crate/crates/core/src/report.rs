//! Validation reports. Checks never abort on the first failure; they list
//! every violation they find, in a deterministic order.

use std::fmt;

/// A single located violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Where the violation sits (a morphism name, an object name, ...).
    pub location: String,
    /// What is wrong.
    pub detail: String,
}

/// Outcome of a validation pass. Empty means the property holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// Name of the check that produced this report.
    pub check: String,
    pub violations: Vec<Violation>,
    /// Informational lines (counts, statistics); not failures.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, location: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            location: location.into(),
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            writeln!(f, "{}: ok", self.check)?;
        } else {
            writeln!(f, "{}: {} violation(s)", self.check, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {}: {}", v.location, v.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
