//! Structured pass/fail reports produced by the verification suites.

use serde::Serialize;
use std::fmt;

/// One checked identity with both sides rendered for inspection.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub identity: String,
    pub params: serde_json::Value,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

/// A list of checked identities. Failures are entries, not errors, so a
/// caller can render the whole table.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Report {
    entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Record a comparison of two displayable values.
    pub fn check<L: fmt::Display, R: fmt::Display>(
        &mut self,
        identity: &str,
        params: serde_json::Value,
        lhs: &L,
        rhs: &R,
        pass: bool,
    ) {
        self.entries.push(ReportEntry {
            identity: identity.to_string(),
            params,
            pass,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    /// Record a comparison where passing means equality.
    pub fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        identity: &str,
        params: serde_json::Value,
        lhs: &T,
        rhs: &T,
    ) {
        self.check(identity, params, lhs, rhs, lhs == rhs);
    }

    pub fn entries(&self) -> &[ReportEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Merge another report's entries into this one.
    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_fail_entries() {
        let mut r = Report::new();
        r.check_eq("same", serde_json::json!({"d": 1}), &1, &1);
        r.check_eq("diff", serde_json::json!({"d": 2}), &1, &2);
        assert_eq!(r.len(), 2);
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js[0]["identity"], "same");
        assert_eq!(js[1]["pass"], false);
        assert_eq!(js[1]["lhs"], "1");
    }
}
