//! Verification reports.
//!
//! Every checker returns a [`Report`]: one entry per axiom, keyed by a
//! stable id (`CM1`, `CM2`, `ICHG`, `SRC`, `TGT`, `UNIT`, `DERIV`,
//! `HTPY1`..`HTPY3`, ...). A failing entry carries the first witness found,
//! as basis indices plus a rendered description.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: impl Into<Vec<usize>>, detail: impl Into<String>) -> Self {
        Self {
            indices: indices.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            entries: Vec::new(),
        }
    }

    /// Records the outcome of one axiom: `None` means it held everywhere.
    pub fn record(&mut self, axiom: &str, failure: Option<Witness>) {
        self.entries.push(ReportEntry {
            axiom: axiom.to_string(),
            passed: failure.is_none(),
            witness: failure,
            note: None,
        });
    }

    pub fn record_with_note(&mut self, axiom: &str, failure: Option<Witness>, note: &str) {
        self.record(axiom, failure);
        if let Some(e) = self.entries.last_mut() {
            e.note = Some(note.to_string());
        }
    }

    /// Appends the entries of `other`, prefixing their ids with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            if !prefix.is_empty() {
                e.axiom = format!("{prefix}.{}", e.axiom);
            }
            self.entries.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, axiom: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    /// True when the axiom was checked and held.
    pub fn holds(&self, axiom: &str) -> bool {
        self.entry(axiom).is_some_and(|e| e.passed)
    }

    /// True when the axiom was checked and failed.
    pub fn fails(&self, axiom: &str) -> bool {
        self.entry(axiom).is_some_and(|e| !e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn witness(&self, axiom: &str) -> Option<&Witness> {
        self.entry(axiom).and_then(|e| e.witness.as_ref())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report: {}", self.subject)?;
        for e in &self.entries {
            let tag = if e.passed { "pass" } else { "FAIL" };
            write!(f, "  [{tag}] {}", e.axiom)?;
            if let Some(w) = &e.witness {
                write!(f, "  witness {:?}: {}", w.indices, w.detail)?;
            }
            if let Some(n) = &e.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
