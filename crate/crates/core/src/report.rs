//! Check reports: ordered lists of pass/fail entries with matrix witnesses.
//! Every verification in the workbench (axioms, identity suite, module
//! assembly) reports through this one structure.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "PROBE")]
    Probe,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub fixture: String,
    pub seed: u64,
    pub entries: Vec<CheckEntry>,
    /// Milliseconds; the only nondeterministic field in a report.
    pub elapsed: u128,
}

impl CheckReport {
    pub fn new(fixture: impl Into<String>, seed: u64) -> Self {
        CheckReport {
            fixture: fixture.into(),
            seed,
            entries: Vec::new(),
            elapsed: 0,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, anchor: impl Into<String>, status: Status) {
        self.entries.push(CheckEntry {
            id: id.into(),
            anchor: anchor.into(),
            status,
            witness: None,
        });
    }

    /// PASS when `diff` is exactly zero, otherwise FAIL with `diff` as witness.
    pub fn push_zero(&mut self, id: impl Into<String>, anchor: impl Into<String>, diff: &Matrix) {
        self.entries.push(entry_zero(id, anchor, diff));
    }

    /// Like `push_zero` but with PROBE semantics: the entry never counts as a
    /// failure; a nonzero difference is still attached as witness.
    pub fn push_probe(&mut self, id: impl Into<String>, anchor: impl Into<String>, diff: &Matrix) {
        self.entries.push(CheckEntry {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Probe,
            witness: if diff.is_zero() {
                None
            } else {
                Some(diff.clone())
            },
        });
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = CheckEntry>) {
        self.entries.extend(entries);
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.entries.iter().find(|e| e.id == id).map(|e| e.status)
    }

    pub fn fail_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .count()
    }

    /// True when no entry is FAIL (INCONCLUSIVE and PROBE do not count).
    pub fn all_ok(&self) -> bool {
        self.fail_count() == 0
    }

    /// True when every entry is PASS.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("fixture: {}  seed: {}\n", self.fixture, self.seed));
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
                Status::Probe => "PROBE",
            };
            out.push_str(&format!("{:14} {:12} {}\n", e.id, status, e.anchor));
            if let (Status::Fail, Some(w)) = (e.status, &e.witness) {
                out.push_str(&format!("  witness: {w:?}\n"));
            }
        }
        out.push_str(&format!(
            "{} entries, {} FAIL, elapsed {} ms\n",
            self.entries.len(),
            self.fail_count(),
            self.elapsed
        ));
        out
    }
}

pub fn entry_zero(id: impl Into<String>, anchor: impl Into<String>, diff: &Matrix) -> CheckEntry {
    if diff.is_zero() {
        CheckEntry {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            witness: None,
        }
    } else {
        CheckEntry {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            witness: Some(diff.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_diff_passes_nonzero_fails() {
        let mut r = CheckReport::new("f", 0);
        r.push_zero("X1", "anchor", &Matrix::zero(2));
        r.push_zero("X2", "anchor", &Matrix::identity(2));
        assert_eq!(r.status_of("X1"), Some(Status::Pass));
        assert_eq!(r.status_of("X2"), Some(Status::Fail));
        assert!(!r.all_ok());
        assert!(r.entries[1].witness.is_some());
    }

    #[test]
    fn probes_do_not_fail() {
        let mut r = CheckReport::new("f", 0);
        r.push_probe("P1", "anchor", &Matrix::identity(2));
        assert!(r.all_ok());
        assert!(!r.all_pass());
    }

    #[test]
    fn json_shape() {
        let mut r = CheckReport::new("f", 7);
        r.push_zero("C1", "Def. 1.1", &Matrix::zero(1));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["fixture"], "f");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["entries"][0]["status"], "PASS");
        assert!(v["entries"][0].get("witness").is_none());
    }
}
