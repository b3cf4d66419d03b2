//! Pass/fail records shared by the verifiers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub diff: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            records: Vec::new(),
        }
    }

    pub fn record(&mut self, identity: impl Into<String>, ok: bool, lhs: String, rhs: String, diff: String) {
        self.records.push(CheckRecord {
            identity: identity.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            diff,
        });
    }

    /// Records an equality; `diff` is only evaluated on failure.
    pub fn check_eq<T, F>(&mut self, identity: impl Into<String>, lhs: &T, rhs: &T, diff: F)
    where
        T: PartialEq + fmt::Display,
        F: FnOnce() -> String,
    {
        let ok = lhs == rhs;
        let d = if ok { "0".to_string() } else { diff() };
        self.record(identity, ok, lhs.to_string(), rhs.to_string(), d);
    }

    /// Records a boolean fact with a free-form detail.
    pub fn check(&mut self, identity: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.record(identity, ok, detail, String::new(), if ok { "0".into() } else { "mismatch".into() });
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}/{} checks passed",
            self.title,
            self.len() - self.failure_count(),
            self.len()
        )?;
        for r in self.failures() {
            writeln!(f, "  FAIL {}", r.identity)?;
            writeln!(f, "    lhs:  {}", r.lhs)?;
            if !r.rhs.is_empty() {
                writeln!(f, "    rhs:  {}", r.rhs)?;
            }
            writeln!(f, "    diff: {}", r.diff)?;
        }
        Ok(())
    }
}
