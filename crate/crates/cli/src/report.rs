use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: impl Into<String>) -> Check {
        Check { name: name.into(), status, details: details.into() }
    }

    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check::new(name, Status::Pass, details)
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check::new(name, Status::Fail, details)
    }

    pub fn skip(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check::new(name, Status::Skip, details)
    }

    /// Pass when `ok`, fail otherwise, with the same details.
    pub fn expect(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub checks: Vec<Check>,
    /// a work cap was hit; the entry is incomplete
    pub resource_exceeded: bool,
    /// wall time, printed in human output only so that JSON stays reproducible
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl EntryReport {
    pub fn status(&self) -> Status {
        if self.resource_exceeded || self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub catalog: String,
    pub entries: Vec<EntryReport>,
    pub status: Status,
}

impl Report {
    pub fn new(seed: u64, catalog: String, mut entries: Vec<EntryReport>) -> Report {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let status = if entries.iter().any(|e| e.status() == Status::Fail) { Status::Fail } else { Status::Pass };
        Report { seed, catalog, entries, status }
    }

    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.resource_exceeded) {
            3
        } else if self.status == Status::Fail {
            1
        } else {
            0
        }
    }

    pub fn human(&self) -> String {
        let mut out = format!("seed {}  catalog {}\n", self.seed, self.catalog);
        for e in &self.entries {
            out.push_str(&format!("\n{}  [{}]  {} ms\n", e.id, e.status(), e.elapsed_ms));
            let width = e.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &e.checks {
                out.push_str(&format!("  {:<width$}  {:<4}  {}\n", c.name, c.status.to_string(), c.details));
            }
            if e.resource_exceeded {
                out.push_str("  (stopped at a resource cap)\n");
            }
        }
        let failed = self.entries.iter().filter(|e| e.status() == Status::Fail).count();
        out.push_str(&format!("\n{} entries, {} failed: {}\n", self.entries.len(), failed, self.status));
        out
    }
}
