//! Structured verification reports.
//!
//! Every check produces one record with a stable identifier, its parameters,
//! a pass/fail status and a short detail string. Reports are sorted by
//! (identifier, parameters) so that output is deterministic regardless of
//! how checks were scheduled. The human-readable summary is derived from the
//! structured records, never computed separately.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Version of the structured report format.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
        Report {
            schema_version: SCHEMA_VERSION,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One line per record plus a trailing tally, derived entirely from the
    /// structured data.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
            out.push_str(&format!(
                "{} {} [{}] {} ({} ms)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                params.join(" "),
                c.detail,
                c.millis
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Helper collecting records for one (suite, g, n) unit of work.
pub struct Recorder {
    pub params: BTreeMap<String, String>,
    pub records: Vec<CheckRecord>,
}

impl Recorder {
    pub fn new(pairs: &[(&str, String)]) -> Self {
        Recorder {
            params: pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            records: Vec::new(),
        }
    }

    /// Run a closure, timing it, and record the outcome it reports.
    pub fn check(&mut self, id: &str, f: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (pass, detail) = f();
        self.records.push(CheckRecord {
            id: id.to_string(),
            params: self.params.clone(),
            pass,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }

    /// Record a plain boolean outcome.
    pub fn check_bool(&mut self, id: &str, f: impl FnOnce() -> bool) {
        self.check(id, || {
            let ok = f();
            (
                ok,
                if ok {
                    "residual zero".into()
                } else {
                    "nonzero residual".into()
                },
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_sorts_and_tallies() {
        let mut r = Recorder::new(&[("g", "2".into())]);
        r.check_bool("b_second", || true);
        r.check_bool("a_first", || false);
        let rep = Report::new(r.records);
        assert_eq!(rep.checks[0].id, "a_first");
        assert!(!rep.passed());
        assert!(rep.summary().contains("2 checks, 1 failed"));
        assert!(rep.to_json().contains("\"schema_version\": 1"));
    }
}
