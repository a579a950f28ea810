//! Verification report: one entry per executed check, summary counts and run metadata.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Config;

/// How the residual is compared with the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Pass iff `residual ≤ tolerance`.
    Max,
    /// Pass iff `residual > tolerance`.
    Min,
    /// Recorded without a verdict; always passes.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub check_id: String,
    pub anchor: String,
    pub params: Value,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Counts {
    fn add(&mut self, pass: bool) {
        self.total += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(flatten)]
    pub all: Counts,
    pub by_suite: BTreeMap<String, Counts>,
}

impl Summary {
    pub fn of(entries: &[Entry]) -> Self {
        let mut s = Summary::default();
        for e in entries {
            s.all.add(e.pass);
            let suite = e.check_id.split('.').next().unwrap_or_default().to_string();
            s.by_suite.entry(suite).or_default().add(e.pass);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub timestamp_unix: u64,
    pub elapsed_ms: BTreeMap<String, u64>,
    pub os: String,
    pub arch: String,
}

impl Meta {
    pub fn now(elapsed_ms: BTreeMap<String, u64>) -> Self {
        Self {
            tool: "cyclq".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            elapsed_ms,
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: Config,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    pub meta: Meta,
}

impl Report {
    pub fn new(config: Config, entries: Vec<Entry>, meta: Meta) -> Self {
        let summary = Summary::of(&entries);
        Self { config, entries, summary, meta }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.all.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without `meta`, which holds the only run-dependent fields.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("meta");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                let verdict = match (e.bound, e.pass) {
                    (Bound::Report, _) => "INFO",
                    (_, true) => "PASS",
                    (_, false) => "FAIL",
                };
                let res = e.residual.map_or("nan".to_string(), |r| format!("{r:.3e}"));
                let cmp = match e.bound {
                    Bound::Max => "<=",
                    Bound::Min => ">",
                    Bound::Report => "",
                };
                let tol = e.tolerance.map_or(String::new(), |t| format!("{t:.1e}"));
                format!("{verdict} {:<44} {res:>10} {cmp} {tol}", e.check_id)
            })
            .collect()
    }
}
