//! Line-oriented key-value run reports.

use std::time::Duration;

use sha2::{Digest, Sha256};

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// One `key value` line per field, in insertion order. Timing lines carry a
/// `time.` prefix and come last, so stripping them leaves a payload that is
/// identical across re-runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    fields: Vec<(String, String)>,
    timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut r = RunReport::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn time(&mut self, stage: &str, elapsed: Duration) {
        self.timings.push((stage.to_string(), elapsed));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// The report without timings.
    pub fn payload(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k} {v}\n"))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.payload();
        for (stage, d) in &self.timings {
            out.push_str(&format!("time.{stage}_us {}\n", d.as_micros()));
        }
        out
    }
}

/// Drops `time.` lines from a rendered report.
pub fn strip_timings(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("time."))
        .map(|l| format!("{l}\n"))
        .collect()
}
