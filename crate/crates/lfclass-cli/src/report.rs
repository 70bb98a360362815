//! Schema-versioned experiment reports.
//!
//! A report is deterministic for a fixed (config, seed): keys are ordered
//! maps and values go through `serde_json`'s shortest-roundtrip float
//! formatting. Wall time is measured by the binary and printed to stderr
//! only, so serialized reports are byte-identical across runs.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub values: BTreeMap<String, Value>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: "v1",
            command: command.into(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            status: Status::Info,
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.into(), json!(value));
        self
    }

    pub fn value(mut self, key: &str, value: impl Serialize) -> Self {
        self.values.insert(key.into(), json!(value));
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn pass_if(self, ok: bool) -> Self {
        self.status(if ok { Status::Pass } else { Status::Fail })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Human-readable rendering: one line per value.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("[{}]", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out.push_str(&format!(
            "  status: {}\n",
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            }
        ));
        out
    }
}
