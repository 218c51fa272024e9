//! JSON report envelope shared by every subcommand.
//!
//! The JSON form is the contract: two runs with the same inputs must agree
//! byte-for-byte once the `wall-time-ms` / `elapsed-ms` fields are masked.
//! `serde_json`'s default map keeps keys sorted, which is what makes that
//! stability cheap to promise. The human-readable tables elsewhere are
//! derived views of this structure, never the other way around.

use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Serialize)]
pub struct ReportEnvelope {
    #[serde(rename = "tool-version")]
    pub tool_version: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Vec<Value>,
    #[serde(rename = "wall-time-ms")]
    pub wall_time_ms: u64,
}

impl ReportEnvelope {
    pub fn new(command: &str) -> ReportEnvelope {
        ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            inputs: Map::new(),
            results: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.to_owned(), value);
        self
    }

    pub fn push_result(&mut self, value: Value) -> &mut Self {
        self.results.push(value);
        self
    }

    /// Stamp the wall time and serialize. Pretty-printed so diffs in golden
    /// files stay readable.
    pub fn render(&mut self, started: Instant) -> String {
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        serde_json::to_string_pretty(self).expect("envelope is valid JSON")
    }
}
