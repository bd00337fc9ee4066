use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Bumped on any breaking change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

/// The JSON envelope shared by every subcommand. Everything except
/// `timings_ms` is a pure function of the inputs.
#[derive(Serialize)]
pub struct Report {
    schema_version: u32,
    tool: Tool,
    command: &'static str,
    params: Value,
    result: Value,
    timings_ms: BTreeMap<&'static str, f64>,
}

/// What a subcommand produced: the text rendering, the JSON payload, and
/// the exit code to finish with.
pub struct Outcome {
    pub params: Value,
    pub result: Value,
    pub text: String,
    /// Human-readable notes sent to stderr in text mode.
    pub notes: String,
    pub exit: u8,
    pub timings: Timings,
}

#[derive(Default)]
pub struct Timings(BTreeMap<&'static str, f64>);

impl Timings {
    pub fn time<T>(&mut self, label: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.insert(label, start.elapsed().as_secs_f64() * 1000.0);
        out
    }
}

impl Outcome {
    pub fn into_report(self, command: &'static str) -> (Report, String, String, u8) {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "defgroups", version: env!("CARGO_PKG_VERSION") },
            command,
            params: self.params,
            result: self.result,
            timings_ms: self.timings.0,
        };
        (report, self.text, self.notes, self.exit)
    }
}
