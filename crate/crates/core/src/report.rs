//! Line-delimited run records written by the command line.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// One record of the report stream. `elapsed_ms` is the only field that
/// varies between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: Value,
    pub output: Value,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, input: Value, output: Value, started: Instant) -> Self {
        RunReport {
            command: command.to_string(),
            input,
            output,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn write_line(&self, mut out: impl Write) -> std::io::Result<()> {
        let text = serde_json::to_string(self).expect("report serialization");
        writeln!(out, "{text}")
    }
}

/// Removes every `elapsed_ms` field, for comparing report streams.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
