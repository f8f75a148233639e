use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One JSON line per run, printed after the human summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub certificates: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport { command: command.to_string(), inputs, results: Value::Null, certificates: Vec::new() }
    }

    pub fn certify(&mut self, level: impl Into<String>) {
        let level = level.into();
        if !self.certificates.contains(&level) {
            self.certificates.push(level);
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report values are plain JSON")
    }
}

/// What a command hands back to `main`: the report, the human summary and
/// whether the checked property held.
pub struct Outcome {
    pub report: RunReport,
    pub summary: Vec<String>,
    pub verified: bool,
}

impl Outcome {
    pub fn new(report: RunReport) -> Self {
        Outcome { report, summary: Vec::new(), verified: true }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }
}
