//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One verified property with the data that witnesses it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Topic the property belongs to, e.g. `"prime-classification"`.
    pub anchor: String,
    pub passed: bool,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: &str, passed: bool, witness: Value) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            passed,
            witness,
            runtime_ms: None,
        }
    }

    /// A failed record for a computation that returned an error.
    pub fn error(id: impl Into<String>, anchor: &str, err: impl std::fmt::Display) -> Self {
        CheckRecord::new(id, anchor, false, serde_json::json!({ "error": err.to_string() }))
    }
}

/// A named group of checks; passes iff every record passes.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.into(),
            passed,
            checks,
            runtime_ms: None,
        }
    }
}

/// Top-level report emitted by the command-line tool.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerdictReport {
    pub fn new(command: impl Into<String>, seed: u64, suites: Vec<SuiteReport>) -> Self {
        let passed = suites.iter().all(|s| s.passed);
        VerdictReport {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            seed,
            passed,
            suites,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text rendering: one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "[{}] {}\n",
                if s.passed { "PASS" } else { "FAIL" },
                s.suite
            ));
            for c in &s.checks {
                out.push_str(&format!(
                    "  [{}] {}: {}\n",
                    if c.passed { "ok" } else { "FAILED" },
                    c.id,
                    compact(&c.witness)
                ));
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}…", &s[..s.char_indices().take(160).last().map_or(0, |(i, _)| i)])
    } else {
        s
    }
}
