//! Machine-readable report schema.
//!
//! Every JSON document carries `"schema": "rmpkit-report/1"`. Complex numbers
//! serialize as two-element `[re, im]` arrays. Reports are deterministic for
//! a fixed (command, seed) apart from the `timestamp_unix` field.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use rmpkit_core::C64;

pub const SCHEMA: &str = "rmpkit-report/1";

pub fn toolkit_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

pub fn timestamp_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list_json(zs: &[C64]) -> Value {
    Value::Array(zs.iter().map(|z| complex_json(*z)).collect())
}

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub description: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(
        check_id: &str,
        description: &str,
        samples: usize,
        max_residual: f64,
        tolerance: f64,
    ) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            description: description.to_string(),
            samples,
            max_residual,
            tolerance,
            pass: max_residual < tolerance,
        }
    }
}

/// Aggregated verification report.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub suite: &'static str,
    pub toolkit_version: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub timestamp_unix: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(seed: u64, samples: usize, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport {
            schema: SCHEMA,
            suite: "verify",
            toolkit_version: toolkit_version(),
            seed,
            samples,
            timestamp_unix: timestamp_unix(),
            checks,
            pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rmpkit_core::c64;

    #[test]
    fn complex_serializes_as_pair() {
        assert_eq!(complex_json(c64(1.5, -2.0)).to_string(), "[1.5,-2.0]");
    }

    #[test]
    fn report_pass_flag_aggregates() {
        let good = CheckResult::new("a", "", 1, 1e-15, 1e-10);
        let bad = CheckResult::new("b", "", 1, 1.0, 1e-10);
        assert!(VerifyReport::new(0, 1, vec![good.clone()]).pass);
        assert!(!VerifyReport::new(0, 1, vec![good, bad]).pass);
    }

    #[test]
    fn report_serialization_round_trips() {
        let report = VerifyReport::new(3, 7, vec![CheckResult::new("a", "desc", 7, 1e-15, 1e-10)]);
        let value = serde_json::to_value(&report).unwrap();
        let reparsed: serde_json::Value =
            serde_json::from_str(&serde_json::to_string_pretty(&value).unwrap()).unwrap();
        assert_eq!(value, reparsed);
        assert_eq!(reparsed["checks"][0]["check_id"], "a");
        assert_eq!(reparsed["seed"], 3);
    }
}
