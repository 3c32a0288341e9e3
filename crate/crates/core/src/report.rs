//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

pub type Params = BTreeMap<String, Value>;

/// One verified check. Scan-type checks carry `"scan": true` in `params`
/// and name a counterexample index in `witness` when they fail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    pub precision_bits: u32,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn is_scan(&self) -> bool {
        self.params.get("scan") == Some(&Value::Bool(true))
    }

    /// Structural rule from the schema, checked without a validator.
    pub fn well_formed(&self) -> bool {
        !(self.status == Status::Fail && self.is_scan() && self.witness.is_none())
    }
}

/// Fail dominates indeterminate, which dominates pass.
pub fn overall(reports: &[VerificationReport]) -> Status {
    let mut out = Status::Pass;
    for r in reports {
        match r.status {
            Status::Fail => return Status::Fail,
            Status::Indeterminate => out = Status::Indeterminate,
            Status::Pass => {}
        }
    }
    out
}

/// JSON Schema (draft 2020-12) for a report array.
pub fn report_schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "https://turan-cert.invalid/report.schema.json",
        "title": "Verification reports",
        "type": "array",
        "items": { "$ref": "#/$defs/report" },
        "$defs": {
            "report": {
                "type": "object",
                "required": ["check", "params", "status", "precision_bits", "runtime_ms"],
                "additionalProperties": false,
                "properties": {
                    "check": { "type": "string", "minLength": 1 },
                    "params": { "type": "object" },
                    "status": { "enum": ["pass", "fail", "indeterminate"] },
                    "witness": { "type": "integer", "minimum": 0 },
                    "precision_bits": { "type": "integer", "minimum": 0 },
                    "runtime_ms": { "type": "integer", "minimum": 0 }
                },
                "if": {
                    "required": ["status", "params"],
                    "properties": {
                        "status": { "const": "fail" },
                        "params": {
                            "required": ["scan"],
                            "properties": { "scan": { "const": true } }
                        }
                    }
                },
                "then": { "required": ["witness"] }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(status: Status, scan: bool, witness: Option<u64>) -> VerificationReport {
        let mut params = Params::new();
        params.insert("scan".into(), Value::Bool(scan));
        VerificationReport { check: "x".into(), params, status, witness, precision_bits: 192, runtime_ms: 3 }
    }

    #[test]
    fn status_serializes_lowercase_and_round_trips() {
        let r = sample(Status::Indeterminate, false, None);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"indeterminate\""), "{s}");
        assert!(!s.contains("witness"));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn overall_precedence() {
        let p = sample(Status::Pass, false, None);
        let i = sample(Status::Indeterminate, false, None);
        let f = sample(Status::Fail, true, Some(7));
        assert_eq!(overall(&[]), Status::Pass);
        assert_eq!(overall(&[p.clone(), i.clone()]), Status::Indeterminate);
        assert_eq!(overall(&[i, f, p]), Status::Fail);
    }

    #[test]
    fn scan_failures_need_witness() {
        assert!(!sample(Status::Fail, true, None).well_formed());
        assert!(sample(Status::Fail, false, None).well_formed());
        assert!(sample(Status::Fail, true, Some(1)).well_formed());
    }
}
