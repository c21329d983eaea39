//! Serializable records emitted by the command-line front end.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Result of a single evaluation, printed as pretty JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputRecord {
    pub function: String,
    pub args: BTreeMap<String, f64>,
    /// Absent when only the log-scale value is finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
}

impl OutputRecord {
    pub fn new(function: &str, args: BTreeMap<String, f64>) -> Self {
        OutputRecord {
            function: function.to_string(),
            args,
            value: None,
            log_abs: None,
            sign: None,
            terms_used: None,
            tail_bound: None,
        }
    }
}

/// One row of tabulated output. Flat so the CSV and JSON forms carry
/// identical fields; None serializes as an empty CSV cell and a JSON null.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub function: String,
    pub x: f64,
    pub value: Option<f64>,
    pub log_abs: Option<f64>,
    pub sign: Option<i8>,
    pub terms_used: Option<usize>,
    pub tail_bound: Option<f64>,
    /// "ok" or "pole".
    pub status: String,
}
