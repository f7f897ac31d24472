//! Verification records and their JSON Lines / CSV encodings.
//!
//! Floats are always written with 17 significant digits in lowercase
//! scientific notation so reports are byte-stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// `x` with 17 significant digits, e.g. `5.0000000000000000e-1`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn json_f64(x: f64) -> String {
    if x.is_finite() {
        fmt_f64(x)
    } else {
        json_str(&fmt_f64(x))
    }
}

pub(crate) fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ParamValue {
    fn rank(&self) -> u8 {
        match self {
            ParamValue::Int(_) => 0,
            ParamValue::Float(_) => 1,
            ParamValue::Text(_) => 2,
        }
    }

    fn json(&self) -> String {
        match self {
            ParamValue::Int(v) => v.to_string(),
            ParamValue::Float(v) => json_f64(*v),
            ParamValue::Text(v) => json_str(v),
        }
    }

    fn plain(&self) -> String {
        match self {
            ParamValue::Int(v) => v.to_string(),
            ParamValue::Float(v) => fmt_f64(*v),
            ParamValue::Text(v) => v.clone(),
        }
    }
}

impl Eq for ParamValue {}

impl Ord for ParamValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ParamValue::Int(a), ParamValue::Int(b)) => a.cmp(b),
            (ParamValue::Float(a), ParamValue::Float(b)) => a.total_cmp(b),
            (ParamValue::Text(a), ParamValue::Text(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ParamValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<i32> for ParamValue {
    fn from(v: i32) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Float(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub suite: String,
    pub check_name: String,
    pub parameters: BTreeMap<String, ParamValue>,
    pub max_error: f64,
    pub tolerance: f64,
    pub status: Status,
    pub runtime_ms: f64,
}

impl VerificationRecord {
    /// Status is `pass` iff `max_error <= tolerance` (NaN fails).
    pub fn new(suite: &str, check_name: &str, max_error: f64, tolerance: f64) -> Self {
        let status = if max_error <= tolerance { Status::Pass } else { Status::Fail };
        Self {
            suite: suite.to_string(),
            check_name: check_name.to_string(),
            parameters: BTreeMap::new(),
            max_error,
            tolerance,
            status,
            runtime_ms: 0.0,
        }
    }

    /// Reported but not asserted (outside the validated domain).
    pub fn skipped(mut self) -> Self {
        self.status = Status::Skipped;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn sort_key(&self) -> (&str, &str, &BTreeMap<String, ParamValue>) {
        (&self.suite, &self.check_name, &self.parameters)
    }

    pub fn to_json_line(&self) -> String {
        let mut params = String::from("{");
        for (i, (k, v)) in self.parameters.iter().enumerate() {
            if i > 0 {
                params.push(',');
            }
            let _ = write!(params, "{}:{}", json_str(k), v.json());
        }
        params.push('}');
        format!(
            "{{\"suite\":{},\"check_name\":{},\"parameters\":{},\"max_error\":{},\"tolerance\":{},\"status\":{},\"runtime_ms\":{}}}",
            json_str(&self.suite),
            json_str(&self.check_name),
            params,
            json_f64(self.max_error),
            json_f64(self.tolerance),
            json_str(self.status.as_str()),
            json_f64(self.runtime_ms),
        )
    }

    pub const CSV_HEADER: &'static str = "suite,check_name,parameters,max_error,tolerance,status,runtime_ms";

    pub fn to_csv_line(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={}", v.plain())).collect();
        format!(
            "{},{},{},{},{},{},{}",
            self.suite,
            self.check_name,
            params.join(";"),
            fmt_f64(self.max_error),
            fmt_f64(self.tolerance),
            self.status.as_str(),
            fmt_f64(self.runtime_ms),
        )
    }
}
