//! Machine-readable verification report.

use std::collections::BTreeMap;

use holo_core::C64;
use serde::{Deserialize, Serialize};

use crate::config::Suite;

/// One verified relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub suite: Suite,
    pub check_id: String,
    /// The relation being checked.
    pub anchor: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: Option<C64>,
    pub computed: Option<C64>,
    pub abs_error: Option<f64>,
    pub rel_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn finite_c(z: C64) -> Option<C64> {
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

pub type Inputs = BTreeMap<String, String>;

/// Builds an input map from `(name, value)` pairs.
pub fn inputs<const N: usize>(pairs: [(&str, String); N]) -> Inputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Record {
    fn base(suite: Suite, check_id: String, anchor: &str, inputs: Inputs, tolerance: f64) -> Self {
        Record {
            suite,
            check_id,
            anchor: anchor.to_string(),
            inputs,
            expected: None,
            computed: None,
            abs_error: None,
            rel_error: None,
            tolerance,
            pass: false,
            message: None,
        }
    }

    /// Passes when the relative error (absolute when `expected` is zero) is within `tolerance`.
    pub fn compare(
        suite: Suite,
        check_id: String,
        anchor: &str,
        inputs: Inputs,
        expected: C64,
        computed: C64,
        tolerance: f64,
    ) -> Self {
        let abs = (computed - expected).norm();
        let rel = if expected.norm() > 0.0 { abs / expected.norm() } else { abs };
        let mut r = Record::base(suite, check_id, anchor, inputs, tolerance);
        r.expected = finite_c(expected);
        r.computed = finite_c(computed);
        r.abs_error = finite(abs);
        r.rel_error = finite(rel);
        r.pass = rel <= tolerance;
        r
    }

    /// Passes when the nonnegative discrepancy `value` is at most `tolerance`.
    pub fn bound(suite: Suite, check_id: String, anchor: &str, inputs: Inputs, value: f64, tolerance: f64) -> Self {
        let mut r = Record::base(suite, check_id, anchor, inputs, tolerance);
        r.computed = finite_c(C64::new(value, 0.0));
        r.abs_error = finite(value);
        r.pass = value <= tolerance;
        r
    }

    /// Passes only on bitwise equality.
    pub fn exact(suite: Suite, check_id: String, anchor: &str, inputs: Inputs, expected: C64, computed: C64) -> Self {
        let mut r = Record::compare(suite, check_id, anchor, inputs, expected, computed, 0.0);
        r.pass = expected == computed;
        r
    }

    /// A check that could not be evaluated.
    pub fn failure(suite: Suite, check_id: String, anchor: &str, inputs: Inputs, tolerance: f64, msg: String) -> Self {
        let mut r = Record::base(suite, check_id, anchor, inputs, tolerance);
        r.message = Some(msg);
        r
    }

    pub fn with_message(mut self, msg: String) -> Self {
        self.message = Some(msg);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    pub version: String,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub environment: Environment,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    /// Sorts the records and fills in the summary.
    pub fn new(seed: u64, suites: Vec<Suite>, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| (a.suite, &a.check_id).cmp(&(b.suite, &b.check_id)));
        let passed = records.iter().filter(|r| r.pass).count();
        let summary =
            Summary { total: records.len(), passed, failed: records.len() - passed, pass: passed == records.len() };
        let environment = Environment { version: env!("CARGO_PKG_VERSION").to_string(), seed, suites };
        Report { environment, summary, records }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }
}

pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}
