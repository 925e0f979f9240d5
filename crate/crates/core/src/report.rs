//! Machine-readable outcomes of claim checks, and their JSON/CSV writers.
//!
//! Everything except `runtime_ms` is a deterministic function of the inputs.
//! Timing lives in a separate `volatile` object so that two runs can be
//! compared byte for byte after dropping it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::io::family_to_json;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Nat(u64),
    Big(BigUint),
    Rat(Rational),
    Bool(bool),
    Text(String),
}

impl Quantity {
    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Nat(n) => json!(n),
            Quantity::Big(b) => json!(b.to_string()),
            Quantity::Rat(r) => serde_json::to_value(r).expect("rational serializes"),
            Quantity::Bool(b) => json!(b),
            Quantity::Text(s) => json!(s),
        }
    }

    fn to_plain(&self) -> String {
        match self {
            Quantity::Nat(n) => n.to_string(),
            Quantity::Big(b) => b.to_string(),
            Quantity::Rat(r) => r.to_string(),
            Quantity::Bool(b) => b.to_string(),
            Quantity::Text(s) => s.clone(),
        }
    }
}

impl From<usize> for Quantity {
    fn from(n: usize) -> Self {
        Quantity::Nat(n as u64)
    }
}

impl From<u64> for Quantity {
    fn from(n: u64) -> Self {
        Quantity::Nat(n)
    }
}

impl From<BigUint> for Quantity {
    fn from(n: BigUint) -> Self {
        Quantity::Big(n)
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Quantity::Rat(r)
    }
}

impl From<bool> for Quantity {
    fn from(b: bool) -> Self {
        Quantity::Bool(b)
    }
}

impl From<&str> for Quantity {
    fn from(s: &str) -> Self {
        Quantity::Text(s.to_string())
    }
}

impl From<String> for Quantity {
    fn from(s: String) -> Self {
        Quantity::Text(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Family(SetFamily),
    Families(Vec<SetFamily>),
    /// Per-member label sets (1-based family indices).
    Labels(Vec<Vec<usize>>),
}

impl Witness {
    fn to_json(&self) -> Value {
        match self {
            Witness::Family(f) => family_to_json(f, false),
            Witness::Families(fs) => Value::Array(fs.iter().map(|f| family_to_json(f, false)).collect()),
            Witness::Labels(l) => json!(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub claim_id: String,
    pub instance: String,
    pub computed: BTreeMap<String, Quantity>,
    pub witnesses: BTreeMap<String, Witness>,
    pub passed: bool,
    /// Why a check failed, in the order checks were made.
    pub failures: Vec<String>,
    pub runtime_ms: u64,
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>, instance: impl Into<String>) -> Self {
        VerificationReport {
            claim_id: claim_id.into(),
            instance: instance.into(),
            computed: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            passed: true,
            failures: Vec::new(),
            runtime_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn value(&mut self, name: &str, q: impl Into<Quantity>) -> &mut Self {
        self.computed.insert(name.to_string(), q.into());
        self
    }

    pub fn witness(&mut self, name: &str, w: Witness) -> &mut Self {
        self.witnesses.insert(name.to_string(), w);
        self
    }

    /// Records a check; a false condition fails the report.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.passed = false;
            self.failures.push(what.into());
        }
        ok
    }

    /// A report for a check that could not run (guard, precondition).
    pub fn errored(claim_id: &str, instance: &str, err: &Error) -> Self {
        let mut r = VerificationReport::new(claim_id, instance);
        r.value("error_code", err.code());
        r.check(false, err.to_string());
        r.finish()
    }

    pub fn finish(mut self) -> Self {
        if let Some(start) = self.started.take() {
            self.runtime_ms = start.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<&Quantity> {
        self.computed.get(name)
    }

    /// Everything except timing, in fixed key order.
    pub fn comparable_json(&self) -> Value {
        let mut o = Map::new();
        o.insert("claim_id".into(), json!(self.claim_id));
        o.insert("instance".into(), json!(self.instance));
        o.insert(
            "computed".into(),
            Value::Object(
                self.computed
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect(),
            ),
        );
        o.insert(
            "witnesses".into(),
            Value::Object(
                self.witnesses
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect(),
            ),
        );
        o.insert("failures".into(), json!(self.failures));
        o.insert("passed".into(), json!(self.passed));
        Value::Object(o)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.comparable_json();
        v.as_object_mut()
            .expect("object")
            .insert("volatile".into(), json!({ "runtime_ms": self.runtime_ms }));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let arr = Value::Array(reports.iter().map(VerificationReport::to_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("json");
    s.push('\n');
    s
}

/// CSV columns: claim_id, instance, passed, then one `key=value` cell per
/// computed quantity (sorted by key).
pub fn reports_to_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["claim_id", "instance", "passed", "values"])
        .map_err(io)?;
    for r in reports {
        let mut row = vec![r.claim_id.clone(), r.instance.clone(), r.passed.to_string()];
        for (k, v) in &r.computed {
            let mut cell = String::new();
            let _ = write!(cell, "{k}={}", v.to_plain());
            row.push(cell);
        }
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn write_report(reports: &[VerificationReport], path: &Path, format: ReportFormat) -> Result<()> {
    let body = match format {
        ReportFormat::Json => reports_to_json(reports),
        ReportFormat::Csv => reports_to_csv(reports)?,
    };
    std::fs::write(path, body)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("thm-3.6", "gen_powerset(n=2)");
        r.value("beta", Rational::new(1, 2)).value("ell", 2usize);
        r.finish()
    }

    #[test]
    fn json_single_report() {
        let s = reports_to_json(&[sample()]);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
        assert_eq!(v[0]["passed"], true);
        assert_eq!(v[0]["computed"]["beta"]["den"], 2);
        assert!(v[0]["volatile"]["runtime_ms"].is_u64());
    }

    #[test]
    fn csv_rows() {
        let s = reports_to_csv(&[sample()]).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "claim_id,instance,passed,values");
        assert_eq!(lines[1], "thm-3.6,gen_powerset(n=2),true,beta=1/2,ell=2");
    }

    #[test]
    fn empty_outputs() {
        assert_eq!(reports_to_json(&[]), "[]\n");
        assert_eq!(reports_to_csv(&[]).unwrap(), "claim_id,instance,passed,values\n");
    }

    #[test]
    fn failed_check_flips_passed() {
        let mut r = VerificationReport::new("x", "y");
        assert!(r.check(true, "fine"));
        assert!(!r.check(false, "broken"));
        assert!(!r.passed);
        assert_eq!(r.failures, vec!["broken".to_string()]);
    }
}
