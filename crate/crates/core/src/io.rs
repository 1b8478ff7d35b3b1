//! JSON and CSV formats shared by the CLI and the bindings.
//!
//! Complex numbers are always `[re, im]` pairs. Input values may also be plain
//! real numbers.

use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::group::GroupSpecJson;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexJson> for Complex64 {
    fn from(v: ComplexJson) -> Self {
        match v {
            ComplexJson::Pair([re, im]) => Complex64::new(re, im),
            ComplexJson::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

/// `{"values": [[re, im], ...]}`, rank-ordered. Other keys are ignored on
/// input, so a transform report can be fed straight back in.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct FunctionJson {
    pub values: Vec<ComplexJson>,
}

impl FunctionJson {
    pub fn complex_values(&self) -> Vec<Complex64> {
        self.values.iter().map(|&v| v.into()).collect()
    }
}

/// One term of a finitely supported function on the integers.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct SupportTerm {
    pub index: i64,
    pub value: ComplexJson,
}

/// `{"support": [{"index": k, "value": [re, im]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SupportJson {
    pub support: Vec<SupportTerm>,
}

impl SupportJson {
    pub fn terms(&self) -> Vec<(i64, Complex64)> {
        self.support.iter().map(|t| (t.index, t.value.into())).collect()
    }
}

/// Reads a headerless two-column `re,im` CSV. A single column is read as real.
pub fn read_csv_values(reader: impl Read) -> Result<Vec<Complex64>, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let field = |i: usize| -> Result<f64, String> {
            record
                .get(i)
                .unwrap_or("0")
                .parse::<f64>()
                .map_err(|e| format!("line {}: {}", line + 1, e))
        };
        match record.len() {
            1 | 2 => out.push(Complex64::new(field(0)?, field(1)?)),
            n => return Err(format!("line {}: expected 1 or 2 columns, got {}", line + 1, n)),
        }
    }
    Ok(out)
}

/// Rounds to `digits` significant digits; `-0` becomes `0`.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex_pairs(values: &[Complex64], digits: usize) -> Vec<[f64; 2]> {
    values
        .iter()
        .map(|v| [round_sig(v.re, digits), round_sig(v.im, digits)])
        .collect()
}

/// Report body for any dense function or spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValuesReport {
    pub group: GroupSpecJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub haar: Option<&'static str>,
    pub values: Vec<[f64; 2]>,
}
