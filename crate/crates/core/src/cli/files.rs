//! JSON documents read and written by the command line tool.
//!
//! Input files are parsed through `serde_json::Value` first so that shape errors can
//! name the offending field.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{PencilError, Result};
use crate::exact::{parse_rational, rat, serde_opt_vector, serde_opt_vectors, RatMatrix, Rational};
use crate::invariants::{FiniteDivisorReport, RatPolynomial};
use crate::linearization::{HighOrderSystem, PencilSystem};
use crate::oracle::{OracleOutcome, ResidualReport};
use crate::solver::{SolvabilityClass, Trajectory};
use crate::structure::StructureReport;

fn bad(field: &str, msg: impl std::fmt::Display) -> PencilError {
    PencilError::InvalidInput(format!("{field}: {msg}"))
}

fn scalar(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(field, e)),
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| bad(field, format!("{n} is not an integer; write fractions as \"p/q\" strings"))),
        other => Err(bad(field, format!("expected a rational, found {other}"))),
    }
}

pub(crate) fn matrix(v: &Value, field: &str) -> Result<RatMatrix> {
    let rows = v.as_array().ok_or_else(|| bad(field, "expected an array of rows"))?;
    let mut data = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let entries = row.as_array().ok_or_else(|| bad(field, format!("row {i} is not an array")))?;
        match cols {
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(bad(field, format!("row {i} has {} entries, expected {c}", entries.len())));
            }
            _ => {}
        }
        for (j, x) in entries.iter().enumerate() {
            data.push(scalar(x, &format!("{field}[{i}][{j}]"))?);
        }
    }
    RatMatrix::new(rows.len(), cols.unwrap_or(0), data)
}

pub(crate) fn vector(v: &Value, field: &str) -> Result<RatMatrix> {
    let entries = v.as_array().ok_or_else(|| bad(field, "expected an array"))?;
    let vals = entries
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::column_vector(vals))
}

fn object(text: &str) -> Result<serde_json::Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(PencilError::InvalidInput("expected a JSON object".into())),
        Err(e) => Err(PencilError::InvalidInput(format!("invalid JSON at line {} column {}: {e}", e.line(), e.column()))),
    }
}

fn int_field(m: &serde_json::Map<String, Value>, key: &str) -> Result<Option<i64>> {
    match m.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_i64().map(Some).ok_or_else(|| bad(key, "expected an integer")),
    }
}

fn usize_field(m: &serde_json::Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match int_field(m, key)? {
        Some(v) if v < 0 => Err(bad(key, "must be nonnegative")),
        v => Ok(v.map(|x| x as usize)),
    }
}

/// `{"order", "m1", "r1", "coeffs": [A_0, ..., A_n], "k0", "initial": [X_k0, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub coeffs: Vec<RatMatrix>,
    pub k0: i64,
    pub initial: Option<Vec<RatMatrix>>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let m = object(text)?;
        let raw = m.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("coeffs", "missing array"))?;
        let coeffs = raw
            .iter()
            .enumerate()
            .map(|(i, v)| matrix(v, &format!("coeffs[{i}] (A_{i})")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = usize_field(&m, "order")? {
            if n + 1 != coeffs.len() {
                return Err(bad("order", format!("{n} requires {} coefficients, found {}", n + 1, coeffs.len())));
            }
        }
        if let Some(first) = coeffs.first() {
            for (key, want) in [("m1", first.rows()), ("r1", first.cols())] {
                if let Some(v) = usize_field(&m, key)? {
                    if v != want {
                        return Err(bad(key, format!("declared {v} but A_0 implies {want}")));
                    }
                }
            }
            for (i, a) in coeffs.iter().enumerate() {
                if a.shape() != first.shape() {
                    return Err(bad(
                        &format!("coeffs[{i}] (A_{i})"),
                        format!("shape {}x{} differs from A_0 {}x{}", a.rows(), a.cols(), first.rows(), first.cols()),
                    ));
                }
            }
        }
        let initial = match m.get("initial") {
            None | Some(Value::Null) => None,
            Some(Value::Array(xs)) => Some(
                xs.iter()
                    .enumerate()
                    .map(|(i, v)| vector(v, &format!("initial[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(bad("initial", "expected an array of vectors")),
        };
        let file = SystemFile { coeffs, k0: int_field(&m, "k0")?.unwrap_or(0), initial };
        file.to_system()?;
        Ok(file)
    }

    pub fn to_system(&self) -> Result<HighOrderSystem> {
        HighOrderSystem::new(self.coeffs.clone(), self.k0, self.initial.clone())
    }

    pub fn from_system(sys: &HighOrderSystem) -> Self {
        SystemFile { coeffs: sys.coeffs().to_vec(), k0: sys.k0(), initial: sys.initial().map(<[_]>::to_vec) }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            order: usize,
            m1: usize,
            r1: usize,
            coeffs: &'a [RatMatrix],
            k0: i64,
            #[serde(with = "serde_opt_vectors", skip_serializing_if = "Option::is_none")]
            initial: Option<Vec<RatMatrix>>,
        }
        let (m1, r1) = self.coeffs.first().map_or((0, 0), RatMatrix::shape);
        let w = Wire {
            order: self.coeffs.len().saturating_sub(1),
            m1,
            r1,
            coeffs: &self.coeffs,
            k0: self.k0,
            initial: self.initial.clone(),
        };
        serde_json::to_string_pretty(&w).expect("serializable")
    }
}

/// `{"F", "G", "k0", "Y0"}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilFile {
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub k0: i64,
    pub y0: Option<RatMatrix>,
}

impl PencilFile {
    pub fn parse(text: &str) -> Result<Self> {
        let m = object(text)?;
        let f = matrix(m.get("F").ok_or_else(|| bad("F", "missing"))?, "F")?;
        let g = matrix(m.get("G").ok_or_else(|| bad("G", "missing"))?, "G")?;
        if f.shape() != g.shape() {
            return Err(bad(
                "G",
                format!("shape {}x{} differs from F {}x{}", g.rows(), g.cols(), f.rows(), f.cols()),
            ));
        }
        let y0 = match m.get("Y0") {
            None | Some(Value::Null) => None,
            Some(v) => Some(vector(v, "Y0")?),
        };
        if let Some(y) = &y0 {
            if y.rows() != f.cols() {
                return Err(bad("Y0", format!("has {} entries, expected {}", y.rows(), f.cols())));
            }
        }
        Ok(PencilFile { f, g, k0: int_field(&m, "k0")?.unwrap_or(0), y0 })
    }

    pub fn from_pencil(p: &PencilSystem) -> Self {
        PencilFile { f: p.f().clone(), g: p.g().clone(), k0: p.k0(), y0: p.y0().cloned() }
    }

    pub fn to_pencil(&self) -> Result<PencilSystem> {
        PencilSystem::new(self.f.clone(), self.g.clone(), self.k0, self.y0.clone())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            #[serde(rename = "F")]
            f: &'a RatMatrix,
            #[serde(rename = "G")]
            g: &'a RatMatrix,
            k0: i64,
            #[serde(rename = "Y0", with = "serde_opt_vector", skip_serializing_if = "Option::is_none")]
            y0: Option<RatMatrix>,
        }
        let w = Wire { f: &self.f, g: &self.g, k0: self.k0, y0: self.y0.clone() };
        serde_json::to_string_pretty(&w).expect("serializable")
    }
}

/// Either kind of input accepted by `solve`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    System(SystemFile),
    Pencil(PencilFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self> {
        let m = object(text)?;
        if m.contains_key("coeffs") {
            SystemFile::parse(text).map(InputFile::System)
        } else {
            PencilFile::parse(text).map(InputFile::Pencil)
        }
    }
}

/// Machine-readable output of every command.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<RatPolynomial>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_divisors: Option<FiniteDivisorReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<SolvabilityClass>,
    /// Columns span the consistent initial vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent_space: Option<RatMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Trajectory>,
    /// `X_k` recovered from a linearized higher-order system.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_opt_vectors")]
    pub x_samples: Option<Vec<RatMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualReport>,
}

impl ReportFile {
    pub fn new(command: &str) -> Self {
        ReportFile { command: command.to_string(), ..Default::default() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| PencilError::InvalidInput(format!("report: {e}")))
    }
}

/// A trajectory document, or a report that carries one.
pub fn parse_trajectory(text: &str) -> Result<Trajectory> {
    let m = object(text)?;
    let v = if m.contains_key("samples") {
        Value::Object(m)
    } else {
        m.get("trajectory").cloned().ok_or_else(|| bad("trajectory", "file has neither samples nor a trajectory"))?
    };
    serde_json::from_value(v).map_err(|e| bad("trajectory", e))
}

/// Explicit free inputs: a flat JSON array of rationals.
pub fn parse_free_inputs(text: &str) -> Result<Vec<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(|e| PencilError::InvalidInput(format!("free inputs: {e}")))?;
    let arr = v.as_array().ok_or_else(|| bad("free inputs", "expected a flat array"))?;
    arr.iter().enumerate().map(|(i, x)| scalar(x, &format!("free[{i}]"))).collect()
}
