//! JSON structure-constant files.
//!
//! ```json
//! { "name": "kc2_f5", "field": {"type": "fp", "p": 5}, "dim": 2,
//!   "mult": [[i, j, k, c], ...], "unit": [c, ...],
//!   "comult": [[i, j, k, c], ...], "counit": [c, ...],
//!   "antipode": [[i, j, c], ...] }
//! ```
//!
//! Coefficients are integers (reduced mod p) or `"a/b"` strings. The
//! optional `basis` field names the basis vectors; exported doubles may carry
//! an `rmatrix` field `[[i, j, c], ...]` for `R = sum c e_i (x) e_j`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exalg::{ExalgError, Field, FieldKind, Matrix, PrimeField, Rationals, Tensor3};
use crate::hopf::{HopfAlgebra, HopfError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: &str, e: impl ToString) -> IoError {
    IoError::Field {
        field: field.to_string(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfFile {
    pub name: String,
    pub field: FieldKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub mult: Vec<(usize, usize, usize, Value)>,
    pub unit: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<(usize, usize, usize, Value)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, Value)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<Vec<(usize, usize, Value)>>,
}

/// A Hopf algebra over whichever field its file names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyHopf {
    Prime(HopfAlgebra<PrimeField>),
    Rational(HopfAlgebra<Rationals>),
}

impl AnyHopf {
    pub fn name(&self) -> &str {
        match self {
            AnyHopf::Prime(h) => h.name(),
            AnyHopf::Rational(h) => h.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyHopf::Prime(h) => h.dim(),
            AnyHopf::Rational(h) => h.dim(),
        }
    }

    pub fn field_kind(&self) -> FieldKind {
        match self {
            AnyHopf::Prime(h) => h.field().kind(),
            AnyHopf::Rational(h) => h.field().kind(),
        }
    }

    pub fn to_file(&self) -> HopfFile {
        match self {
            AnyHopf::Prime(h) => hopf_to_file(h),
            AnyHopf::Rational(h) => hopf_to_file(h),
        }
    }
}

pub fn parse_json(text: &str) -> Result<HopfFile, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_file(path: &Path) -> Result<HopfFile, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_json(&text)
}

/// Pretty JSON with arrays of scalars kept on one line, so every structure
/// constant sits on its own line.
pub fn to_json_text(value: &impl Serialize) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    render(&value, 0, &mut out);
    out.push('\n');
    out
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalar array"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                render(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                render(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), IoError> {
    let text = to_json_text(value);
    std::fs::write(path, text).map_err(|e| IoError::Write {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Interpret a file over its declared field, or over `F_p` when an override
/// is given (integer and fractional coefficients are then reduced mod p).
pub fn load(file: &HopfFile, field_override: Option<u64>) -> Result<AnyHopf, IoError> {
    let kind = match field_override {
        Some(p) => FieldKind::Prime { p },
        None => file.field,
    };
    match kind {
        FieldKind::Prime { p } => {
            let f = PrimeField::new(p).map_err(|e| field_err("field", e))?;
            Ok(AnyHopf::Prime(hopf_from_file(file, f)?))
        }
        FieldKind::Rationals => Ok(AnyHopf::Rational(hopf_from_file(file, Rationals)?)),
    }
}

pub fn load_path(path: &Path, field_override: Option<u64>) -> Result<AnyHopf, IoError> {
    load(&read_file(path)?, field_override)
}

fn scalars<F: Field>(f: &F, name: &str, values: &[Value]) -> Result<Vec<F::Elem>, IoError> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| f.parse(v).map_err(|e| field_err(&format!("{name}[{i}]"), e)))
        .collect()
}

fn tensor_from_file<F: Field>(
    f: &F,
    name: &str,
    dim: usize,
    entries: &[(usize, usize, usize, Value)],
) -> Result<Tensor3<F>, IoError> {
    let mut parsed = Vec::with_capacity(entries.len());
    for (n, (i, j, k, c)) in entries.iter().enumerate() {
        let c = f.parse(c).map_err(|e| field_err(&format!("{name}[{n}]"), e))?;
        parsed.push((*i, *j, *k, c));
    }
    Tensor3::new(f, (dim, dim, dim), parsed).map_err(|e| field_err(name, e))
}

pub(crate) fn matrix_from_entries<F: Field>(
    f: &F,
    name: &str,
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, Value)],
) -> Result<Matrix<F>, IoError> {
    let mut m = Matrix::zero(f, rows, cols);
    let mut seen = std::collections::BTreeSet::new();
    for (n, (i, j, c)) in entries.iter().enumerate() {
        if *i >= rows || *j >= cols {
            return Err(field_err(&format!("{name}[{n}]"), ExalgError::IndexOutOfRange(*i, *j, 0)));
        }
        if !seen.insert((*i, *j)) {
            return Err(field_err(&format!("{name}[{n}]"), "duplicate entry"));
        }
        let c = f.parse(c).map_err(|e| field_err(&format!("{name}[{n}]"), e))?;
        m.set(*i, *j, c);
    }
    Ok(m)
}

pub fn hopf_from_file<F: Field>(file: &HopfFile, f: F) -> Result<HopfAlgebra<F>, IoError> {
    let n = file.dim;
    let missing = |name: &str| field_err(name, "missing (required for a Hopf algebra)");
    let mult = tensor_from_file(&f, "mult", n, &file.mult)?;
    let comult = tensor_from_file(&f, "comult", n, file.comult.as_deref().ok_or_else(|| missing("comult"))?)?;
    let unit = scalars(&f, "unit", &file.unit)?;
    let counit = scalars(&f, "counit", file.counit.as_deref().ok_or_else(|| missing("counit"))?)?;
    let antipode = matrix_from_entries(&f, "antipode", n, n, file.antipode.as_deref().ok_or_else(|| missing("antipode"))?)?;
    let h = HopfAlgebra::new(file.name.clone(), f, n, mult, unit, comult, counit, antipode).map_err(|e| match e {
        HopfError::Shape(m) => field_err("dim", m),
        other => field_err("dim", other),
    })?;
    match &file.basis {
        Some(names) if names.len() == n => Ok(h.with_basis_names(names.clone())),
        Some(names) => Err(field_err("basis", format!("{} names for dimension {n}", names.len()))),
        None => Ok(h),
    }
}

pub(crate) fn tensor_entries<F: Field>(f: &F, t: &Tensor3<F>) -> Vec<(usize, usize, usize, Value)> {
    t.entries().iter().map(|(i, j, k, c)| (*i, *j, *k, f.to_json(c))).collect()
}

pub(crate) fn matrix_entries<F: Field>(m: &Matrix<F>) -> Vec<(usize, usize, Value)> {
    let f = m.field();
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j);
            if !f.is_zero(c) {
                out.push((i, j, f.to_json(c)));
            }
        }
    }
    out
}

pub fn hopf_to_file<F: Field>(h: &HopfAlgebra<F>) -> HopfFile {
    let f = h.field();
    HopfFile {
        name: h.name().to_string(),
        field: f.kind(),
        dim: h.dim(),
        basis: Some(h.basis_names().to_vec()),
        mult: tensor_entries(f, h.mult()),
        unit: h.unit().iter().map(|c| f.to_json(c)).collect(),
        comult: Some(tensor_entries(f, h.comult())),
        counit: Some(h.counit().iter().map(|c| f.to_json(c)).collect()),
        antipode: Some(matrix_entries(h.antipode())),
        rmatrix: None,
    }
}
