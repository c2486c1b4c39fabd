//! JSON (de)serialization for the domain types.
//!
//! Formats:
//!
//! * matrix — `{"rows": r, "cols": c, "entries": [[..], ..]}`, row-major;
//!   entries are rational strings `"p/q"` (or `"p"`), with raw floats
//!   accepted only when the surrounding document is in approx mode;
//! * algebra — `{"dim": n, "mode": "exact"|"approx", "labels": [..],
//!   "brackets": [{"i": i, "j": j, "coeffs": {"k": "p/q", ..}}, ..],
//!   "phi": {matrix}}` with 0-based indices and i < j;
//! * finite Hom-group — `{"order": m, "table": [[..]], "twist": [..],
//!   "unit": u}`, and a map between groups is `{"map": [..]}`;
//! * representation — `{"algebra": {..}, "vdim": v, "rho": [{matrix}, ..],
//!   "beta": {matrix}}`.
//!
//! Serialization goes through `serde_json::Value` with sorted object keys,
//! so equal inputs always print byte-identically.

use serde_json::{json, Value};

use crate::algebra::HomLieAlgebra;
use crate::cohomology::{CohomologyDim, Representation};
use crate::derivation::DerivationSpace;
use crate::error::Error;
use crate::homgroup::FiniteHomGroup;
use crate::linalg::{parse_rational, Matrix, Mode, Scalar};
use crate::matgroup::CommutatorCheck;

/// Either top-level checkable object, distinguished by its keys.
pub enum Document {
    Algebra(HomLieAlgebra),
    Group(FiniteHomGroup),
}

pub fn parse_document(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::schema(format!("invalid JSON: {e}")))
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value, Error> {
    v.get(key)
        .ok_or_else(|| Error::schema(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| Error::schema(format!("{what} must be a non-negative integer")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>, Error> {
    v.as_array()
        .ok_or_else(|| Error::schema(format!("{what} must be an array")))
}

fn usize_array(v: &Value, what: &str) -> Result<Vec<usize>, Error> {
    as_array(v, what)?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(r) => Value::String(r.to_string()),
        Scalar::Approx(x) => json!(x),
    }
}

/// Rational strings parse in both modes; raw numbers only in approx mode.
pub fn scalar_from_value(v: &Value, mode: Mode) -> Result<Scalar, Error> {
    match v {
        Value::String(s) => {
            let r = parse_rational(s)?;
            Ok(match mode {
                Mode::Exact => Scalar::Exact(r),
                Mode::Approx => Scalar::Exact(r).to_approx(),
            })
        }
        Value::Number(n) => {
            if mode == Mode::Exact {
                return Err(Error::schema(format!(
                    "raw number {n} not allowed in exact mode; write it as \"p/q\""
                )));
            }
            n.as_f64()
                .map(Scalar::Approx)
                .ok_or_else(|| Error::schema(format!("cannot read {n} as a float")))
        }
        other => Err(Error::schema(format!("expected a scalar, got {other}"))),
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array((0..m.cols()).map(|c| scalar_to_value(m.get(r, c))).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn matrix_from_value(v: &Value, mode: Mode) -> Result<Matrix, Error> {
    let rows = as_usize(field(v, "rows")?, "\"rows\"")?;
    let cols = as_usize(field(v, "cols")?, "\"cols\"")?;
    let raw = as_array(field(v, "entries")?, "\"entries\"")?;
    if raw.len() != rows {
        return Err(Error::schema(format!(
            "expected {rows} rows of entries, got {}",
            raw.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in raw {
        let row = as_array(row, "matrix row")?;
        if row.len() != cols {
            return Err(Error::schema(format!(
                "expected rows of {cols} entries, got {}",
                row.len()
            )));
        }
        for e in row {
            entries.push(scalar_from_value(e, mode)?);
        }
    }
    Matrix::from_entries(mode, rows, cols, entries)
}

pub fn algebra_to_value(a: &HomLieAlgebra) -> Value {
    let mode = match a.mode() {
        Mode::Exact => "exact",
        Mode::Approx => "approx",
    };
    let brackets: Vec<Value> = a
        .bracket_entries()
        .map(|(i, j, coeffs)| {
            let nonzero: serde_json::Map<String, Value> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.to_string(), scalar_to_value(c)))
                .collect();
            json!({"i": i, "j": j, "coeffs": nonzero})
        })
        .collect();
    let mut doc = json!({
        "dim": a.dim(),
        "mode": mode,
        "brackets": brackets,
        "phi": matrix_to_value(a.phi()),
    });
    if let Some(labels) = a.labels() {
        doc["labels"] = json!(labels);
    }
    doc
}

pub fn algebra_from_value(v: &Value) -> Result<HomLieAlgebra, Error> {
    let dim = as_usize(field(v, "dim")?, "\"dim\"")?;
    let mode = match field(v, "mode")?.as_str() {
        Some("exact") => Mode::Exact,
        Some("approx") => Mode::Approx,
        _ => return Err(Error::schema("\"mode\" must be \"exact\" or \"approx\"")),
    };
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let l = as_array(l, "\"labels\"")?;
            let strs: Option<Vec<String>> =
                l.iter().map(|s| s.as_str().map(str::to_string)).collect();
            Some(strs.ok_or_else(|| Error::schema("\"labels\" must hold strings"))?)
        }
    };
    let mut entries = Vec::new();
    for b in as_array(field(v, "brackets")?, "\"brackets\"")? {
        let i = as_usize(field(b, "i")?, "bracket index \"i\"")?;
        let j = as_usize(field(b, "j")?, "bracket index \"j\"")?;
        let coeffs = field(b, "coeffs")?
            .as_object()
            .ok_or_else(|| Error::schema("\"coeffs\" must be an object"))?;
        for (key, val) in coeffs {
            let k: usize = key
                .parse()
                .map_err(|_| Error::schema(format!("bad component index \"{key}\"")))?;
            entries.push((i, j, k, scalar_from_value(val, mode)?));
        }
    }
    let phi = matrix_from_value(field(v, "phi")?, mode)?;
    HomLieAlgebra::new(dim, mode, entries, phi, labels)
}

pub fn group_to_value(g: &FiniteHomGroup) -> Value {
    json!({
        "order": g.order(),
        "table": g.table(),
        "twist": g.twist(),
        "unit": g.unit(),
    })
}

pub fn group_from_value(v: &Value) -> Result<FiniteHomGroup, Error> {
    let order = as_usize(field(v, "order")?, "\"order\"")?;
    let table: Vec<Vec<usize>> = as_array(field(v, "table")?, "\"table\"")?
        .iter()
        .map(|row| usize_array(row, "table row"))
        .collect::<Result<_, _>>()?;
    if table.len() != order {
        return Err(Error::schema(format!(
            "\"order\" is {order} but the table has {} rows",
            table.len()
        )));
    }
    let twist = usize_array(field(v, "twist")?, "\"twist\"")?;
    let unit = as_usize(field(v, "unit")?, "\"unit\"")?;
    FiniteHomGroup::new(table, twist, unit)
}

pub fn map_from_value(v: &Value) -> Result<Vec<usize>, Error> {
    usize_array(field(v, "map")?, "\"map\"")
}

pub fn representation_from_value(v: &Value) -> Result<Representation, Error> {
    let alg = algebra_from_value(field(v, "algebra")?)?;
    let vdim = as_usize(field(v, "vdim")?, "\"vdim\"")?;
    let beta = matrix_from_value(field(v, "beta")?, alg.mode())?;
    if beta.rows() != vdim || beta.cols() != vdim {
        return Err(Error::dims(format!(
            "\"beta\" must be {vdim}×{vdim} to match \"vdim\""
        )));
    }
    let rho = as_array(field(v, "rho")?, "\"rho\"")?
        .iter()
        .map(|m| matrix_from_value(m, alg.mode()))
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(alg, rho, beta)
}

/// Decide between the two checkable top-level formats by their keys.
pub fn document_from_value(v: &Value) -> Result<Document, Error> {
    if v.get("brackets").is_some() || v.get("phi").is_some() {
        Ok(Document::Algebra(algebra_from_value(v)?))
    } else if v.get("table").is_some() {
        Ok(Document::Group(group_from_value(v)?))
    } else {
        Err(Error::schema(
            "document is neither an algebra (\"brackets\"/\"phi\") nor a group (\"table\")",
        ))
    }
}

pub fn cohomology_dims_to_value(dims: &[CohomologyDim]) -> Value {
    Value::Array(
        dims.iter()
            .map(|d| json!({"k": d.k, "Z": d.z, "B": d.b, "H": d.h}))
            .collect(),
    )
}

pub fn derivation_space_to_value(sp: &DerivationSpace) -> Value {
    json!({
        "dim": sp.dim,
        "inner": sp.inner_dim,
        "outer": sp.outer_dim,
        "basis": sp.basis.iter().map(matrix_to_value).collect::<Vec<_>>(),
    })
}

pub fn commutator_check_to_value(c: &CommutatorCheck) -> Value {
    json!({
        "residual": c.residual,
        "step": c.step,
        "fd": matrix_to_value(&c.fd_estimate),
        "closed": matrix_to_value(&c.closed_form),
    })
}
