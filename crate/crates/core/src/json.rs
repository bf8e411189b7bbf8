//! JSON encodings used by the command line tool.
//!
//! Scalars are encoded per field: a number over `R`, `[re, im]` over `C` and
//! `[w, x, y, z]` over `H`. Matrices are either `{"rows", "cols", "entries"}`
//! with row-major entries, or a plain list of columns.

use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{cell_polynomial, euler_characteristic, manifold_dimension};
use crate::error::{Error, Result};
use crate::geometry::FlagPoint;
use crate::klinalg::{Field, KMatrix, KScalar, KVector, Subspace, Tolerances};
use crate::symbols::{ElementarySymbol, FlagSignature, GeneralSymbol};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_to_json(field: Field, s: KScalar) -> Value {
    match field {
        Field::Real => json!(s.w),
        Field::Complex => json!([s.w, s.x]),
        Field::Quaternion => json!([s.w, s.x, s.y, s.z]),
    }
}

pub fn scalar_from_json(field: Field, v: &Value) -> Result<KScalar> {
    let comps: Vec<f64> = match v {
        Value::Number(n) => vec![n.as_f64().ok_or_else(|| parse_err("non-finite number"))?],
        Value::Array(items) => items
            .iter()
            .map(|c| c.as_f64().ok_or_else(|| parse_err(format!("scalar component {c} is not a number"))))
            .collect::<Result<_>>()?,
        other => return Err(parse_err(format!("{other} is not a scalar"))),
    };
    let expected = field.real_dim();
    let bare_real = comps.len() == 1 && v.is_number();
    if !bare_real && comps.len() != expected {
        return Err(parse_err(format!("scalar {v} has {} components, {field} needs {expected}", comps.len())));
    }
    let mut c = [0.0; 4];
    c[..comps.len()].copy_from_slice(&comps);
    Ok(KScalar::new(c[0], c[1], c[2], c[3]))
}

pub fn matrix_to_json(m: &KMatrix) -> Value {
    let entries: Vec<Value> = m.entries().iter().map(|&s| scalar_to_json(m.field(), s)).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Column-list form: one array of `rows` scalars per column.
pub fn columns_to_json(m: &KMatrix) -> Value {
    let cols: Vec<Value> = m
        .columns()
        .iter()
        .map(|c| Value::Array(c.entries().iter().map(|&s| scalar_to_json(m.field(), s)).collect()))
        .collect();
    Value::Array(cols)
}

/// Reads either matrix form; `rows` is the expected row count.
pub fn matrix_from_json(field: Field, rows: usize, v: &Value) -> Result<KMatrix> {
    match v {
        Value::Object(map) => {
            let get = |key: &str| {
                map.get(key)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| parse_err(format!("matrix is missing an integer \"{key}\"")))
            };
            let (r, c) = (get("rows")?, get("cols")?);
            if r != rows {
                return Err(parse_err(format!("matrix has {r} rows, expected {rows}")));
            }
            let entries = map
                .get("entries")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("matrix is missing \"entries\""))?
                .iter()
                .map(|s| scalar_from_json(field, s))
                .collect::<Result<Vec<_>>>()?;
            KMatrix::new(field, r, c, entries).map_err(|e| parse_err(e.to_string()))
        }
        Value::Array(cols) => {
            let columns = cols
                .iter()
                .map(|col| {
                    let items = col.as_array().ok_or_else(|| parse_err("a column must be an array of scalars"))?;
                    if items.len() != rows {
                        return Err(parse_err(format!("column of length {}, expected {rows}", items.len())));
                    }
                    let entries = items.iter().map(|s| scalar_from_json(field, s)).collect::<Result<Vec<_>>>()?;
                    KVector::new(field, entries)
                })
                .collect::<Result<Vec<_>>>()?;
            KMatrix::from_columns(field, rows, &columns)
        }
        other => Err(parse_err(format!("{other} is not a matrix"))),
    }
}

pub fn elementary_to_json(s: &ElementarySymbol) -> Value {
    json!(s.values())
}

pub fn general_symbol_to_json(s: &GeneralSymbol) -> Value {
    let parts: Vec<Value> = s.parts().iter().map(elementary_to_json).collect();
    json!({
        "signature": s.signature().dims(),
        "ambient": s.signature().ambient(),
        "parts": parts,
    })
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array of integers")))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} must be an array of integers"))))
        .collect()
}

fn field_of(v: &Value, key: &str) -> Result<Value> {
    v.get(key).cloned().ok_or_else(|| parse_err(format!("missing \"{key}\"")))
}

fn signature_from(v: &Value) -> Result<FlagSignature> {
    let ambient = field_of(v, "ambient")?
        .as_u64()
        .ok_or_else(|| parse_err("\"ambient\" must be an integer"))? as usize;
    let dims = usize_list(&field_of(v, "signature")?, "\"signature\"")?;
    FlagSignature::new(dims, ambient)
}

pub fn general_symbol_from_json(v: &Value) -> Result<GeneralSymbol> {
    let sig = signature_from(v)?;
    let parts = field_of(v, "parts")?;
    let parts = parts
        .as_array()
        .ok_or_else(|| parse_err("\"parts\" must be an array"))?
        .iter()
        .map(|p| usize_list(p, "a symbol part"))
        .collect::<Result<Vec<_>>>()?;
    GeneralSymbol::from_values(sig, parts)
}

/// Flag file: `{"field", "ambient", "signature", "subspaces"}` with each
/// subspace given by spanning columns.
pub fn flag_to_json(f: &FlagPoint) -> Value {
    let subspaces: Vec<Value> = f.subspaces().iter().map(|x| columns_to_json(x.basis().matrix())).collect();
    json!({
        "field": f.field(),
        "ambient": f.signature().ambient(),
        "signature": f.signature().dims(),
        "subspaces": subspaces,
    })
}

pub fn flag_from_json(v: &Value, tol: &Tolerances) -> Result<FlagPoint> {
    let field: Field =
        serde_json::from_value(field_of(v, "field")?).map_err(|_| parse_err("\"field\" must be \"R\", \"C\" or \"H\""))?;
    let sig = signature_from(v)?;
    let subspaces = field_of(v, "subspaces")?;
    let subspaces = subspaces
        .as_array()
        .ok_or_else(|| parse_err("\"subspaces\" must be an array"))?
        .iter()
        .map(|m| Subspace::from_columns(&matrix_from_json(field, sig.ambient(), m)?, tol))
        .collect::<Result<Vec<_>>>()?;
    FlagPoint::new(sig, subspaces, tol)
}

pub fn parse_flag_file(text: &str, tol: &Tolerances) -> Result<FlagPoint> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    flag_from_json(&v, tol)
}

/// Summary of the cell decomposition of one flag manifold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellsRecord {
    pub field: Field,
    pub signature: Vec<usize>,
    pub ambient: usize,
    pub coefficients: Vec<u64>,
    pub euler: i64,
    pub dimension: usize,
}

impl CellsRecord {
    pub fn new(sig: &FlagSignature, field: Field) -> Self {
        CellsRecord {
            field,
            signature: sig.dims().to_vec(),
            ambient: sig.ambient(),
            coefficients: cell_polynomial(sig, field).coefficients().to_vec(),
            euler: euler_characteristic(sig, field),
            dimension: manifold_dimension(sig, field),
        }
    }
}
