//! JSON interchange for cyclotomic numbers and modular data.

use moddata::{arith, CycloNum, DatumReport, Matrix, ModularDatum, Rational};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

/// Version tag of the datum format.
pub const DATUM_SCHEMA: &str = "moddata.datum.v1";

fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `{"conductor": M, "coeffs": ["p/q", ...]}` with `φ(M)` coefficients in the
/// power basis of the stored field.
pub fn cyclo_to_json(x: &CycloNum) -> Value {
    let coeffs: Vec<Value> = x.coeffs().iter().map(|r| Value::String(rational_to_string(r))).collect();
    json!({ "conductor": x.conductor(), "coeffs": coeffs })
}

pub fn cyclo_from_json(v: &Value, path: &str) -> Result<CycloNum> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::schema(path, "expected an object with conductor and coeffs"))?;
    let conductor = obj
        .get("conductor")
        .and_then(Value::as_u64)
        .filter(|&m| m >= 1 && m <= u32::MAX as u64)
        .ok_or_else(|| CliError::schema(format!("{}.conductor", path), "expected a positive integer"))?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::schema(format!("{}.coeffs", path), "expected an array"))?;
    let phi = arith::totient(conductor) as usize;
    if coeffs.len() != phi {
        return Err(CliError::schema(
            format!("{}.coeffs", path),
            format!("conductor {} needs {} coefficients, found {}", conductor, phi, coeffs.len()),
        ));
    }
    let parsed = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let p = format!("{}.coeffs[{}]", path, k);
            let s = c.as_str().ok_or_else(|| CliError::schema(&p, "expected a rational string"))?;
            parse_rational(s).ok_or_else(|| CliError::schema(&p, format!("bad rational {:?}", s)))
        })
        .collect::<Result<Vec<_>>>()?;
    CycloNum::from_coeffs(conductor as u32, &parsed).map_err(|e| CliError::schema(path, e.to_string()))
}

/// `"p/q"` or `"p"`; a zero denominator is rejected.
fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(cyclo_to_json).collect()))
            .collect(),
    )
}

pub fn datum_to_json(d: &ModularDatum) -> Value {
    let labels = d.labels();
    let mut star = Map::new();
    for (i, l) in labels.iter().enumerate() {
        star.insert(l.clone(), Value::String(labels[d.star(i)].clone()));
    }
    json!({
        "schema": DATUM_SCHEMA,
        "labels": labels,
        "unit": labels[d.unit()],
        "star": star,
        "S": matrix_to_json(d.s_matrix()),
        "T": d.t_diag().iter().map(cyclo_to_json).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn serialize_datum(d: &ModularDatum) -> String {
    let mut s = serde_json::to_string_pretty(&datum_to_json(d)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_datum(text: &str) -> Result<ModularDatum> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::schema("$", e.to_string()))?;
    datum_from_json(&v)
}

pub fn datum_from_json(v: &Value) -> Result<ModularDatum> {
    let obj = v.as_object().ok_or_else(|| CliError::schema("$", "expected an object"))?;
    if let Some(tag) = obj.get("schema") {
        if tag.as_str() != Some(DATUM_SCHEMA) {
            return Err(CliError::schema("$.schema", format!("expected {:?}", DATUM_SCHEMA)));
        }
    }
    let labels: Vec<String> = obj
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::schema("$.labels", "expected an array of strings"))?
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.as_str()
                .map(str::to_owned)
                .ok_or_else(|| CliError::schema(format!("$.labels[{}]", k), "expected a string"))
        })
        .collect::<Result<_>>()?;
    let m = labels.len();
    if m == 0 {
        return Err(CliError::schema("$.labels", "at least one label is required"));
    }
    let index = |l: &str, path: &str| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| CliError::schema(path, format!("unknown label {:?}", l)))
    };
    let unit = obj
        .get("unit")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::schema("$.unit", "expected a label"))?;
    let unit = index(unit, "$.unit")?;

    let star_obj = obj
        .get("star")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::schema("$.star", "expected an object mapping labels to labels"))?;
    let mut star = vec![usize::MAX; m];
    for (k, v) in star_obj {
        let path = format!("$.star.{}", k);
        let i = index(k, &path)?;
        let target = v.as_str().ok_or_else(|| CliError::schema(&path, "expected a label"))?;
        star[i] = index(target, &path)?;
    }
    if let Some(i) = star.iter().position(|&j| j == usize::MAX) {
        return Err(CliError::schema("$.star", format!("no dual given for {:?}", labels[i])));
    }
    if let Some(i) = (0..m).find(|&i| star[star[i]] != i) {
        return Err(CliError::schema(
            format!("$.star.{}", labels[i]),
            "star is not an involution",
        ));
    }

    let s_rows = obj
        .get("S")
        .and_then(Value::as_array)
        .filter(|r| r.len() == m)
        .ok_or_else(|| CliError::schema("$.S", format!("expected {} rows", m)))?;
    let mut s = Vec::with_capacity(m);
    for (i, row) in s_rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == m)
            .ok_or_else(|| CliError::schema(format!("$.S[{}]", i), format!("expected {} entries", m)))?;
        s.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| cyclo_from_json(x, &format!("$.S[{}][{}]", i, j)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let t = obj
        .get("T")
        .and_then(Value::as_array)
        .filter(|r| r.len() == m)
        .ok_or_else(|| CliError::schema("$.T", format!("expected {} entries", m)))?
        .iter()
        .enumerate()
        .map(|(i, x)| cyclo_from_json(x, &format!("$.T[{}]", i)))
        .collect::<Result<Vec<_>>>()?;
    ModularDatum::new(labels, unit, star, s, t).map_err(|e| CliError::schema("$", e.to_string()))
}

pub fn datum_report_to_json(r: &DatumReport) -> Value {
    json!({
        "n": cyclo_to_json(&r.n),
        "exponent": r.exponent,
        "normalized_exponent": r.normalized_exponent,
        "dims": r.dims.iter().map(cyclo_to_json).collect::<Vec<_>>(),
        "g": cyclo_to_json(&r.g),
        "g_rec": cyclo_to_json(&r.g_rec),
        "normalized": r.normalized,
        "integral": r.integral,
    })
}
