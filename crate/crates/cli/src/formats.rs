//! JSON form files, matrix files and canonical scalar rendering.
//!
//! ```text
//! {"format": "homform-form/1", "dimension": 3, "arity": 3,
//!  "field": {"kind": "rational"} | {"kind": "quadratic", "c0": [1, 1], "c1": [0, 1]},
//!  "entries": [{"index": [0, 1, 2], "value": [[1, 1]]}, ...]}
//!
//! {"format": "homform-matrix/1", "field": {...}, "rows": [[value, ...], ...]}
//! ```
//! A value is `[[n, d]]` for a rational or `[[n, d], [n', d']]` for `a + b t`; integers may be
//! JSON numbers or decimal strings.

use std::collections::BTreeSet;

use homform::tensor::MultilinearForm;
use homform::{FieldDescriptor, Matrix, QuadField, Rational, Scalar};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::CliError;

pub const FORM_FORMAT: &str = "homform-form/1";
pub const MATRIX_FORMAT: &str = "homform-matrix/1";
pub const REPORT_FORMAT: &str = "homform-report/1";
pub const HOPF_FORMAT: &str = "homform-hopf/1";

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{path}: {msg}"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| invalid(path, "expected an object"))
}

fn field_of<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    o.get(key).ok_or_else(|| invalid(path, format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| invalid(path, "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| invalid(path, "expected a nonnegative integer"))
}

fn check_format(o: &Map<String, Value>, expected: &str) -> Result<(), CliError> {
    match o.get("format").and_then(Value::as_str) {
        Some(f) if f == expected => Ok(()),
        Some(f) => Err(invalid("format", format!("expected \"{expected}\", got \"{f}\""))),
        None => Err(invalid("format", format!("missing, expected \"{expected}\""))),
    }
}

fn bigint(v: &Value, path: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(invalid(path, "expected an integer"))
            }
        }
        Value::String(s) => s.parse().map_err(|_| invalid(path, format!("\"{s}\" is not an integer"))),
        _ => Err(invalid(path, "expected an integer")),
    }
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational, CliError> {
    let a = array(v, path)?;
    if a.len() != 2 {
        return Err(invalid(path, "a rational is a pair [numerator, denominator]"));
    }
    let n = bigint(&a[0], &format!("{path}[0]"))?;
    let d = bigint(&a[1], &format!("{path}[1]"))?;
    Rational::from_bigints(n, d).map_err(|_| invalid(&format!("{path}[1]"), "zero denominator"))
}

fn int_json(x: BigInt) -> Value {
    match i64::try_from(&x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!([int_json(r.numer()), int_json(r.denom())])
}

pub fn parse_field(v: &Value, path: &str) -> Result<FieldDescriptor, CliError> {
    let o = object(v, path)?;
    match field_of(o, "kind", path)?.as_str() {
        Some("rational") => Ok(FieldDescriptor::Rational),
        Some("quadratic") => {
            let c0 = parse_rational(field_of(o, "c0", path)?, &format!("{path}.c0"))?;
            let c1 = parse_rational(field_of(o, "c1", path)?, &format!("{path}.c1"))?;
            Ok(FieldDescriptor::Quadratic(QuadField::new(c0, c1).map_err(|e| invalid(path, e))?))
        }
        _ => Err(invalid(&format!("{path}.kind"), "expected \"rational\" or \"quadratic\"")),
    }
}

pub fn field_json(f: &FieldDescriptor) -> Value {
    match f {
        FieldDescriptor::Rational => json!({"kind": "rational"}),
        FieldDescriptor::Quadratic(q) => json!({
            "kind": "quadratic",
            "c0": rational_json(q.c0()),
            "c1": rational_json(q.c1()),
        }),
    }
}

/// `rational` or `quadratic:C0,C1` with `C0`, `C1` written as `n` or `n/d`.
pub fn parse_field_flag(s: &str) -> Result<FieldDescriptor, CliError> {
    let bad = || CliError::Validation(format!("--field: cannot parse \"{s}\""));
    if s == "rational" {
        return Ok(FieldDescriptor::Rational);
    }
    let rest = s.strip_prefix("quadratic:").ok_or_else(bad)?;
    let (a, b) = rest.split_once(',').ok_or_else(bad)?;
    let num = |t: &str| -> Result<Rational, CliError> {
        let (n, d) = t.trim().split_once('/').unwrap_or((t.trim(), "1"));
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rational::from_bigints(n, d).map_err(|_| bad())
    };
    let q = QuadField::new(num(a)?, num(b)?).map_err(|e| CliError::Validation(format!("--field: {e}")))?;
    Ok(FieldDescriptor::Quadratic(q))
}

pub fn parse_value(v: &Value, field: &FieldDescriptor, path: &str) -> Result<Scalar, CliError> {
    let a = array(v, path)?;
    match (a.len(), field) {
        (1, _) => Ok(Scalar::Rat(parse_rational(&a[0], &format!("{path}[0]"))?)),
        (2, FieldDescriptor::Quadratic(q)) => {
            let x = parse_rational(&a[0], &format!("{path}[0]"))?;
            let y = parse_rational(&a[1], &format!("{path}[1]"))?;
            Ok(Scalar::from_parts(x, y, Some(q)))
        }
        (2, FieldDescriptor::Rational) => Err(invalid(path, "two components given but the field is rational")),
        _ => Err(invalid(path, "a value is [[n, d]] or [[n, d], [n, d]]")),
    }
}

pub fn value_json(x: &Scalar, field: &FieldDescriptor) -> Value {
    let (a, b) = x.coords();
    match field {
        FieldDescriptor::Rational => json!([rational_json(&a)]),
        FieldDescriptor::Quadratic(_) => json!([rational_json(&a), rational_json(&b)]),
    }
}

pub fn scalar_string(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn matrix_strings(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| scalar_string(&m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn parse_form(text: &str) -> Result<MultilinearForm, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid JSON: {e}")))?;
    form_from_json(&v)
}

pub fn form_from_json(v: &Value) -> Result<MultilinearForm, CliError> {
    let o = object(v, "$")?;
    check_format(o, FORM_FORMAT)?;
    let dim = usize_of(field_of(o, "dimension", "$")?, "dimension")?;
    let arity = usize_of(field_of(o, "arity", "$")?, "arity")?;
    if dim < 2 {
        return Err(invalid("dimension", "must be at least 2"));
    }
    if arity < 1 {
        return Err(invalid("arity", "must be at least 1"));
    }
    let field = parse_field(field_of(o, "field", "$")?, "field")?;
    let entries = array(field_of(o, "entries", "$")?, "entries")?;
    if entries.is_empty() {
        return Err(invalid("entries", "the form has no nonzero entries"));
    }
    let mut seen = BTreeSet::new();
    let mut parsed = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let path = format!("entries[{k}]");
        let eo = object(e, &path)?;
        let idx_v = array(field_of(eo, "index", &path)?, &format!("{path}.index"))?;
        if idx_v.len() != arity {
            return Err(invalid(&format!("{path}.index"), format!("expected {arity} indices, got {}", idx_v.len())));
        }
        let mut idx = Vec::with_capacity(arity);
        for (j, x) in idx_v.iter().enumerate() {
            let p = format!("{path}.index[{j}]");
            let i = usize_of(x, &p)?;
            if i >= dim {
                return Err(invalid(&p, format!("{i} out of range 0..{dim}")));
            }
            idx.push(i);
        }
        if !seen.insert(idx.clone()) {
            return Err(invalid(&format!("{path}.index"), format!("duplicate index {idx:?}")));
        }
        let val = parse_value(field_of(eo, "value", &path)?, &field, &format!("{path}.value"))?;
        if val.is_zero() {
            return Err(invalid(&format!("{path}.value"), "zero values are not stored"));
        }
        parsed.push((idx, val));
    }
    Ok(MultilinearForm::from_entries(dim, arity, parsed)?)
}

pub fn form_to_json(w: &MultilinearForm) -> Result<Value, CliError> {
    let field = w.field()?;
    let entries: Vec<Value> = w
        .indexed_entries()
        .map(|(idx, x)| json!({"index": idx, "value": value_json(x, &field)}))
        .collect();
    Ok(json!({
        "format": FORM_FORMAT,
        "dimension": w.dim(),
        "arity": w.arity(),
        "field": field_json(&field),
        "entries": entries,
    }))
}

pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid JSON: {e}")))?;
    let o = object(&v, "$")?;
    check_format(o, MATRIX_FORMAT)?;
    let field = parse_field(field_of(o, "field", "$")?, "field")?;
    let rows = array(field_of(o, "rows", "$")?, "rows")?;
    if rows.is_empty() {
        return Err(invalid("rows", "empty matrix"));
    }
    let mut dense = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let r = array(r, &format!("rows[{i}]"))?;
        let row = r
            .iter()
            .enumerate()
            .map(|(j, x)| parse_value(x, &field, &format!("rows[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        dense.push(row);
    }
    let ncols = dense[0].len();
    if let Some(i) = dense.iter().position(|r| r.len() != ncols) {
        return Err(invalid(&format!("rows[{i}]"), format!("expected {ncols} columns")));
    }
    Ok(Matrix::from_dense(&dense))
}

pub fn matrix_to_json(m: &Matrix) -> Result<Value, CliError> {
    let mut field = FieldDescriptor::Rational;
    for (_, _, x) in m.entries() {
        field = field.join(&x.field())?;
    }
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| value_json(&m.get(i, j), &field)).collect()))
        .collect();
    Ok(json!({"format": MATRIX_FORMAT, "field": field_json(&field), "rows": rows}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let e = homform::gallery::a_u_default().unwrap();
        let j = form_to_json(&e.form).unwrap();
        let back = form_from_json(&j).unwrap();
        assert_eq!(back, e.form);
        assert_eq!(form_to_json(&back).unwrap(), j);
    }

    #[test]
    fn position_precise_errors() {
        let t = r#"{"format":"homform-form/1","dimension":2,"arity":2,"field":{"kind":"rational"},
            "entries":[{"index":[0,1],"value":[[1,1]]},{"index":[1,2],"value":[[1,1]]}]}"#;
        let e = parse_form(t).unwrap_err().to_string();
        assert!(e.contains("entries[1].index[1]"), "{e}");
        let t = r#"{"format":"homform-form/1","dimension":2,"arity":2,"field":{"kind":"rational"},"entries":[]}"#;
        assert!(parse_form(t).is_err());
        let t = r#"{"format":"homform-form/1","dimension":2,"arity":1,"field":{"kind":"rational"},
            "entries":[{"index":[0],"value":[[1,0]]}]}"#;
        assert!(parse_form(t).unwrap_err().to_string().contains("denominator"));
        let t = r#"{"format":"homform-form/1","dimension":2,"arity":1,"field":{"kind":"quadratic","c0":[-1,1],"c1":[0,1]},
            "entries":[{"index":[0],"value":[[1,1]]}]}"#;
        assert!(parse_form(t).is_err());
    }

    #[test]
    fn big_integers_as_strings() {
        let r = parse_rational(&json!(["123456789012345678901234567890", 11]), "x").unwrap();
        assert_eq!(rational_json(&r), json!(["123456789012345678901234567890", 11]));
    }

    #[test]
    fn field_flag() {
        assert_eq!(parse_field_flag("rational").unwrap(), FieldDescriptor::Rational);
        assert!(matches!(parse_field_flag("quadratic:1,0").unwrap(), FieldDescriptor::Quadratic(_)));
        assert!(parse_field_flag("quadratic:-1,0").is_err());
        assert!(parse_field_flag("complex").is_err());
    }
}
