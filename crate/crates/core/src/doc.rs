//! Versioned JSON documents for factorizations, morphisms, graded modules
//! and reports.
//!
//! ```json
//! {"format_version": 1, "field": "Q", "variable": "x",
//!  "payload": {"factorization": {"w": [0, 0, 1], "ranks": [1, 1], "maps": [[[[0, 1]]], [[[0, 1]]]]}}}
//! ```
//!
//! Polynomials are coefficient arrays, lowest degree first. Matrices are
//! row-major nested arrays whose shapes come from the accompanying ranks.
//! Scalars are JSON integers, or strings `"p/q"` (and big integers).

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::kmatrix::Matrix;
use crate::matrix::PolyMatrix;
use crate::mf::{MatrixFactorization, MfMorphism, Potential};
use crate::poly::Poly;
use crate::root::GradedModule;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Semantic(String),
}

type DocResult<T> = std::result::Result<T, DocError>;

fn semantic<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(DocError::Semantic(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// Shapes are checked on parse; the cyclic products are not.
    Factorization(MatrixFactorization),
    /// Shapes are checked on parse; intertwining is not.
    Morphism(MfMorphism),
    GradedModule(GradedModule),
    Report(Value),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: FieldSpec,
    pub variable: String,
    pub payload: Payload,
}

impl Document {
    pub fn new(field: FieldSpec, payload: Payload) -> Self {
        Document { field, variable: "x".into(), payload }
    }

    pub fn factorization(m: &MatrixFactorization) -> Self {
        Self::new(m.field(), Payload::Factorization(m.clone()))
    }

    pub fn morphism(f: &MfMorphism) -> Self {
        Self::new(f.source().field(), Payload::Morphism(f.clone()))
    }

    pub fn graded_module(m: &GradedModule) -> Self {
        Self::new(m.field(), Payload::GradedModule(m.clone()))
    }

    pub fn report(field: FieldSpec, report: Value) -> Self {
        Self::new(field, Payload::Report(report))
    }

    pub fn to_value(&self) -> Value {
        let field = match self.field {
            FieldSpec::Rationals => json!("Q"),
            FieldSpec::Prime(p) => json!({ "Fp": p }),
        };
        let payload = match &self.payload {
            Payload::Factorization(m) => json!({ "factorization": factorization_value(m) }),
            Payload::Morphism(f) => json!({ "morphism": {
                "source": factorization_value(f.source()),
                "target": factorization_value(f.target()),
                "components": f.comps().iter().map(poly_matrix_value).collect::<Vec<_>>(),
            }}),
            Payload::GradedModule(g) => json!({ "graded_module": {
                "dims": g.dims(),
                "action": g.action().iter().map(kmatrix_value).collect::<Vec<_>>(),
            }}),
            Payload::Report(r) => json!({ "report": r }),
        };
        json!({
            "format_version": FORMAT_VERSION,
            "field": field,
            "variable": self.variable,
            "payload": payload,
        })
    }

    /// Canonical text: pretty JSON with sorted keys and a trailing newline.
    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> DocResult<Document> {
        let v: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> DocResult<Document> {
        let obj = as_object(v, "document")?;
        match obj.get("format_version").and_then(Value::as_u64) {
            Some(FORMAT_VERSION) => {}
            Some(other) => return semantic(format!("unsupported format_version {other}")),
            None => return semantic("missing integer format_version"),
        }
        let field = parse_field(obj.get("field").ok_or_else(|| DocError::Semantic("missing field".into()))?)?;
        let variable = match obj.get("variable") {
            None => "x".to_string(),
            Some(Value::String(s)) if !s.is_empty() && s.chars().all(char::is_alphanumeric) => s.clone(),
            Some(other) => return semantic(format!("variable must be a nonempty identifier, got {other}")),
        };
        let payload = as_object(obj.get("payload").unwrap_or(&Value::Null), "payload")?;
        if payload.len() != 1 {
            return semantic("payload must have exactly one of factorization, morphism, graded_module, report");
        }
        let (kind, body) = payload.iter().next().expect("one entry");
        let payload = match kind.as_str() {
            "factorization" => Payload::Factorization(parse_factorization(field, body)?),
            "morphism" => Payload::Morphism(parse_morphism(field, body)?),
            "graded_module" => Payload::GradedModule(parse_graded_module(field, body)?),
            "report" => Payload::Report(body.clone()),
            other => return semantic(format!("unknown payload kind {other:?}")),
        };
        Ok(Document { field, variable, payload })
    }
}

fn scalar_value(s: &Scalar) -> Value {
    match s {
        Scalar::Fp(v) => json!(v),
        Scalar::Q(q) if q.is_integer() => match q.numer().to_i64() {
            Some(i) => json!(i),
            None => json!(q.numer().to_string()),
        },
        Scalar::Q(_) => json!(s.to_string()),
    }
}

pub fn poly_value(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_value).collect())
}

pub fn poly_matrix_value(m: &PolyMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(poly_value).collect())).collect())
}

fn kmatrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| scalar_value(m.get(i, j))).collect())).collect())
}

pub fn factorization_value(m: &MatrixFactorization) -> Value {
    json!({
        "w": poly_value(m.potential().w()),
        "ranks": m.ranks(),
        "maps": m.maps().iter().map(poly_matrix_value).collect::<Vec<_>>(),
    })
}

fn as_object<'a>(v: &'a Value, what: &str) -> DocResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| DocError::Semantic(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> DocResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| DocError::Semantic(format!("{what} must be an array")))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> DocResult<&'a Value> {
    obj.get(key).ok_or_else(|| DocError::Semantic(format!("{what} is missing {key:?}")))
}

fn parse_field(v: &Value) -> DocResult<FieldSpec> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(o) if o.len() == 1 => {
            let p = o.get("Fp").and_then(Value::as_u64).ok_or_else(|| DocError::Semantic("field must be \"Q\" or {\"Fp\": p}".into()))?;
            FieldSpec::prime(p).map_err(|e| DocError::Semantic(e.to_string()))
        }
        _ => semantic("field must be \"Q\" or {\"Fp\": p}"),
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let (p, q) = (BigInt::from_str(p.trim()).ok()?, BigInt::from_str(q.trim()).ok()?);
            (q != BigInt::from(0)).then(|| BigRational::new(p, q))
        }
    }
}

fn parse_scalar(field: FieldSpec, v: &Value) -> DocResult<Scalar> {
    let q = match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => BigRational::from_integer(i.into()),
            (None, Some(u)) => BigRational::from_integer(u.into()),
            _ => return semantic(format!("scalar {n} is not an integer; write fractions as \"p/q\"")),
        },
        Value::String(s) => parse_rational(s).ok_or_else(|| DocError::Semantic(format!("cannot read scalar {s:?}")))?,
        other => return semantic(format!("scalar must be an integer or a \"p/q\" string, got {other}")),
    };
    field.from_rational(&q).map_err(|_| DocError::Semantic(format!("denominator of {q} vanishes in {field}")))
}

fn parse_poly(field: FieldSpec, v: &Value) -> DocResult<Poly> {
    let coeffs = as_array(v, "polynomial")?.iter().map(|c| parse_scalar(field, c)).collect::<DocResult<Vec<_>>>()?;
    Ok(Poly::new(field, coeffs))
}

fn parse_poly_matrix(field: FieldSpec, v: &Value, rows: usize, cols: usize, what: &str) -> DocResult<PolyMatrix> {
    let r = as_array(v, what)?;
    if r.len() != rows {
        return semantic(format!("{what} has {} rows, expected {rows}", r.len()));
    }
    let mut m = PolyMatrix::zeros(field, rows, cols);
    for (i, row) in r.iter().enumerate() {
        let row = as_array(row, what)?;
        if row.len() != cols {
            return semantic(format!("{what} row {i} has {} entries, expected {cols}", row.len()));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, parse_poly(field, e)?);
        }
    }
    Ok(m)
}

fn parse_kmatrix(field: FieldSpec, v: &Value, rows: usize, cols: usize, what: &str) -> DocResult<Matrix> {
    let r = as_array(v, what)?;
    if r.len() != rows {
        return semantic(format!("{what} has {} rows, expected {rows}", r.len()));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, row) in r.iter().enumerate() {
        let row = as_array(row, what)?;
        if row.len() != cols {
            return semantic(format!("{what} row {i} has {} entries, expected {cols}", row.len()));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, parse_scalar(field, e)?);
        }
    }
    Ok(m)
}

fn parse_usizes(v: &Value, what: &str) -> DocResult<Vec<usize>> {
    as_array(v, what)?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| DocError::Semantic(format!("{what} must hold nonnegative integers"))))
        .collect()
}

fn parse_factorization(field: FieldSpec, v: &Value) -> DocResult<MatrixFactorization> {
    let obj = as_object(v, "factorization")?;
    let w = parse_poly(field, get(obj, "w", "factorization")?)?;
    let maps_v = as_array(get(obj, "maps", "factorization")?, "maps")?;
    let n = maps_v.len();
    let ranks = match obj.get("ranks") {
        Some(r) => parse_usizes(r, "ranks")?,
        // Without explicit ranks, read them off the first row lengths (nonempty maps only).
        None => maps_v
            .iter()
            .map(|m| m.as_array().and_then(|r| r.first()).and_then(Value::as_array).map(Vec::len))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DocError::Semantic("ranks are required when a map is empty".into()))?,
    };
    if ranks.len() != n {
        return semantic(format!("{} ranks for {n} maps", ranks.len()));
    }
    if let Some(nv) = obj.get("n") {
        if nv.as_u64() != Some(n as u64) {
            return semantic(format!("n = {nv} but {n} maps given"));
        }
    }
    let pot = Potential::new(w, n).map_err(|e| DocError::Semantic(e.to_string()))?;
    let maps = maps_v
        .iter()
        .enumerate()
        .map(|(j, m)| parse_poly_matrix(field, m, ranks[(j + 1) % n.max(1)], ranks[j], &format!("map {j}")))
        .collect::<DocResult<Vec<_>>>()?;
    MatrixFactorization::from_maps(pot, maps).map_err(|e| DocError::Semantic(e.to_string()))
}

fn parse_morphism(field: FieldSpec, v: &Value) -> DocResult<MfMorphism> {
    let obj = as_object(v, "morphism")?;
    let source = parse_factorization(field, get(obj, "source", "morphism")?)?;
    let target = parse_factorization(field, get(obj, "target", "morphism")?)?;
    if source.potential() != target.potential() {
        return semantic("source and target have different potentials");
    }
    let comps_v = as_array(get(obj, "components", "morphism")?, "components")?;
    if comps_v.len() != source.n() {
        return semantic(format!("{} components for n = {}", comps_v.len(), source.n()));
    }
    let comps = comps_v
        .iter()
        .enumerate()
        .map(|(j, c)| parse_poly_matrix(field, c, target.rank(j), source.rank(j), &format!("component {j}")))
        .collect::<DocResult<Vec<_>>>()?;
    Ok(MfMorphism::new_unchecked(Arc::new(source), Arc::new(target), comps))
}

fn parse_graded_module(field: FieldSpec, v: &Value) -> DocResult<GradedModule> {
    let obj = as_object(v, "graded_module")?;
    let dims = parse_usizes(get(obj, "dims", "graded_module")?, "dims")?;
    let n = dims.len();
    let action_v = as_array(get(obj, "action", "graded_module")?, "action")?;
    if action_v.len() != n {
        return semantic(format!("{} action matrices for {n} weights", action_v.len()));
    }
    let action = action_v
        .iter()
        .enumerate()
        .map(|(w, a)| parse_kmatrix(field, a, dims[(w + 1) % n], dims[w], &format!("action {w}")))
        .collect::<DocResult<Vec<_>>>()?;
    GradedModule::new(field, dims, action).map_err(|e| DocError::Semantic(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::cyclic_module;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn x_x() -> MatrixFactorization {
        let pot = Potential::monomial(Q, 2, 2).unwrap();
        let x = PolyMatrix::scalar(&Poly::x(Q), 1);
        MatrixFactorization::new(pot, vec![x.clone(), x]).unwrap()
    }

    #[test]
    fn factorization_round_trips() {
        let d = Document::factorization(&x_x());
        let text = d.serialize();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn trailing_zeros_are_canonicalized() {
        let text = r#"{"format_version":1,"field":"Q","variable":"x",
            "payload":{"factorization":{"w":[0,0,1,0,0],"maps":[[[[0,1,0]]],[[[0,1]]]]}}}"#;
        let d = Document::parse(text).unwrap();
        assert_eq!(d, Document::factorization(&x_x()));
    }

    #[test]
    fn fractions_and_fp() {
        let text = r#"{"format_version":1,"field":{"Fp":7},"payload":{"factorization":
            {"w":[0,0,1],"maps":[[[[0,"1/2"]]],[[[0,9]]]]}}}"#;
        let d = Document::parse(text).unwrap();
        let Payload::Factorization(m) = &d.payload else { panic!() };
        // 1/2 = 4 and 9 = 2 mod 7; their product is 1.
        assert!(m.verify().is_ok());
        assert_eq!(Document::parse(&d.serialize()).unwrap(), d);
    }

    #[test]
    fn errors() {
        let np = r#"{"format_version":1,"field":{"Fp":6},"payload":{"report":{}}}"#;
        assert!(matches!(Document::parse(np), Err(DocError::Semantic(m)) if m.contains("prime")));
        let bad = "{\"format_version\":1,\n \"field\": Q}";
        assert!(matches!(Document::parse(bad), Err(DocError::Syntax { line: 2, .. })));
        let ver = r#"{"format_version":2,"field":"Q","payload":{"report":{}}}"#;
        assert!(matches!(Document::parse(ver), Err(DocError::Semantic(_))));
        let float = r#"{"format_version":1,"field":"Q","payload":{"factorization":{"w":[0.5],"maps":[]}}}"#;
        assert!(Document::parse(float).is_err());
    }

    #[test]
    fn other_payloads_round_trip() {
        let m = x_x();
        let f = MfMorphism::identity(m);
        let g = cyclic_module(Q, 3, 1).unwrap();
        for d in [Document::morphism(&f), Document::graded_module(&g), Document::report(Q, json!({"kind": "x", "ok": true}))] {
            assert_eq!(Document::parse(&d.serialize()).unwrap(), d);
        }
    }

    #[test]
    fn empty_ranks_survive() {
        let zero = MatrixFactorization::zero(Potential::monomial(Q, 2, 3).unwrap());
        let d = Document::factorization(&zero);
        assert_eq!(Document::parse(&d.serialize()).unwrap(), d);
    }
}
