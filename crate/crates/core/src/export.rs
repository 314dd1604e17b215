//! Structured documents: census exports and invariant records.
//!
//! Both share one shape, `{"records": [...]}` (census exports add a
//! `"query"` object), where every record holds the class invariants and its
//! embedded gluing document. Keys are emitted in sorted order.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::census::{CanonicalSignature, CensusClass, CensusQuery};
use crate::error::{Error, Result};
use crate::gluing::{parse_gluing, parse_gluing_value, GluingComplex};
use crate::invariants::{HomologyGroup, InvariantRecord};

pub fn gluing_value(complex: &GluingComplex) -> Value {
    let pairings: Vec<Value> = complex
        .pairings()
        .iter()
        .map(|p| json!({"a": [p.a.polyhedron, p.a.face], "b": [p.b.polyhedron, p.b.face], "rot": p.rotation}))
        .collect();
    json!({"kind": complex.kind().short_name(), "count": complex.count(), "pairings": pairings})
}

fn torsion_value(t: &BigInt) -> Value {
    match u64::try_from(t) {
        Ok(v) => json!(v),
        Err(_) => json!(t.to_string()),
    }
}

pub fn record_value(record: &InvariantRecord, complex: &GluingComplex) -> Value {
    json!({
        "signature": record.signature.as_str(),
        "cusp_count": record.cusp_count,
        "cusp_vertex_distribution": record.cusp_vertex_distribution,
        "h1": {
            "rank": record.h1.rank,
            "torsion": record.h1.torsion.iter().map(torsion_value).collect::<Vec<_>>(),
            "text": record.h1.to_string(),
        },
        "volume": record.volume,
        "volume_text": record.volume_text(),
        "orientable": record.orientable,
        "gluing": gluing_value(complex),
    })
}

/// Records for `complexes`, in input order.
pub fn invariants_document(complexes: &[GluingComplex]) -> Result<Value> {
    let records =
        complexes.iter().map(|c| Ok(record_value(&InvariantRecord::compute(c)?, c))).collect::<Result<Vec<_>>>()?;
    Ok(json!({"records": records}))
}

pub fn census_document(query: &CensusQuery, classes: &[CensusClass]) -> Result<Value> {
    let complexes: Vec<GluingComplex> = classes.iter().map(|c| c.complex.clone()).collect();
    let mut doc = invariants_document(&complexes)?;
    doc["query"] = json!({
        "kind": query.kind.short_name(),
        "count": query.count,
        "cusp_filter": query.cusp_filter,
    });
    Ok(doc)
}

pub fn render_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

fn parse_error(what: &str) -> Error {
    Error::Parse(format!("malformed record: {what}"))
}

/// Complexes from a gluing document or from a document with `records`.
pub fn read_complexes(text: &str) -> Result<Vec<GluingComplex>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match value.get("records") {
        Some(records) => records
            .as_array()
            .ok_or_else(|| parse_error("records is not a list"))?
            .iter()
            .map(|r| parse_gluing_value(r.get("gluing").cloned().ok_or_else(|| parse_error("missing gluing"))?))
            .collect(),
        None => Ok(vec![parse_gluing(text)?]),
    }
}

fn record_from_value(v: &Value) -> Result<InvariantRecord> {
    let field = |name: &str| v.get(name).ok_or_else(|| parse_error(name));
    let usize_of = |x: &Value, name: &str| x.as_u64().map(|n| n as usize).ok_or_else(|| parse_error(name));
    let h1 = field("h1")?;
    let torsion = h1
        .get("torsion")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("h1.torsion"))?
        .iter()
        .map(|t| match t {
            Value::Number(n) => n.as_u64().map(BigInt::from).ok_or_else(|| parse_error("h1.torsion")),
            Value::String(s) => s.parse::<BigInt>().map_err(|_| parse_error("h1.torsion")),
            _ => Err(parse_error("h1.torsion")),
        })
        .collect::<Result<Vec<_>>>()?;
    let signature: CanonicalSignature =
        serde_json::from_value(field("signature")?.clone()).map_err(|_| parse_error("signature"))?;
    Ok(InvariantRecord {
        signature,
        cusp_count: usize_of(field("cusp_count")?, "cusp_count")?,
        cusp_vertex_distribution: field("cusp_vertex_distribution")?
            .as_array()
            .ok_or_else(|| parse_error("cusp_vertex_distribution"))?
            .iter()
            .map(|x| usize_of(x, "cusp_vertex_distribution"))
            .collect::<Result<_>>()?,
        h1: HomologyGroup {
            rank: usize_of(h1.get("rank").ok_or_else(|| parse_error("h1.rank"))?, "h1.rank")?,
            torsion,
        },
        volume: field("volume")?.as_f64().ok_or_else(|| parse_error("volume"))?,
        orientable: field("orientable")?.as_bool().ok_or_else(|| parse_error("orientable"))?,
    })
}

/// The invariant fields stored in a `records` document.
pub fn read_records(text: &str) -> Result<Vec<InvariantRecord>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    value
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("missing records"))?
        .iter()
        .map(record_from_value)
        .collect()
}
