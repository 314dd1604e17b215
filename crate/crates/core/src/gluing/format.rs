//! Gluing file format.
//!
//! ```text
//! {
//!   "kind": "oct",
//!   "count": 2,
//!   "pairings": [
//!     {"a": [0, 0], "b": [0, 3], "rot": 0},
//!     ...
//!   ]
//! }
//! ```
//!
//! Pairings are written with `a < b` and sorted; rendering a parsed document
//! reproduces the input byte for byte when the input was itself rendered.

use std::fmt::Write;

use serde::Deserialize;

use super::{FacePairing, FaceRef, GluingComplex};
use crate::error::{Error, Result};
use crate::polyhedra::PolyhedronKind;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    kind: String,
    count: usize,
    pairings: Vec<PairingEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingEntry {
    a: [usize; 2],
    b: [usize; 2],
    rot: u8,
}

pub fn render_gluing(complex: &GluingComplex) -> String {
    let mut out = String::new();
    render_gluing_into(&mut out, complex, "");
    out.push('\n');
    out
}

/// Writes the document with every line after the first prefixed by
/// `indent`, so it can be nested in a larger structured document.
pub(crate) fn render_gluing_into(out: &mut String, complex: &GluingComplex, indent: &str) {
    out.push_str("{\n");
    let _ = writeln!(out, "{indent}  \"kind\": \"{}\",", complex.kind().short_name());
    let _ = writeln!(out, "{indent}  \"count\": {},", complex.count());
    let _ = writeln!(out, "{indent}  \"pairings\": [");
    let n = complex.pairings().len();
    for (i, p) in complex.pairings().iter().enumerate() {
        let _ = writeln!(
            out,
            "{indent}    {{\"a\": [{}, {}], \"b\": [{}, {}], \"rot\": {}}}{}",
            p.a.polyhedron,
            p.a.face,
            p.b.polyhedron,
            p.b.face,
            p.rotation,
            if i + 1 < n { "," } else { "" }
        );
    }
    let _ = writeln!(out, "{indent}  ]");
    let _ = write!(out, "{indent}}}");
}

pub fn parse_gluing(text: &str) -> Result<GluingComplex> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_value_doc(doc)
}

pub(crate) fn parse_gluing_value(value: serde_json::Value) -> Result<GluingComplex> {
    let doc: Document = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    from_value_doc(doc)
}

fn from_value_doc(doc: Document) -> Result<GluingComplex> {
    let kind = PolyhedronKind::from_short_name(&doc.kind)
        .ok_or_else(|| Error::Parse(format!("unknown kind {:?} (expected \"tet\" or \"oct\")", doc.kind)))?;
    let pairings = doc
        .pairings
        .into_iter()
        .map(|e| FacePairing::new(FaceRef::new(e.a[0], e.a[1]), FaceRef::new(e.b[0], e.b[1]), e.rot))
        .collect();
    GluingComplex::new(kind, doc.count, pairings)
}
