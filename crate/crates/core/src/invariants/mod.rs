//! Invariants of accepted complexes: cusp data, first homology and volume,
//! plus closed-form volume bounds.

mod snf;

pub use snf::{smith_normal_form, Matrix, SmithNormalForm};

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::census::{canonical_signature, CanonicalSignature};
use crate::error::{Error, Result};
use crate::gluing::{edge_classes, render_distribution, validate, walk_edge, FaceRef, GluingComplex};
use crate::hypervol;
use crate::polyhedra::PolyhedronKind;

/// A finitely generated abelian group `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/tₖ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// Cokernel of the relation matrix whose rows are relators.
    pub fn from_relations(relations: &Matrix<i64>) -> Self {
        let snf = smith_normal_form(relations);
        Self { rank: relations.cols() - snf.rank, torsion: snf.factors.into_iter().filter(|f| !f.is_one()).collect() }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn require_accepted(complex: &GluingComplex) -> Result<crate::gluing::ValidityReport> {
    let report = validate(complex);
    if report.accepted() {
        Ok(report)
    } else {
        Err(Error::NotAccepted(report.failures().join(", ")))
    }
}

/// Presentation matrix of the abelianized fundamental group: one column per
/// face pairing, one relator row per edge class (the pairings crossed while
/// circling the edge, signed by direction), and one row per pairing in a
/// spanning tree of the polyhedron adjacency graph.
pub fn relation_matrix(complex: &GluingComplex) -> Matrix<i64> {
    let t = complex.template();
    let cols = complex.pairings().len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for class in edge_classes(complex) {
        let first = class.members[0];
        let walk = walk_edge(t, complex.table(), first.polyhedron, first.edge, 0);
        let mut row = vec![0i64; cols];
        for step in &walk.steps {
            let (idx, is_a) = complex.pairing_of(FaceRef::new(step.polyhedron, step.exit_face));
            row[idx] += if is_a { 1 } else { -1 };
        }
        rows.push(row);
    }
    let mut seen = vec![false; complex.count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        for f in 0..t.face_count() {
            let (other, _) = complex.partner(FaceRef::new(p, f));
            if !seen[other.polyhedron] {
                seen[other.polyhedron] = true;
                queue.push_back(other.polyhedron);
                let (idx, _) = complex.pairing_of(FaceRef::new(p, f));
                let mut row = vec![0i64; cols];
                row[idx] = 1;
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(rows)
}

pub fn first_homology(complex: &GluingComplex) -> Result<HomologyGroup> {
    require_accepted(complex)?;
    Ok(HomologyGroup::from_relations(&relation_matrix(complex)))
}

pub fn polyhedron_volume(kind: PolyhedronKind) -> f64 {
    match kind {
        PolyhedronKind::Tetrahedron => hypervol::v3(),
        PolyhedronKind::Octahedron => hypervol::v8(),
    }
}

/// `count × V_kind`.
pub fn volume(complex: &GluingComplex) -> Result<f64> {
    require_accepted(complex)?;
    Ok(complex.count() as f64 * polyhedron_volume(complex.kind()))
}

/// Adams: an `n`-cusped hyperbolic 3-manifold has volume at least `n·V₃`.
pub fn adams_lower_bound(n_cusps: usize) -> f64 {
    n_cusps as f64 * hypervol::v3()
}

/// `(V₈/2)·|χ|`, the lower bound in terms of the Euler characteristic of a
/// (guts) boundary; `chi` is expected to be non-positive.
pub fn guts_volume_bound(chi_boundary: i64) -> f64 {
    hypervol::v8() / 2.0 * chi_boundary.unsigned_abs() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub signature: CanonicalSignature,
    pub cusp_count: usize,
    pub cusp_vertex_distribution: Vec<usize>,
    pub h1: HomologyGroup,
    pub volume: f64,
    pub orientable: bool,
}

impl InvariantRecord {
    pub fn compute(complex: &GluingComplex) -> Result<Self> {
        let report = require_accepted(complex)?;
        Ok(Self {
            signature: canonical_signature(complex),
            cusp_count: report.cusp_count,
            cusp_vertex_distribution: report.cusp_vertex_distribution,
            h1: HomologyGroup::from_relations(&relation_matrix(complex)),
            volume: volume(complex)?,
            orientable: report.oriented_ok,
        })
    }

    pub fn distribution_text(&self) -> String {
        render_distribution(&self.cusp_vertex_distribution)
    }

    pub fn volume_text(&self) -> String {
        hypervol::fixed12(self.volume)
    }

    /// `signature, cusps, distribution, H1, volume` as a table row.
    pub fn render_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.signature,
            self.cusp_count,
            self.distribution_text(),
            self.h1,
            self.volume_text()
        )
    }
}
