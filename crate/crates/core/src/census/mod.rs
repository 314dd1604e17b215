//! Enumeration of accepted gluings up to isomorphism.
//!
//! The search glues the lowest unglued face at each step, trying partners in
//! `(polyhedron, face, rotation)` order. Three reductions keep it small:
//!
//! * the first pairing is restricted to orbit representatives under the
//!   rotations of polyhedron 0 fixing face 0;
//! * a polyhedron not yet touched by any pairing is only entered as the
//!   lowest untouched index, through its face 0 with rotation 0 (its own
//!   relabeling and rotation are still free at that point);
//! * after every pairing the edges of the glued face are walked, and the
//!   branch is cut when a closed edge cycle misses the valence target or an
//!   open chain already exceeds it.
//!
//! Isomorphic results are merged afterwards through canonical signatures.

mod signature;

pub use signature::{canonical_form, canonical_signature, complex_from_signature, CanonicalSignature};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gluing::{edge_feasible, validate, Glue, GluingComplex, ValidityReport};
use crate::polyhedra::{PolyhedronKind, PolyhedronTemplate};

/// Largest supported polyhedron counts for the pruned search.
pub const MAX_OCTAHEDRA: usize = 3;
pub const MAX_TETRAHEDRA: usize = 8;
/// The unpruned oracle refuses instances with more faces than this.
pub const NAIVE_FACE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusQuery {
    pub kind: PolyhedronKind,
    pub count: usize,
    pub cusp_filter: Option<usize>,
    /// Only orientable gluings are representable; kept for the query surface.
    pub orientable_only: bool,
}

impl CensusQuery {
    pub fn new(kind: PolyhedronKind, count: usize) -> Self {
        Self { kind, count, cusp_filter: None, orientable_only: true }
    }

    pub fn with_cusps(mut self, cusps: usize) -> Self {
        self.cusp_filter = Some(cusps);
        self
    }

    fn check(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidQuery("count must be at least 1".into()));
        }
        if !(self.count * self.kind.face_count()).is_multiple_of(2) {
            return Err(Error::InvalidQuery("total face count must be even".into()));
        }
        if !self.orientable_only {
            return Err(Error::InvalidQuery("only orientable gluings are supported".into()));
        }
        let limit = match self.kind {
            PolyhedronKind::Octahedron => MAX_OCTAHEDRA,
            PolyhedronKind::Tetrahedron => MAX_TETRAHEDRA,
        };
        if self.count > limit {
            return Err(Error::ResourceLimit { kind: self.kind, count: self.count, limit });
        }
        Ok(())
    }

    fn admits(&self, report: &ValidityReport) -> bool {
        report.accepted() && self.cusp_filter.is_none_or(|c| c == report.cusp_count)
    }
}

/// One isomorphism class in a census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusClass {
    pub signature: CanonicalSignature,
    /// The canonical representative, decoded from the signature.
    pub complex: GluingComplex,
    pub report: ValidityReport,
}

struct Search<'a> {
    t: &'a PolyhedronTemplate,
    n: usize,
    nf: usize,
    table: Vec<Option<Glue>>,
    /// Polyhedra `0..touched` have been reached by some pairing.
    touched: usize,
    /// Orbit representatives `(partner face, rotation)` for a first pairing
    /// inside polyhedron 0.
    first_reps: Vec<(usize, u8)>,
}

#[derive(Clone)]
struct Frontier {
    table: Vec<Option<Glue>>,
    touched: usize,
}

impl<'a> Search<'a> {
    fn new(kind: PolyhedronKind, n: usize) -> Self {
        let t = kind.template();
        let nf = t.face_count();
        Self { t, n, nf, table: vec![None; n * nf], touched: 1, first_reps: first_pairing_representatives(t) }
    }

    fn lowest_unglued(&self) -> Option<usize> {
        self.table.iter().position(Option::is_none)
    }

    /// Candidate `(partner, rotation)` for gluing face `i`, in search order.
    fn candidates(&self, i: usize) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        let first = i == 0;
        for j in i + 1..self.n * self.nf {
            if self.table[j].is_some() {
                continue;
            }
            let (q, g) = (j / self.nf, j % self.nf);
            if q > self.touched || (q == self.touched && g != 0) {
                continue;
            }
            for r in 0..3u8 {
                if q == self.touched && r != 0 {
                    continue;
                }
                if first && q == 0 && !self.first_reps.contains(&(g, r)) {
                    continue;
                }
                out.push((j, r));
            }
        }
        out
    }

    fn place(&mut self, i: usize, j: usize, r: u8) -> usize {
        self.table[i] = Some(Glue { partner: j, rot: r });
        self.table[j] = Some(Glue { partner: i, rot: r });
        let before = self.touched;
        if j / self.nf == self.touched {
            self.touched += 1;
        }
        before
    }

    fn unplace(&mut self, i: usize, j: usize, touched_before: usize) {
        self.table[i] = None;
        self.table[j] = None;
        self.touched = touched_before;
    }

    fn feasible(&self, i: usize) -> bool {
        let (p, f) = (i / self.nf, i % self.nf);
        self.t.face_edges(f).iter().all(|&e| edge_feasible(self.t, &self.table, p, e))
    }

    /// Returns false when the partial gluing cannot be completed to a
    /// connected complex: the lowest unglued face lies in a polyhedron no
    /// pairing has reached.
    fn connected_so_far(&self, i: usize) -> bool {
        i / self.nf < self.touched
    }

    fn run(&mut self, query: &CensusQuery, out: &mut BTreeMap<CanonicalSignature, CensusClass>) {
        let Some(i) = self.lowest_unglued() else {
            self.emit(query, out);
            return;
        };
        if !self.connected_so_far(i) {
            return;
        }
        for (j, r) in self.candidates(i) {
            let before = self.place(i, j, r);
            if self.feasible(i) {
                self.run(query, out);
            }
            self.unplace(i, j, before);
        }
    }

    fn emit(&self, query: &CensusQuery, out: &mut BTreeMap<CanonicalSignature, CensusClass>) {
        let complex = GluingComplex::from_table(self.t.kind, self.n, &self.table);
        let report = validate(&complex);
        if query.admits(&report) {
            let (signature, canonical) = canonical_form(&complex);
            out.entry(signature.clone()).or_insert_with(|| {
                let report = validate(&canonical);
                CensusClass { signature, complex: canonical, report }
            });
        }
    }

    /// Expands the search breadth-first to at least `target` partial states
    /// (or until depth runs out), returning them in search order.
    fn frontier(&mut self, target: usize, max_depth: usize) -> Vec<Frontier> {
        let mut level = vec![Frontier { table: self.table.clone(), touched: self.touched }];
        for _ in 0..max_depth {
            if level.len() >= target {
                break;
            }
            let mut next = Vec::new();
            let mut expanded = false;
            for state in level {
                self.table = state.table.clone();
                self.touched = state.touched;
                match self.lowest_unglued() {
                    Some(i) if self.connected_so_far(i) => {
                        expanded = true;
                        for (j, r) in self.candidates(i) {
                            let before = self.place(i, j, r);
                            if self.feasible(i) {
                                next.push(Frontier { table: self.table.clone(), touched: self.touched });
                            }
                            self.unplace(i, j, before);
                        }
                    }
                    Some(_) => {}
                    None => next.push(state),
                }
            }
            level = next;
            if !expanded {
                break;
            }
        }
        level
    }
}

/// Orbits of `(partner face, rotation)` for a pairing of face 0 with another
/// face of the same polyhedron, under rotations fixing face 0; returns the
/// smallest element of each orbit.
fn first_pairing_representatives(t: &PolyhedronTemplate) -> Vec<(usize, u8)> {
    let stabilizer: Vec<_> = t.rotations.iter().filter(|r| r.face(0).0 == 0).collect();
    let mut reps = Vec::new();
    for g in 1..t.face_count() {
        for r in 0..3u8 {
            let orbit_min = stabilizer
                .iter()
                .map(|rot| {
                    let (_, s0) = rot.face(0);
                    let (g2, sg) = rot.face(g);
                    (g2, (r + s0 + sg) % 3)
                })
                .min()
                .unwrap();
            if orbit_min == (g, r) {
                reps.push((g, r));
            }
        }
    }
    reps
}

/// All accepted isomorphism classes for `query`, sorted by signature.
/// `jobs` is the worker count; the output does not depend on it.
pub fn enumerate(query: &CensusQuery, jobs: usize) -> Result<Vec<CensusClass>> {
    query.check()?;
    let jobs = jobs.max(1);
    let mut root = Search::new(query.kind, query.count);
    let frontier = root.frontier(16 * jobs, 3);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidQuery(format!("cannot start {jobs} workers: {e}")))?;
    let parts: Vec<BTreeMap<CanonicalSignature, CensusClass>> = pool.install(|| {
        frontier
            .into_par_iter()
            .map(|state| {
                let mut search = Search::new(query.kind, query.count);
                search.table = state.table;
                search.touched = state.touched;
                let mut out = BTreeMap::new();
                search.run(query, &mut out);
                out
            })
            .collect()
    });
    let mut merged = BTreeMap::new();
    for part in parts {
        for (sig, class) in part {
            merged.entry(sig).or_insert(class);
        }
    }
    Ok(merged.into_values().collect())
}

/// Exhaustive enumeration with no pruning and no symmetry reduction, used as
/// a ground truth for [`enumerate`] on small instances.
pub fn enumerate_naive(query: &CensusQuery) -> Result<Vec<CanonicalSignature>> {
    query.check()?;
    let nf = query.kind.face_count();
    if query.count * nf > NAIVE_FACE_LIMIT {
        return Err(Error::ResourceLimit { kind: query.kind, count: query.count, limit: NAIVE_FACE_LIMIT / nf });
    }
    fn go(
        kind: PolyhedronKind,
        n: usize,
        table: &mut Vec<Option<Glue>>,
        query: &CensusQuery,
        out: &mut BTreeMap<CanonicalSignature, ()>,
    ) {
        let Some(i) = table.iter().position(Option::is_none) else {
            let complex = GluingComplex::from_table(kind, n, table);
            if query.admits(&validate(&complex)) {
                out.insert(canonical_signature(&complex), ());
            }
            return;
        };
        for j in i + 1..table.len() {
            if table[j].is_some() {
                continue;
            }
            for r in 0..3u8 {
                table[i] = Some(Glue { partner: j, rot: r });
                table[j] = Some(Glue { partner: i, rot: r });
                go(kind, n, table, query, out);
                table[i] = None;
                table[j] = None;
            }
        }
    }
    let mut table = vec![None; query.count * nf];
    let mut out = BTreeMap::new();
    go(query.kind, query.count, &mut table, query, &mut out);
    Ok(out.into_keys().collect())
}

/// Newline-delimited `signature<TAB>cusps<TAB>distribution` records.
pub fn render_census_records(classes: &[CensusClass]) -> String {
    let mut s = String::new();
    for c in classes {
        s.push_str(&format!(
            "{}\t{}\t{}\n",
            c.signature,
            c.report.cusp_count,
            crate::gluing::render_distribution(&c.report.cusp_vertex_distribution)
        ));
    }
    s
}
