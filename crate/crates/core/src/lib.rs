//! Census of cusped hyperbolic 3-manifolds obtained by gluing ideal regular
//! tetrahedra or octahedra along their faces.
//!
//! The pipeline is: [`polyhedra`] templates, complete face pairings in
//! [`gluing`], symmetry-pruned enumeration with canonical signatures in
//! [`census`], and exact invariants in [`invariants`], with the volume
//! constants coming from [`hypervol`]. [`verify`] runs the classification of
//! two-octahedron, four-cusp manifolds as a checked report.

pub mod census;
mod dsu;
pub mod error;
pub mod export;
pub mod gluing;
pub mod hypervol;
pub mod invariants;
pub mod polyhedra;
pub mod verify;

pub use census::{
    canonical_form, canonical_signature, complex_from_signature, enumerate, enumerate_naive, CanonicalSignature,
    CensusClass, CensusQuery,
};
pub use error::{Error, Result};
pub use gluing::{
    edge_classes, parse_gluing, render_gluing, validate, vertex_links, CuspLink, EdgeClass, FacePairing, FaceRef,
    GluingComplex, ValidityReport,
};
pub use invariants::{first_homology, smith_normal_form, HomologyGroup, InvariantRecord};
pub use polyhedra::{opposite_face, target_edge_valence, template, PolyhedronKind, PolyhedronTemplate};
