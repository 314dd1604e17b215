//! Combinatorial templates for the ideal regular tetrahedron and octahedron.
//!
//! Labels are fixed. Octahedron vertices are `0..6` with opposite pairs
//! `(0,5)`, `(1,4)`, `(2,3)`; tetrahedron vertices are `0..4`. Every face is
//! stored as a corner triple in outward (counter-clockwise seen from outside)
//! order, rotated so the smallest vertex comes first, and faces are sorted
//! lexicographically. Only orientation-preserving symmetries are kept.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PolyhedronKind {
    Tetrahedron,
    Octahedron,
}

impl PolyhedronKind {
    pub const ALL: [PolyhedronKind; 2] = [PolyhedronKind::Tetrahedron, PolyhedronKind::Octahedron];

    pub fn face_count(self) -> usize {
        match self {
            PolyhedronKind::Tetrahedron => 4,
            PolyhedronKind::Octahedron => 8,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            PolyhedronKind::Tetrahedron => 6,
            PolyhedronKind::Octahedron => 12,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            PolyhedronKind::Tetrahedron => 4,
            PolyhedronKind::Octahedron => 6,
        }
    }

    /// Short name used in files and signatures.
    pub fn short_name(self) -> &'static str {
        match self {
            PolyhedronKind::Tetrahedron => "tet",
            PolyhedronKind::Octahedron => "oct",
        }
    }

    pub fn from_short_name(name: &str) -> Option<Self> {
        match name {
            "tet" => Some(PolyhedronKind::Tetrahedron),
            "oct" => Some(PolyhedronKind::Octahedron),
            _ => None,
        }
    }

    /// The dihedral angle of the ideal regular polyhedron is `π / d` for the
    /// returned `d`.
    pub fn dihedral_divisor(self) -> usize {
        match self {
            PolyhedronKind::Tetrahedron => 3,
            PolyhedronKind::Octahedron => 2,
        }
    }

    pub fn template(self) -> &'static PolyhedronTemplate {
        static TET: OnceLock<PolyhedronTemplate> = OnceLock::new();
        static OCT: OnceLock<PolyhedronTemplate> = OnceLock::new();
        match self {
            PolyhedronKind::Tetrahedron => TET.get_or_init(|| PolyhedronTemplate::build(self)),
            PolyhedronKind::Octahedron => OCT.get_or_init(|| PolyhedronTemplate::build(self)),
        }
    }
}

impl fmt::Display for PolyhedronKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyhedronKind::Tetrahedron => f.write_str("tetrahedron"),
            PolyhedronKind::Octahedron => f.write_str("octahedron"),
        }
    }
}

/// An orientation-preserving symmetry, stored as a vertex permutation with
/// its induced action on faces precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    vertices: Vec<usize>,
    /// `face_map[f] = (g, s)`: corner `i` of face `f` is sent to corner
    /// `(i + s) % 3` of face `g`.
    face_map: Vec<(usize, u8)>,
}

impl Rotation {
    pub fn vertex(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn face(&self, f: usize) -> (usize, u8) {
        self.face_map[f]
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v)
    }
}

#[derive(Debug, Clone)]
pub struct PolyhedronTemplate {
    pub kind: PolyhedronKind,
    pub faces: Vec<[usize; 3]>,
    /// Sorted vertex pairs, smaller vertex first.
    pub edges: Vec<[usize; 2]>,
    /// Octahedron only.
    pub vertex_opposite: Option<Vec<usize>>,
    /// Identity first, then lexicographic by vertex image.
    pub rotations: Vec<Rotation>,
    pub edge_valence_target: usize,
    face_edges: Vec<[usize; 3]>,
    edge_faces: Vec<[usize; 2]>,
    edge_lookup: Vec<Vec<Option<usize>>>,
    vertex_faces: Vec<Vec<usize>>,
    /// `normalizers[g][s]` is the rotation sending face `g` to face 0 with
    /// corner shift `s`.
    normalizers: Vec<[usize; 3]>,
}

fn det3(a: [i32; 3], b: [i32; 3], c: [i32; 3]) -> i32 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn rotate_min_first(face: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| face[i]).unwrap();
    [face[k], face[(k + 1) % 3], face[(k + 2) % 3]]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl PolyhedronTemplate {
    fn build(kind: PolyhedronKind) -> Self {
        let coords: Vec<[i32; 3]> = match kind {
            PolyhedronKind::Tetrahedron => {
                vec![[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
            }
            PolyhedronKind::Octahedron => vec![[0, 0, 1], [1, 0, 0], [0, 1, 0], [0, -1, 0], [-1, 0, 0], [0, 0, -1]],
        };
        let n = coords.len();
        let adjacent = |u: usize, v: usize| {
            u != v
                && match kind {
                    PolyhedronKind::Tetrahedron => true,
                    PolyhedronKind::Octahedron => u + v != 5,
                }
        };

        let mut faces = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                        let face = if det3(coords[a], coords[b], coords[c]) > 0 { [a, b, c] } else { [a, c, b] };
                        faces.push(rotate_min_first(face));
                    }
                }
            }
        }
        faces.sort();

        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push([u, v]);
                }
            }
        }
        let mut edge_lookup = vec![vec![None; n]; n];
        for (i, &[u, v]) in edges.iter().enumerate() {
            edge_lookup[u][v] = Some(i);
            edge_lookup[v][u] = Some(i);
        }

        let face_edges: Vec<[usize; 3]> = faces
            .iter()
            .map(|f| {
                let e = |i: usize| edge_lookup[f[i]][f[(i + 1) % 3]].unwrap();
                [e(0), e(1), e(2)]
            })
            .collect();
        let mut edge_faces = vec![Vec::new(); edges.len()];
        for (fi, fe) in face_edges.iter().enumerate() {
            for &e in fe {
                edge_faces[e].push(fi);
            }
        }
        let edge_faces: Vec<[usize; 2]> = edge_faces
            .into_iter()
            .map(|fs| {
                assert_eq!(fs.len(), 2, "edge must lie on two faces");
                [fs[0], fs[1]]
            })
            .collect();

        // Faces around each vertex in the cyclic order induced by the outward
        // orientation: face (v, w1, w2) is followed by the face (v, w2, w3).
        let corner_of = |f: &[usize; 3], v: usize| f.iter().position(|&x| x == v);
        let mut vertex_faces = Vec::with_capacity(n);
        for v in 0..n {
            let around: Vec<usize> = (0..faces.len()).filter(|&f| corner_of(&faces[f], v).is_some()).collect();
            let mut cycle = vec![around[0]];
            while cycle.len() < around.len() {
                let cur = faces[*cycle.last().unwrap()];
                let i = corner_of(&cur, v).unwrap();
                let w2 = cur[(i + 2) % 3];
                let next = around
                    .iter()
                    .copied()
                    .find(|&g| {
                        let gf = faces[g];
                        let j = corner_of(&gf, v).unwrap();
                        gf[(j + 1) % 3] == w2
                    })
                    .unwrap();
                cycle.push(next);
            }
            vertex_faces.push(cycle);
        }

        let face_index = |tri: [usize; 3]| -> Option<(usize, u8)> {
            let key = rotate_min_first(tri);
            let g = faces.binary_search(&key).ok()?;
            // Find s with tri[i] = faces[g][(i + s) % 3].
            let s = (0..3).find(|&s| faces[g][s] == tri[0]).unwrap();
            Some((g, s as u8))
        };

        let mut rotations = Vec::new();
        for perm in permutations(n) {
            let mapped: Option<Vec<(usize, u8)>> =
                faces.iter().map(|f| face_index([perm[f[0]], perm[f[1]], perm[f[2]]])).collect();
            if let Some(face_map) = mapped {
                rotations.push(Rotation { vertices: perm, face_map });
            }
        }

        let mut normalizers = vec![[usize::MAX; 3]; faces.len()];
        for (ri, rot) in rotations.iter().enumerate() {
            for (g, slot) in normalizers.iter_mut().enumerate() {
                let (img, s) = rot.face(g);
                if img == 0 {
                    slot[s as usize] = ri;
                }
            }
        }

        let vertex_opposite = match kind {
            PolyhedronKind::Octahedron => Some((0..n).map(|v| 5 - v).collect()),
            PolyhedronKind::Tetrahedron => None,
        };

        PolyhedronTemplate {
            kind,
            faces,
            edges,
            vertex_opposite,
            rotations,
            edge_valence_target: target_edge_valence(kind),
            face_edges,
            edge_faces,
            edge_lookup,
            vertex_faces,
            normalizers,
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.kind.vertex_count()
    }

    pub fn corner_of(&self, face: usize, vertex: usize) -> Option<usize> {
        self.faces[face].iter().position(|&v| v == vertex)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup[u][v]
    }

    /// Edge joining corner `i` and corner `i + 1` of `face`.
    pub fn face_edge(&self, face: usize, i: usize) -> usize {
        self.face_edges[face][i]
    }

    pub fn face_edges(&self, face: usize) -> [usize; 3] {
        self.face_edges[face]
    }

    pub fn edge_faces(&self, edge: usize) -> [usize; 2] {
        self.edge_faces[edge]
    }

    /// Faces containing `vertex`, in cyclic order around it.
    pub fn faces_around(&self, vertex: usize) -> &[usize] {
        &self.vertex_faces[vertex]
    }

    pub fn opposite_vertex(&self, vertex: usize) -> Option<usize> {
        self.vertex_opposite.as_ref().map(|o| o[vertex])
    }

    /// Rotation sending face `face` to face 0 with corner `i` landing on
    /// corner `(i + shift) % 3`.
    pub fn normalizer(&self, face: usize, shift: u8) -> usize {
        self.normalizers[face][shift as usize]
    }

    pub fn rotation(&self, index: usize) -> &Rotation {
        &self.rotations[index]
    }
}

pub fn template(kind: PolyhedronKind) -> &'static PolyhedronTemplate {
    kind.template()
}

/// Number of edge copies that must meet around an edge class: `2π` divided
/// by the dihedral angle.
pub fn target_edge_valence(kind: PolyhedronKind) -> usize {
    2 * kind.dihedral_divisor()
}

/// The octahedron face sharing no vertex with `face`.
pub fn opposite_face(kind: PolyhedronKind, face: usize) -> Result<usize> {
    if kind != PolyhedronKind::Octahedron {
        return Err(Error::NoOppositeFace { kind });
    }
    let t = kind.template();
    if face >= t.face_count() {
        return Err(Error::FaceOutOfRange { kind, face, faces: t.face_count() });
    }
    let image = t.faces[face].map(|v| 5 - v);
    let key = rotate_min_first([image[0], image[2], image[1]]);
    Ok(t.faces.binary_search(&key).expect("antipodal face exists"))
}
