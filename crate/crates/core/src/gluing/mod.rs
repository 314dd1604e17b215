//! Face pairings of N polyhedra, the edge and vertex classes they induce, cusp
//! links, and the combinatorial validity check.
//!
//! A pairing glues face `a` to face `b` by an orientation-reversing corner
//! bijection: corner `i` of `a` goes to corner `(rot - i) mod 3` of `b`. The
//! same formula sends corners of `b` back to `a`, so a pairing is symmetric in
//! its two sides.

mod format;

pub(crate) use format::parse_gluing_value;
pub use format::{parse_gluing, render_gluing};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::polyhedra::{PolyhedronKind, PolyhedronTemplate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceRef {
    pub polyhedron: usize,
    pub face: usize,
}

impl FaceRef {
    pub fn new(polyhedron: usize, face: usize) -> Self {
        Self { polyhedron, face }
    }
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.polyhedron, self.face)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FacePairing {
    pub a: FaceRef,
    pub b: FaceRef,
    pub rotation: u8,
}

/// Corner of the partner face receiving `corner` under a pairing with
/// rotation `rot`.
#[inline]
pub fn partner_corner(rot: u8, corner: usize) -> usize {
    (rot as usize + 3 - corner) % 3
}

impl FacePairing {
    pub fn new(a: FaceRef, b: FaceRef, rotation: u8) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Self { a, b, rotation }
    }

    /// Builds the pairing that sends vertex `a_vertices[i]` of face `a` to
    /// `b_vertices[i]` of face `b`; fails unless the vertex sets are faces and
    /// the map reverses orientation.
    pub fn from_vertices(
        kind: PolyhedronKind,
        a_polyhedron: usize,
        a_vertices: [usize; 3],
        b_polyhedron: usize,
        b_vertices: [usize; 3],
    ) -> Result<Self> {
        let t = kind.template();
        let find = |vs: [usize; 3]| (0..t.face_count()).find(|&f| vs.iter().all(|v| t.faces[f].contains(v)));
        let fa = find(a_vertices).ok_or_else(|| Error::InvalidGluing(format!("{a_vertices:?} is not a face")))?;
        let fb = find(b_vertices).ok_or_else(|| Error::InvalidGluing(format!("{b_vertices:?} is not a face")))?;
        let ca = t.corner_of(fa, a_vertices[0]).unwrap();
        let cb = t.corner_of(fb, b_vertices[0]).unwrap();
        let rot = ((ca + cb) % 3) as u8;
        for i in 0..3 {
            let c = t.corner_of(fa, a_vertices[i]).unwrap();
            if t.faces[fb][partner_corner(rot, c)] != b_vertices[i] {
                return Err(Error::InvalidGluing(format!("{a_vertices:?} -> {b_vertices:?} preserves orientation")));
            }
        }
        Ok(Self::new(FaceRef::new(a_polyhedron, fa), FaceRef::new(b_polyhedron, fb), rot))
    }
}

/// One side of a glued face as seen from the face table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Glue {
    /// Global index `polyhedron * F + face` of the partner.
    pub partner: usize,
    pub rot: u8,
}

/// A complete face pairing of `count` copies of one polyhedron kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingComplex {
    kind: PolyhedronKind,
    count: usize,
    pairings: Vec<FacePairing>,
    table: Vec<Option<Glue>>,
}

impl GluingComplex {
    pub fn new(kind: PolyhedronKind, count: usize, pairings: Vec<FacePairing>) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGluing("a complex needs at least one polyhedron".into()));
        }
        let nf = kind.face_count();
        let total = count * nf;
        let mut table: Vec<Option<Glue>> = vec![None; total];
        let mut normalized = Vec::with_capacity(pairings.len());
        for p in pairings {
            let p = FacePairing::new(p.a, p.b, p.rotation);
            for side in [p.a, p.b] {
                if side.polyhedron >= count || side.face >= nf {
                    return Err(Error::InvalidGluing(format!("face {side} out of range")));
                }
            }
            if p.a == p.b {
                return Err(Error::InvalidGluing(format!("face {} glued to itself", p.a)));
            }
            if p.rotation > 2 {
                return Err(Error::InvalidGluing(format!("rotation {} out of range", p.rotation)));
            }
            let ga = p.a.polyhedron * nf + p.a.face;
            let gb = p.b.polyhedron * nf + p.b.face;
            for g in [ga, gb] {
                if table[g].is_some() {
                    return Err(Error::InvalidGluing(format!("face {}:{} glued more than once", g / nf, g % nf)));
                }
            }
            table[ga] = Some(Glue { partner: gb, rot: p.rotation });
            table[gb] = Some(Glue { partner: ga, rot: p.rotation });
            normalized.push(p);
        }
        if let Some(g) = table.iter().position(|s| s.is_none()) {
            return Err(Error::InvalidGluing(format!("face {}:{} is unglued", g / nf, g % nf)));
        }
        normalized.sort();
        Ok(Self { kind, count, pairings: normalized, table })
    }

    pub(crate) fn from_table(kind: PolyhedronKind, count: usize, table: &[Option<Glue>]) -> Self {
        let nf = kind.face_count();
        let pairings = table
            .iter()
            .enumerate()
            .filter_map(|(g, glue)| {
                let glue = glue.expect("complete table");
                (g < glue.partner).then(|| {
                    FacePairing::new(
                        FaceRef::new(g / nf, g % nf),
                        FaceRef::new(glue.partner / nf, glue.partner % nf),
                        glue.rot,
                    )
                })
            })
            .collect();
        let mut pairings: Vec<FacePairing> = pairings;
        pairings.sort();
        Self { kind, count, pairings, table: table.to_vec() }
    }

    pub fn kind(&self) -> PolyhedronKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn pairings(&self) -> &[FacePairing] {
        &self.pairings
    }

    pub fn template(&self) -> &'static PolyhedronTemplate {
        self.kind.template()
    }

    pub(crate) fn table(&self) -> &[Option<Glue>] {
        &self.table
    }

    /// Partner of `face` and the pairing rotation.
    pub fn partner(&self, face: FaceRef) -> (FaceRef, u8) {
        let nf = self.kind.face_count();
        let glue = self.table[face.polyhedron * nf + face.face].expect("complete table");
        (FaceRef::new(glue.partner / nf, glue.partner % nf), glue.rot)
    }

    /// Index into [`Self::pairings`] of the pairing containing `face`, and
    /// whether `face` is its `a` side.
    pub fn pairing_of(&self, face: FaceRef) -> (usize, bool) {
        let (other, _) = self.partner(face);
        let (a, b) = if face < other { (face, other) } else { (other, face) };
        let idx = self.pairings.binary_search_by(|p| (p.a, p.b).cmp(&(a, b))).expect("pairing present");
        (idx, face == a)
    }

    /// Applies a relabeling: polyhedron `p` becomes `perm[p]` and is moved by
    /// template rotation `rotations[p]`.
    pub fn relabel(&self, perm: &[usize], rotations: &[usize]) -> GluingComplex {
        let t = self.template();
        let map_side = |side: FaceRef| {
            let (face, shift) = t.rotation(rotations[side.polyhedron]).face(side.face);
            (FaceRef::new(perm[side.polyhedron], face), shift)
        };
        let pairings = self
            .pairings
            .iter()
            .map(|p| {
                let (a, sa) = map_side(p.a);
                let (b, sb) = map_side(p.b);
                FacePairing::new(a, b, (p.rotation + sa + sb) % 3)
            })
            .collect();
        GluingComplex::new(self.kind, self.count, pairings).expect("relabeling preserves validity")
    }
}

/// An edge embedding: edge `edge` of polyhedron `polyhedron`, with `forward`
/// recording whether its template direction (smaller vertex first) agrees
/// with the class's reference direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeMember {
    pub polyhedron: usize,
    pub edge: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub members: Vec<EdgeMember>,
    /// False when the closure identifies some embedding with itself reversed.
    pub holonomy_ok: bool,
}

impl EdgeClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Edge classes: the disjoint-set closure of all edge identifications made
/// by the pairings. Ordered by smallest member.
pub fn edge_classes(complex: &GluingComplex) -> Vec<EdgeClass> {
    let t = complex.template();
    let ne = t.edge_count();
    let mut dsu = DisjointSet::new(complex.count * ne);
    let mut conflicted = Vec::new();
    for p in &complex.pairings {
        let fa = t.faces[p.a.face];
        let fb = t.faces[p.b.face];
        for i in 0..3 {
            let (u, v) = (fa[i], fa[(i + 1) % 3]);
            let (u2, v2) = (fb[partner_corner(p.rotation, i)], fb[partner_corner(p.rotation, (i + 1) % 3)]);
            let ea = t.edge_between(u, v).unwrap();
            let eb = t.edge_between(u2, v2).unwrap();
            let odd = (u < v) != (u2 < v2);
            let x = p.a.polyhedron * ne + ea;
            let y = p.b.polyhedron * ne + eb;
            if dsu.union_with_parity(x, y, odd).is_err() {
                conflicted.push(x);
            }
        }
    }
    let mut bad_roots: Vec<usize> = conflicted.iter().map(|&x| dsu.find(x)).collect();
    bad_roots.sort_unstable();
    dsu.groups()
        .into_iter()
        .map(|group| {
            let root = dsu.find(group[0]);
            let members = group
                .iter()
                .map(|&x| {
                    let (_, parity) = dsu.find_with_parity(x);
                    let (_, p0) = dsu.find_with_parity(group[0]);
                    EdgeMember { polyhedron: x / ne, edge: x % ne, forward: parity == p0 }
                })
                .collect();
            EdgeClass { members, holonomy_ok: bad_roots.binary_search(&root).is_err() }
        })
        .collect()
}

/// One step of a walk around an edge: the embedding left and the face it was
/// left through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WalkStep {
    pub polyhedron: usize,
    pub edge: usize,
    pub exit_face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct EdgeWalk {
    pub steps: Vec<WalkStep>,
    pub closed: bool,
    /// Only meaningful for closed walks.
    pub holonomy_ok: bool,
}

/// Walks around edge `edge` of polyhedron `polyhedron`, leaving through
/// `edge_faces(edge)[side]`, until the walk returns to its start or reaches
/// an unglued face.
pub(crate) fn walk_edge(
    t: &PolyhedronTemplate,
    table: &[Option<Glue>],
    polyhedron: usize,
    edge: usize,
    side: usize,
) -> EdgeWalk {
    let nf = t.face_count();
    let start = (polyhedron, edge, side);
    let (mut p, mut e, mut k) = start;
    let mut forward = true;
    let mut steps = Vec::new();
    loop {
        let f = t.edge_faces(e)[k];
        steps.push(WalkStep { polyhedron: p, edge: e, exit_face: f });
        let Some(glue) = table[p * nf + f] else {
            return EdgeWalk { steps, closed: false, holonomy_ok: true };
        };
        let [u, v] = t.edges[e];
        let face = t.faces[f];
        let (q, g) = (glue.partner / nf, glue.partner % nf);
        let gface = t.faces[g];
        let u2 = gface[partner_corner(glue.rot, t.corner_of(f, u).unwrap())];
        let v2 = gface[partner_corner(glue.rot, t.corner_of(f, v).unwrap())];
        debug_assert!(face.contains(&u) && face.contains(&v));
        let e2 = t.edge_between(u2, v2).expect("faces map edges to edges");
        if u2 > v2 {
            forward = !forward;
        }
        let faces2 = t.edge_faces(e2);
        let k2 = if faces2[0] == g { 1 } else { 0 };
        (p, e, k) = (q, e2, k2);
        if (p, e, k) == start {
            return EdgeWalk { steps, closed: true, holonomy_ok: forward };
        }
    }
}

/// Local feasibility of the edge through embedding (`polyhedron`, `edge`) in
/// a partial gluing: a closed cycle must have exactly the target valence,
/// no repeated embedding and trivial holonomy; an open chain must not
/// already exceed the target.
pub(crate) fn edge_feasible(t: &PolyhedronTemplate, table: &[Option<Glue>], polyhedron: usize, edge: usize) -> bool {
    let target = t.edge_valence_target;
    let fwd = walk_edge(t, table, polyhedron, edge, 0);
    if fwd.closed {
        if fwd.steps.len() != target || !fwd.holonomy_ok {
            return false;
        }
        let mut seen: Vec<(usize, usize)> = fwd.steps.iter().map(|s| (s.polyhedron, s.edge)).collect();
        seen.sort_unstable();
        seen.dedup();
        return seen.len() == target;
    }
    let back = walk_edge(t, table, polyhedron, edge, 1);
    let mut seen: Vec<(usize, usize)> =
        fwd.steps.iter().chain(back.steps.iter()).map(|s| (s.polyhedron, s.edge)).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len() <= target
}

/// The closed surface linking one vertex class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspLink {
    /// `(polyhedron, vertex)` pairs, sorted.
    pub vertices: Vec<(usize, usize)>,
    pub link_euler: i64,
    pub link_orientable: bool,
    /// False when some side of a link polygon has no partner.
    pub closed: bool,
}

impl CuspLink {
    pub fn is_torus(&self) -> bool {
        self.closed && self.link_orientable && self.link_euler == 0
    }
}

/// Vertex classes with their link surfaces, ordered by smallest member.
///
/// Each vertex contributes one polygon (a square for the octahedron, a
/// triangle for the tetrahedron) whose sides are the faces around it and
/// whose corners are the incident edge ends.
pub fn vertex_links(complex: &GluingComplex) -> Vec<CuspLink> {
    let t = complex.template();
    let nv = t.vertex_count();
    let ne = t.edge_count();
    let nf = t.face_count();
    let n = complex.count;

    let mut verts = DisjointSet::new(n * nv);
    // Edge ends: (polyhedron, edge, end) with end 0 at the smaller vertex.
    let mut ends = DisjointSet::new(n * ne * 2);
    // Link polygons, with parity recording relative orientation.
    let mut polys = DisjointSet::new(n * nv);
    let mut non_orientable_roots = Vec::new();

    let end_index = |p: usize, u: usize, v: usize| {
        let e = t.edge_between(u, v).unwrap();
        (p * ne + e) * 2 + usize::from(u > v)
    };

    for g in 0..n * nf {
        let Some(glue) = complex.table[g] else { continue };
        if g > glue.partner {
            continue;
        }
        let (p, f) = (g / nf, g % nf);
        let (q, h) = (glue.partner / nf, glue.partner % nf);
        let fa = t.faces[f];
        let fb = t.faces[h];
        for i in 0..3 {
            let j = partner_corner(glue.rot, i);
            verts.union(p * nv + fa[i], q * nv + fb[j]);
            // The edge end at corner i heading to corner i+1.
            let i1 = (i + 1) % 3;
            let j1 = partner_corner(glue.rot, i1);
            ends.union(end_index(p, fa[i], fa[i1]), end_index(q, fb[j], fb[j1]));
            ends.union(end_index(p, fa[i1], fa[i]), end_index(q, fb[j1], fb[j]));
            // Side of the polygon at fa[i] runs from edge (fa[i], fa[i+1])
            // to edge (fa[i], fa[i+2]); compare with the partner's side.
            let i2 = (i + 2) % 3;
            let w1 = fb[partner_corner(glue.rot, i1)];
            let w2 = fb[partner_corner(glue.rot, i2)];
            let same_direction = (w1, w2) == (fb[(j + 1) % 3], fb[(j + 2) % 3]);
            if polys.union_with_parity(p * nv + fa[i], q * nv + fb[j], same_direction).is_err() {
                non_orientable_roots.push(p * nv + fa[i]);
            }
        }
    }

    let mut bad: Vec<usize> = non_orientable_roots.iter().map(|&x| verts.find(x)).collect();
    bad.sort_unstable();

    let mut end_classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..n {
        for (e, &[u, v]) in t.edges.iter().enumerate() {
            for (end, vertex) in [(0usize, u), (1, v)] {
                let root = ends.find((p * ne + e) * 2 + end);
                end_classes.entry(verts.find(p * nv + vertex)).or_default().push(root);
            }
        }
    }

    verts
        .groups()
        .into_iter()
        .map(|group| {
            let root = verts.find(group[0]);
            let faces_f = group.len() as i64;
            let mut sides = 0i64;
            let mut closed = true;
            for &x in &group {
                let (p, v) = (x / nv, x % nv);
                for &f in t.faces_around(v) {
                    sides += 1;
                    if complex.table[p * nf + f].is_none() {
                        closed = false;
                    }
                }
            }
            let mut link_vertices = end_classes.remove(&root).unwrap_or_default();
            link_vertices.sort_unstable();
            link_vertices.dedup();
            let euler = link_vertices.len() as i64 - sides / 2 + faces_f;
            CuspLink {
                vertices: group.iter().map(|&x| (x / nv, x % nv)).collect(),
                link_euler: euler,
                link_orientable: bad.binary_search(&root).is_err(),
                closed,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub edge_valences_ok: bool,
    pub edge_holonomy_ok: bool,
    pub links_are_tori: bool,
    pub oriented_ok: bool,
    pub connected: bool,
    pub cusp_count: usize,
    /// Sizes of the vertex classes, ascending.
    pub cusp_vertex_distribution: Vec<usize>,
}

impl ValidityReport {
    pub fn accepted(&self) -> bool {
        self.edge_valences_ok && self.edge_holonomy_ok && self.links_are_tori && self.oriented_ok && self.connected
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags = [
            (self.edge_valences_ok, "edge valence"),
            (self.edge_holonomy_ok, "edge holonomy"),
            (self.links_are_tori, "cusp links"),
            (self.oriented_ok, "orientation"),
            (self.connected, "connectivity"),
        ];
        for (ok, name) in flags {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Renders a vertex distribution as `1,1,2,8`.
pub fn render_distribution(distribution: &[usize]) -> String {
    distribution.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// The image of `a`'s outward corner order must run against `b`'s.
fn orientation_reversing(t: &PolyhedronTemplate, p: &FacePairing) -> bool {
    let fb = t.faces[p.b.face];
    let image = [0, 1, 2].map(|i| fb[partner_corner(p.rotation, i)]);
    (0..3).any(|s| (0..3).all(|i| image[i] == fb[(s + 3 - i) % 3]))
}

fn is_connected(complex: &GluingComplex) -> bool {
    let mut dsu = DisjointSet::new(complex.count);
    for p in &complex.pairings {
        dsu.union(p.a.polyhedron, p.b.polyhedron);
    }
    let root = dsu.find(0);
    (0..complex.count).all(|p| dsu.find(p) == root)
}

pub fn validate(complex: &GluingComplex) -> ValidityReport {
    let t = complex.template();
    let classes = edge_classes(complex);
    let links = vertex_links(complex);
    let oriented_ok = complex.pairings.iter().all(|p| p.a != p.b && orientation_reversing(t, p));
    let mut distribution: Vec<usize> = links.iter().map(|l| l.vertices.len()).collect();
    distribution.sort_unstable();
    ValidityReport {
        edge_valences_ok: classes.iter().all(|c| c.size() == t.edge_valence_target),
        edge_holonomy_ok: classes.iter().all(|c| c.holonomy_ok),
        links_are_tori: links.iter().all(CuspLink::is_torus),
        oriented_ok,
        connected: is_connected(complex),
        cusp_count: links.len(),
        cusp_vertex_distribution: distribution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oct() -> PolyhedronKind {
        PolyhedronKind::Octahedron
    }

    #[test]
    fn rejects_incomplete_and_duplicate() {
        let p = FacePairing::new(FaceRef::new(0, 0), FaceRef::new(0, 7), 0);
        assert!(GluingComplex::new(oct(), 1, vec![p]).is_err());
        let q = FacePairing::new(FaceRef::new(0, 0), FaceRef::new(0, 0), 0);
        assert!(matches!(GluingComplex::new(oct(), 1, vec![q]), Err(Error::InvalidGluing(_))));
        assert!(GluingComplex::new(oct(), 0, vec![]).is_err());
    }

    #[test]
    fn from_vertices_checks_orientation() {
        // Face (0,1,2) to face (0,2,4) fixing 0, sending 1 -> 4 and 2 -> 2 is a
        // reflection across the shared edge; it reverses orientation.
        assert!(FacePairing::from_vertices(oct(), 0, [0, 1, 2], 0, [0, 4, 2]).is_ok());
        assert!(FacePairing::from_vertices(oct(), 0, [0, 1, 2], 0, [0, 2, 4]).is_err());
        assert!(FacePairing::from_vertices(oct(), 0, [0, 1, 5], 0, [0, 2, 4]).is_err());
    }

    #[test]
    fn partner_corner_is_involutive() {
        for r in 0..3 {
            for i in 0..3 {
                assert_eq!(partner_corner(r, partner_corner(r, i)), i);
            }
        }
    }

    #[test]
    fn folded_adjacent_faces_break_valence() {
        // Two adjacent faces around vertex 0 glued by the fold across their
        // shared edge; that edge is then glued to nothing else.
        let t = oct().template();
        let around = t.faces_around(0);
        let (f, g) = (around[0], around[1]);
        let shared: Vec<usize> = t.faces[f].iter().copied().filter(|v| t.faces[g].contains(v)).collect();
        let w = shared.iter().copied().find(|&v| v != 0).unwrap();
        let other_f = t.faces[f].iter().copied().find(|v| !shared.contains(v)).unwrap();
        let other_g = t.faces[g].iter().copied().find(|v| !shared.contains(v)).unwrap();
        let fold = FacePairing::from_vertices(oct(), 0, [0, w, other_f], 0, [0, w, other_g]).unwrap();
        let mut rest: Vec<usize> = (0..8).filter(|&x| x != f && x != g).collect();
        let mut pairings = vec![fold];
        while let Some(a) = rest.pop() {
            let b = rest.remove(0);
            pairings.push(FacePairing::new(FaceRef::new(0, a), FaceRef::new(0, b), 0));
        }
        let c = GluingComplex::new(oct(), 1, pairings).unwrap();
        let report = validate(&c);
        assert!(!report.edge_valences_ok);
        assert!(!report.accepted());
        assert!(edge_classes(&c).iter().any(|cl| cl.size() == 1));
    }

    #[test]
    fn relabel_identity_is_noop() {
        let pairings =
            (0..4).map(|i| FacePairing::new(FaceRef::new(0, 2 * i), FaceRef::new(0, 2 * i + 1), 1)).collect();
        let c = GluingComplex::new(oct(), 1, pairings).unwrap();
        assert_eq!(c.relabel(&[0], &[0]), c);
    }
}
