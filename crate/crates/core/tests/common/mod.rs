//! Test-side oracles that share no code with the library beyond the
//! polyhedron templates and the pairing data itself.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use cusp_census::{GluingComplex, PolyhedronTemplate};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Signed union-find: `sign[x]` is the orientation of `x` relative to its parent.
struct SignedSets {
    parent: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sign: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        let p = self.parent[x];
        if p == x {
            return (x, 1);
        }
        let (root, s) = self.find(p);
        self.parent[x] = root;
        self.sign[x] *= s;
        (root, self.sign[x])
    }

    /// Records `x = s·y`. Returns false if that contradicts earlier records.
    fn join(&mut self, x: usize, y: usize, s: i8) -> bool {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            return sx == s * sy;
        }
        self.parent[rx] = ry;
        self.sign[rx] = sx * s * sy;
        true
    }
}

/// Cells of the truncated complex: every ideal vertex is cut off, so each
/// polyhedron edge end becomes a 0-cell, and each face corner a 1-cell.
struct Cells {
    faces: Vec<[usize; 3]>,
    edge_index: HashMap<(usize, usize), usize>,
    n_edges: usize,
    nv: usize,
}

impl Cells {
    fn new(t: &PolyhedronTemplate) -> Self {
        let mut edge_index = HashMap::new();
        let mut n_edges = 0;
        for f in &t.faces {
            for i in 0..3 {
                let (a, b) = (f[i].min(f[(i + 1) % 3]), f[i].max(f[(i + 1) % 3]));
                if let std::collections::hash_map::Entry::Vacant(e) = edge_index.entry((a, b)) {
                    e.insert(n_edges);
                    n_edges += 1;
                }
            }
        }
        Self { faces: t.faces.clone(), edge_index, n_edges, nv: vertex_total(t) }
    }

    fn edge(&self, a: usize, b: usize) -> usize {
        self.edge_index[&(a.min(b), a.max(b))]
    }

    /// 0-cell: end of edge {v, w} at v.
    fn end(&self, p: usize, v: usize, w: usize) -> usize {
        p * self.n_edges * 2 + self.edge(v, w) * 2 + usize::from(v > w)
    }

    /// Truncated edge, oriented from the smaller vertex's end.
    fn tedge(&self, p: usize, a: usize, b: usize) -> (usize, i8) {
        (p * self.n_edges + self.edge(a, b), if a < b { 1 } else { -1 })
    }

    /// Corner arc of face `f` at vertex `v`. With `(v, u1, u2)` the face's
    /// outward cyclic order, it runs from the end towards `u2` to the end
    /// towards `u1`.
    fn corner(&self, count: usize, p: usize, f: usize, v: usize) -> usize {
        let i = self.faces[f].iter().position(|&x| x == v).unwrap();
        count * self.n_edges + (p * self.faces.len() + f) * 3 + i
    }

    fn cyclic_from(&self, f: usize, v: usize) -> [usize; 3] {
        let face = self.faces[f];
        let i = face.iter().position(|&x| x == v).unwrap();
        [face[i], face[(i + 1) % 3], face[(i + 2) % 3]]
    }
}

fn vertex_total(t: &PolyhedronTemplate) -> usize {
    t.faces.iter().flatten().copied().max().unwrap() + 1
}

/// Integer diagonalization by row and column operations. Returns the
/// nonzero diagonal entries (not yet in divisibility order).
fn diagonalize(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // pick any nonzero entry with minimal absolute value
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        loop {
            let p = m[r0][c0];
            let mut dirty = false;
            for i in r0 + 1..rows {
                let q = m[i][c0] / p;
                if q != 0 {
                    for j in c0..cols {
                        m[i][j] = m[i][j].checked_sub(q.checked_mul(m[r0][j]).unwrap()).unwrap();
                    }
                }
                if m[i][c0] != 0 {
                    dirty = true;
                }
            }
            for j in c0 + 1..cols {
                let q = m[r0][j] / p;
                if q != 0 {
                    for i in r0..rows {
                        m[i][j] = m[i][j].checked_sub(q.checked_mul(m[i][c0]).unwrap()).unwrap();
                    }
                }
                if m[r0][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remainder into the pivot position
            let mut best = (r0, c0);
            for i in r0..rows {
                if m[i][c0] != 0 && m[i][c0].abs() < m[best.0][best.1].abs() {
                    best = (i, c0);
                }
            }
            for j in c0..cols {
                if m[r0][j] != 0 && m[r0][j].abs() < m[best.0][best.1].abs() {
                    best = (r0, j);
                }
            }
            m.swap(r0, best.0);
            for row in m.iter_mut() {
                row.swap(c0, best.1);
            }
        }
        out.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Diagonal entries rewritten as invariant factors `d₁ | d₂ | …`.
pub fn invariant_factors(mut d: Vec<i128>) -> Vec<i128> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// `(rank, torsion)` of `H₁` computed from the cellular chain complex of the
/// truncated complex, with its own exact integer reduction.
pub fn chain_complex_h1(complex: &GluingComplex) -> (usize, Vec<i128>) {
    let t = complex.template();
    let n = complex.count();
    let cells = Cells::new(t);
    let nf = t.faces.len();
    let n0 = n * cells.n_edges * 2;
    let n1 = n * cells.n_edges + n * nf * 3;
    let n2 = n * nf + n * cells.nv;

    // Boundaries before identification.
    let mut d1: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n1];
    for p in 0..n {
        for (&(a, b), &e) in &cells.edge_index {
            d1[p * cells.n_edges + e] = vec![(cells.end(p, b, a), 1), (cells.end(p, a, b), -1)];
        }
        for f in 0..nf {
            for &v in &t.faces[f] {
                let [_, u1, u2] = cells.cyclic_from(f, v);
                d1[cells.corner(n, p, f, v)] = vec![(cells.end(p, v, u1), 1), (cells.end(p, v, u2), -1)];
            }
        }
    }
    let mut d2: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n2];
    for p in 0..n {
        for f in 0..nf {
            // hexagon: along each side a -> b, then the corner arc at b
            let mut bd = Vec::new();
            for i in 0..3 {
                let (a, b) = (t.faces[f][i], t.faces[f][(i + 1) % 3]);
                bd.push(cells.tedge(p, a, b));
                bd.push((cells.corner(n, p, f, b), 1));
            }
            d2[p * nf + f] = bd;
        }
        for v in 0..cells.nv {
            d2[n * nf + p * cells.nv + v] =
                (0..nf).filter(|&f| t.faces[f].contains(&v)).map(|f| (cells.corner(n, p, f, v), 1)).collect();
        }
    }

    let mut s0 = SignedSets::new(n0);
    let mut s1 = SignedSets::new(n1);
    let mut s2 = SignedSets::new(n2);
    for pairing in complex.pairings() {
        let (pa, fa, pb, fb) = (pairing.a.polyhedron, pairing.a.face, pairing.b.polyhedron, pairing.b.face);
        // corner i of face a lands on corner (rot - i) mod 3 of face b
        let phi = |v: usize| {
            let i = t.faces[fa].iter().position(|&x| x == v).unwrap();
            t.faces[fb][(3 + pairing.rotation as usize - i) % 3]
        };
        let fav = t.faces[fa];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    s0.join(cells.end(pa, fav[i], fav[j]), cells.end(pb, phi(fav[i]), phi(fav[j])), 1);
                }
            }
            let (a, b) = (fav[i], fav[(i + 1) % 3]);
            let (ea, sa) = cells.tedge(pa, a, b);
            let (eb, sb) = cells.tedge(pb, phi(a), phi(b));
            assert!(s1.join(ea, eb, sa * sb), "edge orientation conflict");
            let v = fav[i];
            let [_, u1, _] = cells.cyclic_from(fa, v);
            let [_, w1, _] = cells.cyclic_from(fb, phi(v));
            let s = if phi(u1) == w1 { 1 } else { -1 };
            assert!(s1.join(cells.corner(n, pa, fa, v), cells.corner(n, pb, fb, phi(v)), s), "corner conflict");
        }
        // The hexagon's images must agree up to one global sign.
        let image: HashMap<(usize, i8), ()> = d2[pa * nf + fa]
            .iter()
            .map(|&(c, s)| {
                let (r, rs) = s1.find(c);
                ((r, s * rs), ())
            })
            .collect();
        let target: Vec<(usize, i8)> = d2[pb * nf + fb]
            .iter()
            .map(|&(c, s)| {
                let (r, rs) = s1.find(c);
                (r, s * rs)
            })
            .collect();
        let sign = if target.iter().all(|k| image.contains_key(k)) {
            1
        } else {
            assert!(target.iter().all(|&(r, s)| image.contains_key(&(r, -s))), "hexagons do not match");
            -1
        };
        assert!(s2.join(pa * nf + fa, pb * nf + fb, sign), "face sign conflict");
    }

    let index = |sets: &mut SignedSets, len: usize| {
        let mut map = HashMap::new();
        for x in 0..len {
            let (r, _) = sets.find(x);
            let k = map.len();
            map.entry(r).or_insert(k);
        }
        map
    };
    let idx0 = index(&mut s0, n0);
    let idx1 = index(&mut s1, n1);
    let idx2 = index(&mut s2, n2);

    let reduce = |bd: &[(usize, i8)], sets: &mut SignedSets, idx: &HashMap<usize, usize>| {
        let mut col = vec![0i128; idx.len()];
        for &(c, s) in bd {
            let (r, rs) = sets.find(c);
            col[idx[&r]] += (s * rs) as i128;
        }
        col
    };
    // one representative per quotient cell
    let reps = |sets: &mut SignedSets, len: usize| {
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for x in 0..len {
            let (r, s) = sets.find(x);
            if seen.insert(r, ()).is_none() {
                out.push((x, s));
            }
        }
        out
    };
    let mut m1 = vec![vec![0i128; idx1.len()]; idx0.len()];
    for (x, s) in reps(&mut s1, n1) {
        let (r, _) = s1.find(x);
        let col = reduce(&d1[x], &mut s0, &idx0);
        for (i, v) in col.into_iter().enumerate() {
            m1[i][idx1[&r]] = v * s as i128;
        }
    }
    let mut m2 = vec![vec![0i128; idx2.len()]; idx1.len()];
    for (x, s) in reps(&mut s2, n2) {
        let (r, _) = s2.find(x);
        let col = reduce(&d2[x], &mut s1, &idx1);
        for (i, v) in col.into_iter().enumerate() {
            m2[i][idx2[&r]] = v * s as i128;
        }
    }
    // ∂₁∂₂ = 0
    for i in 0..idx0.len() {
        for j in 0..idx2.len() {
            let v: i128 = (0..idx1.len()).map(|k| m1[i][k] * m2[k][j]).sum();
            assert_eq!(v, 0, "boundary of boundary");
        }
    }
    let rank1 = diagonalize(m1).len();
    let diag2 = diagonalize(m2);
    let rank2 = diag2.len();
    let torsion = invariant_factors(diag2).into_iter().filter(|&d| d > 1).collect();
    (idx1.len() - rank1 - rank2, torsion)
}

/// A random polyhedron relabeling combined with random template rotations.
pub fn random_relabel(complex: &GluingComplex, rng: &mut ChaCha8Rng) -> GluingComplex {
    let mut perm: Vec<usize> = (0..complex.count()).collect();
    perm.shuffle(rng);
    let group = complex.template().rotations.len();
    let rotations: Vec<usize> = (0..complex.count()).map(|_| rng.gen_range(0..group)).collect();
    complex.relabel(&perm, &rotations)
}
