//! Canonical signatures.
//!
//! From every seed `(polyhedron, rotation)` the complex is relabeled by a
//! breadth-first walk across its pairings. A polyhedron first reached through
//! face `g` with rotation `r` is given the rotation that sends `g` to face 0
//! and makes the pairing's rotation 0, so the seed fixes the whole labeling.
//! Each face whose partner comes later in the new order contributes a token
//! `(partner label, partner face, rotation)`; the signature is the smallest
//! token string over all seeds. Disconnected complexes get one signature per
//! component, sorted and joined by `+`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::gluing::{FacePairing, FaceRef, GluingComplex};
use crate::polyhedra::PolyhedronKind;

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalSignature(String);

impl CanonicalSignature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Token = [u8; 3];

/// Relabeling reached from one seed, restricted to the seed's component.
fn traverse(complex: &GluingComplex, seed: usize, seed_rotation: usize) -> (Vec<Token>, usize) {
    let t = complex.template();
    let nf = t.face_count();
    let mut label = vec![usize::MAX; complex.count()];
    let mut rotation = vec![0usize; complex.count()];
    let mut order = vec![seed];
    label[seed] = 0;
    rotation[seed] = seed_rotation;
    let mut tokens = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let p = order[k];
        let rot_p = t.rotation(rotation[p]);
        // new face index -> (original face, corner shift)
        let mut by_new = vec![(0usize, 0u8); nf];
        for f in 0..nf {
            let (g, s) = rot_p.face(f);
            by_new[g] = (f, s);
        }
        for (new_face, &(f, s_p)) in by_new.iter().enumerate() {
            let (partner, r) = complex.partner(FaceRef::new(p, f));
            let q = partner.polyhedron;
            if label[q] == usize::MAX {
                label[q] = order.len();
                order.push(q);
                let need = (3 - (r + s_p) % 3) % 3;
                rotation[q] = t.normalizer(partner.face, need);
            }
            let (g_new, s_q) = t.rotation(rotation[q]).face(partner.face);
            let r_new = (r + s_p + s_q) % 3;
            if (label[q], g_new) > (k, new_face) {
                tokens.push([label[q] as u8, g_new as u8, r_new]);
            }
        }
        k += 1;
    }
    (tokens, order.len())
}

fn render_component(kind: PolyhedronKind, size: usize, tokens: &[Token]) -> String {
    let mut s = format!("{}{}:", kind.short_name(), size);
    for tok in tokens {
        for &x in tok {
            s.push(DIGITS[x as usize] as char);
        }
    }
    s
}

fn components(complex: &GluingComplex) -> Vec<Vec<usize>> {
    let mut dsu = DisjointSet::new(complex.count());
    for p in complex.pairings() {
        dsu.union(p.a.polyhedron, p.b.polyhedron);
    }
    dsu.groups()
}

pub fn canonical_signature(complex: &GluingComplex) -> CanonicalSignature {
    let t = complex.template();
    let mut parts: Vec<String> = components(complex)
        .into_iter()
        .map(|members| {
            let best = members
                .iter()
                .flat_map(|&p| (0..t.rotations.len()).map(move |r| (p, r)))
                .map(|(p, r)| traverse(complex, p, r).0)
                .min()
                .expect("component is non-empty");
            render_component(complex.kind(), members.len(), &best)
        })
        .collect();
    parts.sort();
    CanonicalSignature(parts.join("+"))
}

/// The signature together with the complex it decodes to, which is the
/// canonical representative of the isomorphism class.
pub fn canonical_form(complex: &GluingComplex) -> (CanonicalSignature, GluingComplex) {
    let sig = canonical_signature(complex);
    let canonical = complex_from_signature(sig.as_str()).expect("signatures decode");
    (sig, canonical)
}

fn digit(c: u8) -> Option<usize> {
    DIGITS.iter().position(|&d| d == c)
}

/// Rebuilds the canonical complex from a signature string.
pub fn complex_from_signature(signature: &str) -> Result<GluingComplex> {
    let bad = |reason: &str| Error::Signature { signature: signature.to_string(), reason: reason.to_string() };
    let mut kind = None;
    let mut offset = 0;
    let mut pairings = Vec::new();
    for part in signature.split('+') {
        let (head, body) = part.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        if head.len() < 4 {
            return Err(bad("missing kind"));
        }
        let (name, size) = head.split_at(3);
        let k = PolyhedronKind::from_short_name(name).ok_or_else(|| bad("unknown kind"))?;
        if *kind.get_or_insert(k) != k {
            return Err(bad("mixed kinds"));
        }
        let size: usize = size.parse().map_err(|_| bad("bad component size"))?;
        if size == 0 {
            return Err(bad("empty component"));
        }
        let nf = k.face_count();
        let body = body.as_bytes();
        if body.len() % 3 != 0 {
            return Err(bad("truncated token"));
        }
        let mut tokens = body.chunks(3);
        let mut glued = vec![false; size * nf];
        for face in 0..size * nf {
            if glued[face] {
                continue;
            }
            let tok = tokens.next().ok_or_else(|| bad("too few tokens"))?;
            let q = digit(tok[0]).ok_or_else(|| bad("bad digit"))?;
            let g = digit(tok[1]).ok_or_else(|| bad("bad digit"))?;
            let r = digit(tok[2]).ok_or_else(|| bad("bad digit"))?;
            if q >= size || g >= nf || r > 2 {
                return Err(bad("token out of range"));
            }
            let partner = q * nf + g;
            if partner <= face || glued[partner] {
                return Err(bad("token points backwards"));
            }
            glued[face] = true;
            glued[partner] = true;
            pairings.push(FacePairing::new(
                FaceRef::new(offset + face / nf, face % nf),
                FaceRef::new(offset + q, g),
                r as u8,
            ));
        }
        if tokens.next().is_some() {
            return Err(bad("too many tokens"));
        }
        offset += size;
    }
    let kind = kind.ok_or_else(|| bad("empty"))?;
    GluingComplex::new(kind, offset, pairings)
}
