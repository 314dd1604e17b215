//! Disjoint sets with an optional parity bit per element relative to its
//! root, used to close edge and vertex identifications.

#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
    /// Parity of the element relative to its parent.
    parity: Vec<bool>,
}

/// Returned by [`DisjointSet::union_with_parity`] when the requested relation
/// contradicts the one already recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConflict;

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n], parity: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find_with_parity(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut node = x;
        while self.parent[node] != node {
            path.push(node);
            node = self.parent[node];
        }
        let root = node;
        // Compress, accumulating parity from the top of the path down.
        let mut acc = false;
        for &n in path.iter().rev() {
            acc ^= self.parity[n];
            self.parity[n] = acc;
            self.parent[n] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.find_with_parity(x).0
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        self.union_with_parity(a, b, false).unwrap_or(false)
    }

    /// Records `parity(a) ^ parity(b) == odd`. Returns whether two sets were
    /// merged.
    pub fn union_with_parity(&mut self, a: usize, b: usize, odd: bool) -> Result<bool, ParityConflict> {
        let (ra, pa) = self.find_with_parity(a);
        let (rb, pb) = self.find_with_parity(b);
        if ra == rb {
            return if pa ^ pb == odd { Ok(false) } else { Err(ParityConflict) };
        }
        let (big, small) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ odd;
        if self.rank[big] == self.rank[small] {
            self.rank[big] = self.rank[big].saturating_add(1);
        }
        Ok(true)
    }

    /// Groups of elements sharing a root, ordered by smallest member; each
    /// group is sorted.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut by_root: Vec<Option<usize>> = vec![None; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            let slot = *by_root[r].get_or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(x);
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_union() {
        let mut d = DisjointSet::new(5);
        assert!(d.union(0, 3));
        assert!(d.union(3, 4));
        assert!(!d.union(0, 4));
        assert_eq!(d.groups(), vec![vec![0, 3, 4], vec![1], vec![2]]);
    }

    #[test]
    fn parity_conflict_detected() {
        let mut d = DisjointSet::new(3);
        d.union_with_parity(0, 1, true).unwrap();
        d.union_with_parity(1, 2, true).unwrap();
        assert_eq!(d.union_with_parity(0, 2, false), Ok(false));
        assert_eq!(d.union_with_parity(0, 2, true), Err(ParityConflict));
        let (_, p0) = d.find_with_parity(0);
        let (_, p1) = d.find_with_parity(1);
        assert!(p0 ^ p1);
    }
}
