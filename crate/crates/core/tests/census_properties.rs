use std::collections::BTreeSet;

use cusp_census::census::render_census_records;
use cusp_census::invariants::{adams_lower_bound, volume};
use cusp_census::{
    canonical_signature, edge_classes, enumerate, enumerate_naive, validate, vertex_links, CensusQuery, PolyhedronKind,
};
use proptest::prelude::*;

const TET: PolyhedronKind = PolyhedronKind::Tetrahedron;
const OCT: PolyhedronKind = PolyhedronKind::Octahedron;

fn small_queries() -> Vec<(PolyhedronKind, usize)> {
    vec![(TET, 1), (TET, 2), (TET, 3), (TET, 4), (OCT, 1), (OCT, 2)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn pruned_equals_naive(which in 0usize..3, jobs in 1usize..=8, filter in proptest::option::of(1usize..=3)) {
        let (kind, n) = [(TET, 1), (TET, 2), (OCT, 1)][which];
        let mut q = CensusQuery::new(kind, n);
        if let Some(c) = filter {
            q = q.with_cusps(c);
        }
        let pruned: Vec<_> = enumerate(&q, jobs).unwrap().into_iter().map(|c| c.signature).collect();
        prop_assert_eq!(pruned, enumerate_naive(&q).unwrap());
    }
}

#[test]
fn naive_golden_counts() {
    assert!(enumerate_naive(&CensusQuery::new(TET, 1)).unwrap().is_empty());
    assert_eq!(enumerate_naive(&CensusQuery::new(TET, 2)).unwrap().len(), 2);
    assert_eq!(enumerate_naive(&CensusQuery::new(OCT, 1)).unwrap().len(), 4);
}

#[test]
fn every_emitted_class_is_sound() {
    for (kind, n) in small_queries() {
        let all = enumerate(&CensusQuery::new(kind, n), 3).unwrap();
        let sigs: Vec<_> = all.iter().map(|c| c.signature.clone()).collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sigs, sorted, "sorted and duplicate-free");
        for class in &all {
            let report = validate(&class.complex);
            assert!(report.accepted(), "{}", class.signature);
            assert_eq!(report, class.report);
            assert_eq!(canonical_signature(&class.complex), class.signature);
        }
        let cusp_counts: BTreeSet<usize> = all.iter().map(|c| c.report.cusp_count).collect();
        for c in cusp_counts {
            let filtered = enumerate(&CensusQuery::new(kind, n).with_cusps(c), 2).unwrap();
            let expected: Vec<_> = all.iter().filter(|x| x.report.cusp_count == c).cloned().collect();
            assert_eq!(filtered, expected);
        }
    }
}

#[test]
fn edge_and_vertex_classes_partition_the_cells() {
    for (kind, n) in small_queries() {
        for class in enumerate(&CensusQuery::new(kind, n), 2).unwrap() {
            let c = &class.complex;
            let mut edges = BTreeSet::new();
            for ec in edge_classes(c) {
                for m in ec.members {
                    assert!(edges.insert((m.polyhedron, m.edge)));
                }
            }
            assert_eq!(edges.len(), n * kind.edge_count());
            let mut vertices = BTreeSet::new();
            for link in vertex_links(c) {
                for v in link.vertices {
                    assert!(vertices.insert(v));
                }
            }
            assert_eq!(vertices.len(), n * kind.vertex_count());
            assert_eq!(class.report.cusp_vertex_distribution.iter().sum::<usize>(), n * kind.vertex_count());
        }
    }
}

#[test]
fn euler_characteristics_vanish() {
    for (kind, n) in small_queries() {
        for class in enumerate(&CensusQuery::new(kind, n), 2).unwrap() {
            let c = &class.complex;
            let edges = edge_classes(c).len();
            assert_eq!(edges * c.template().edge_valence_target, n * kind.edge_count());
            // ideal vertices removed: -E + F - C
            let chi = -(edges as i64) + c.pairings().len() as i64 - n as i64;
            assert_eq!(chi, 0, "{}", class.signature);
            for link in vertex_links(c) {
                assert_eq!(link.link_euler, 0);
                assert!(link.is_torus());
            }
        }
    }
}

#[test]
fn volumes_respect_the_cusp_bound() {
    for (kind, n) in small_queries() {
        for class in enumerate(&CensusQuery::new(kind, n), 2).unwrap() {
            let vol = volume(&class.complex).unwrap();
            assert!(vol >= adams_lower_bound(class.report.cusp_count), "{}", class.signature);
        }
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    for (kind, n) in [(TET, 4), (OCT, 2), (TET, 5)] {
        let q = CensusQuery::new(kind, n);
        let one = render_census_records(&enumerate(&q, 1).unwrap());
        for jobs in [2, 5, 8] {
            assert_eq!(render_census_records(&enumerate(&q, jobs).unwrap()), one);
        }
    }
}

/// Full two-octahedron census by cusp count; frozen from this enumeration.
#[test]
fn two_octahedron_census_by_cusps() {
    let all = enumerate(&CensusQuery::new(OCT, 2), 2).unwrap();
    let count = |c: usize| all.iter().filter(|x| x.report.cusp_count == c).count();
    assert_eq!(all.len(), 34);
    assert_eq!((count(1), count(2), count(3), count(4)), (8, 17, 7, 2));
    assert!(all.iter().all(|x| (1..=4).contains(&x.report.cusp_count)));
}
