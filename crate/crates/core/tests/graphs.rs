use std::collections::{BTreeMap, BTreeSet};

use squaring::planar_code::encode;
use squaring::{
    brute_generate, filter_class, read_planar_code, triangulations, write_planar_code, ClassFilter, Connectivity,
    PlanarEmbedding,
};

fn exactly2() -> ClassFilter {
    ClassFilter::default()
}

fn three() -> ClassFilter {
    ClassFilter { connectivity: Connectivity::Three, ..ClassFilter::default() }
}

/// A plantri-style sample: every generated class up to 8 vertices, written
/// and read back as planar_code.
fn sample() -> Vec<PlanarEmbedding> {
    let graphs = brute_generate(8, 14).unwrap();
    let mut bytes = Vec::new();
    write_planar_code(&mut bytes, &graphs).unwrap();
    let back: Vec<PlanarEmbedding> = read_planar_code(&bytes[..]).collect::<Result<_, _>>().unwrap();
    assert_eq!(back.len(), graphs.len());
    back
}

#[test]
fn exactly_two_connected_cells() {
    let mut cells: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for g in brute_generate(8, 17).unwrap() {
        if filter_class(&g, &exactly2()) && g.n() <= g.f() {
            *cells.entry((g.n(), g.f())).or_default() += 1;
        }
    }
    let want = [((6, 6), 1), ((6, 7), 1), ((7, 7), 3), ((7, 8), 7), ((7, 9), 2), ((8, 8), 35), ((8, 9), 60), ((8, 10), 47), ((8, 11), 12)];
    for (cell, count) in want {
        assert_eq!(cells.get(&cell).copied().unwrap_or(0), count, "{cell:?}");
    }
}

#[test]
fn euler_and_dual_involution() {
    for g in sample() {
        assert_eq!(g.n() as i64 - g.m() as i64 + g.f() as i64, 2);
        let d = g.dual();
        assert_eq!((d.n(), d.m(), d.f()), (g.f(), g.m(), g.n()));
        assert_eq!(d.dual().canonical_code(), g.canonical_code());
    }
}

#[test]
fn generated_classes_are_distinct() {
    let graphs = brute_generate(8, 14).unwrap();
    let codes: BTreeSet<Vec<u8>> = graphs.iter().map(|g| g.canonical_code()).collect();
    assert_eq!(codes.len(), graphs.len());
}

#[test]
fn round_trip_preserves_embedding() {
    for g in sample() {
        let back = read_planar_code(&encode(&g)[..]).next().unwrap().unwrap();
        assert_eq!(back.canonical_code(), g.canonical_code());
    }
}

#[test]
fn filters_are_exclusive() {
    for g in sample() {
        assert!(!(filter_class(&g, &exactly2()) && filter_class(&g, &three())));
    }
    for n in 4..=8 {
        for t in triangulations(n).unwrap() {
            assert_eq!(t.m(), 3 * n - 6);
            assert!(!filter_class(&t, &exactly2()));
        }
    }
}

#[test]
fn degree_two_vertex_fails_min_degree() {
    // A square with one diagonal: vertices 1 and 3 have degree two.
    let g = PlanarEmbedding::from_neighbors(&[vec![1, 2, 3], vec![0, 2], vec![1, 3, 0], vec![0, 2]]).unwrap();
    let any = ClassFilter { connectivity: Connectivity::AtLeast2, ..ClassFilter::default() };
    assert!(!filter_class(&g, &any));
    assert!(filter_class(&g, &ClassFilter { min_degree: 2, ..any }));
}
