mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{corpus, id};

use squaring::pipeline::{process_graph, EnumerateOptions, Tally};
use squaring::{
    canonicalize, classify, emit_code, enumerate_isomers, filter_class, find_subrectangles, network_of, ClassFilter,
    RecordBody, Structure, Symmetry, TablecodeLine, TypeCode,
};

#[test]
fn every_entry_places_to_its_declared_square() {
    for (r, d) in corpus() {
        assert!(d.validate().ok(), "{}", id(&r));
        assert!(d.is_square() && d.is_perfect(), "{}", id(&r));
        assert_eq!(Some(d.order()), r.meta.order);
        assert_eq!(Some(d.width()), r.meta.width);
        assert_eq!(Some(d.height()), r.meta.height);
        assert!(id(&r).starts_with(&d.width().to_string()));
    }
}

#[test]
fn emitted_code_reproduces_listing() {
    for (r, d) in corpus() {
        let RecordBody::Bouwkamp(code) = &r.body else { panic!("listing is Bouwkampcode") };
        assert_eq!(emit_code(&d).to_string(), code.to_string(), "{}", id(&r));
    }
}

#[test]
fn isomer_counts_and_types_match_listing() {
    for (r, d) in corpus() {
        assert_eq!(Some(enumerate_isomers(&d).unwrap().len()), r.meta.isomer_count, "{}", id(&r));
        let c = classify(&d).unwrap();
        assert_eq!(c.structure, Structure::Compound);
        let want: TypeCode = r.meta.type_code.as_deref().unwrap().parse().unwrap();
        assert_eq!(c.type_code, Some(want), "{}", id(&r));
    }
}

#[test]
fn per_order_totals() {
    let mut entries: BTreeMap<usize, usize> = BTreeMap::new();
    let mut isomers: BTreeMap<usize, usize> = BTreeMap::new();
    for (r, d) in corpus() {
        *entries.entry(d.order()).or_default() += 1;
        *isomers.entry(d.order()).or_default() += r.meta.isomer_count.unwrap();
    }
    assert_eq!(entries.into_iter().collect::<Vec<_>>(), vec![(24, 1), (25, 2), (26, 16), (27, 46), (28, 143)]);
    assert_eq!(isomers.into_iter().collect::<Vec<_>>(), vec![(24, 4), (25, 12), (26, 100), (27, 220), (28, 948)]);
}

#[test]
fn canonical_form_is_idempotent_and_orientation_free() {
    for (r, d) in corpus() {
        let c = canonicalize(&d).unwrap();
        assert_eq!(canonicalize(&c.dissection).unwrap().tablecode, c.tablecode, "{}", id(&r));
        for s in Symmetry::ALL {
            assert_eq!(canonicalize(&d.transform(s)).unwrap().tablecode, c.tablecode, "{} {}", id(&r), s.name());
        }
        for iso in enumerate_isomers(&d).unwrap() {
            assert_eq!(canonicalize(&iso.dissection).unwrap().tablecode, c.tablecode, "{}", id(&r));
        }
    }
}

/// Five listings show an isomer whose padded tablecode is not the highest.
#[test]
fn listings_not_in_canonical_orientation() {
    let off: BTreeSet<String> = corpus()
        .into_iter()
        .filter(|(_, d)| canonicalize(d).unwrap().tablecode != TablecodeLine::of(d))
        .map(|(r, _)| id(&r).to_string())
        .collect();
    let want: BTreeSet<String> = ["550a", "565a", "855a", "1080a", "1137a"].iter().map(|s| s.to_string()).collect();
    assert_eq!(off, want);
}

#[test]
fn gambini_bounds() {
    for (r, d) in corpus() {
        let w = d.width();
        let boundary = d.elements().iter().filter(|e| e.x == 0 || e.y == 0 || e.right() == w || e.bottom() == w);
        assert!(boundary.map(|e| e.size).min().unwrap() >= 5, "{}", id(&r));
        let corner = d.elements().iter().filter(|e| (e.x == 0 || e.right() == w) && (e.y == 0 || e.bottom() == w));
        let corners: Vec<u64> = corner.map(|e| e.size).collect();
        assert_eq!(corners.len(), 4);
        assert!(corners.iter().min().unwrap() >= &9, "{}", id(&r));
    }
}

#[test]
fn subrectangle_examples() {
    let all = corpus();
    let find = |name: &str| all.iter().find(|(r, _)| id(r) == name).unwrap().1.clone();
    let regions = find_subrectangles(&find("175a"));
    assert_eq!(regions.len(), 1);
    assert_eq!(regions[0].members.len(), 13);
    let mut dims = [regions[0].w, regions[0].h];
    dims.sort_unstable();
    assert_eq!(dims, [94, 111]);
    let two: Vec<_> = find_subrectangles(&find("608a")).into_iter().filter(|g| g.maximal).collect();
    assert_eq!(two.len(), 2);
    assert!(two[0].members.iter().all(|m| !two[1].members.contains(m)));
    assert_eq!(enumerate_isomers(&find("1015b")).unwrap().len(), 48);
    assert_eq!(enumerate_isomers(&find("608a")).unwrap().len(), 16);
}

#[test]
fn classification_is_orientation_free() {
    for (r, d) in corpus() {
        let c = classify(&d).unwrap();
        for s in Symmetry::ALL {
            assert_eq!(classify(&d.transform(s)).unwrap(), c, "{}", id(&r));
        }
    }
}

/// Solving the network of each listed square recovers it, and running the
/// enumeration over all of them rebuilds the catalog.
#[test]
fn networks_of_corpus_rebuild_catalog() {
    let opts = EnumerateOptions::default();
    let mut tally = Tally::default();
    for (i, (r, d)) in corpus().into_iter().enumerate() {
        let (e, _) = network_of(&d).unwrap();
        assert_eq!(e.m(), d.order() + 1);
        assert!(filter_class(&e, &ClassFilter::default()), "{}", id(&r));
        assert!(!e.has_separated_multi_edge());
        let want = canonicalize(&d).unwrap().tablecode;
        for g in [e.clone(), e.dual()] {
            let t = process_graph(0, i as u64, &g, &opts).unwrap();
            assert!(t.found.contains_key(&want.key()), "{}", id(&r));
            tally = tally.merge(t);
        }
    }
    let entries = tally.entries().unwrap();
    assert_eq!(entries.len(), 208);
    assert_eq!(tally.stats.distinct_after_dedup, 208);
    assert_eq!(entries.iter().map(|e| e.isomer_count).sum::<usize>(), 4 + 12 + 100 + 220 + 948);
    assert!(tally.stats.compound_perfect >= 2 * 208);
    assert_eq!(tally.stats.rows_solved + tally.stats.crossed_rows, 2 * corpus().iter().map(|(_, d)| d.order() as u64 + 1).sum::<u64>());
}
