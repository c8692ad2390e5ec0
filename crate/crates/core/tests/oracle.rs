//! Counts and facts derived by exhaustive search over small graph classes.

use std::collections::BTreeSet;

use squaring::{
    analyze, brute_generate, canonicalize, classify, emit_code, place_elements, BouwkampCode, Dissection, Network,
    PlanarEmbedding, RowOutcome, Structure, TablecodeLine,
};

/// Every generated class with at most 15 edges, plus duals: all c-nets of
/// rectangles up to order 14 (one side of each dual pair has at most 8
/// vertices).
fn rectangles() -> Vec<(Dissection, bool)> {
    let mut out = Vec::new();
    for g in brute_generate(9, 15).unwrap() {
        for e in [g.clone(), g.dual()] {
            out.extend(rows(&e));
        }
    }
    out
}

fn rows(e: &PlanarEmbedding) -> Vec<(Dissection, bool)> {
    let a = analyze(&Network::from_embedding(e)).unwrap();
    a.extract(e)
        .unwrap()
        .into_iter()
        .filter_map(|x| match x.outcome {
            RowOutcome::Rectangle { dissection, cross } => Some((dissection, cross)),
            _ => None,
        })
        .collect()
}

#[test]
fn small_classes() {
    let all = rectangles();
    let mut simple = vec![BTreeSet::new(); 15];
    let mut compound = vec![BTreeSet::new(); 15];
    for (d, _) in &all {
        assert!(d.validate().ok());
        if !d.is_perfect() {
            continue;
        }
        assert!(d.order() >= 9, "perfect rectangle of order {}", d.order());
        assert!(!d.is_square(), "perfect square of order {}", d.order());
        let key = canonicalize(d).unwrap().tablecode;
        match classify(d).unwrap().structure {
            Structure::Simple => simple[d.order()].insert(key),
            Structure::Compound => compound[d.order()].insert(key),
        };
    }
    let counts: Vec<usize> = (9..=14).map(|o| simple[o].len()).collect();
    assert_eq!(counts, vec![2, 6, 22, 67, 213, 744]);
    // Compound perfect rectangles first appear at order 13: a scaled copy of
    // the 33x32 with four squares round it.
    assert!((9..13).all(|o| compound[o].is_empty()));
    let c13: Vec<String> = compound[13].iter().map(|t| t.to_string()).collect();
    assert_eq!(c13, vec!["13 261 259 131 130 1 129 72 60 28 32 56 16 40 4 36".to_string()]);
    assert_eq!(compound[14].len(), 9);
}

/// Splitting a group at an interior element boundary gives the other
/// spelling of a cross; both must place to the same tiling and tablecode.
#[test]
fn crossed_codes_share_a_tablecode() {
    let mut crossed = 0;
    let mut variants = 0;
    for (d, cross) in rectangles() {
        if !cross {
            continue;
        }
        crossed += 1;
        let code = emit_code(&d);
        let mut found = false;
        for (gi, g) in code.groups.iter().enumerate() {
            for cut in 1..g.len() {
                let mut groups = code.groups.clone();
                let right = groups[gi].split_off(cut);
                groups.insert(gi + 1, right);
                let Ok(split) = place_elements(&BouwkampCode::new(groups)) else { continue };
                if split == d.reading_order() {
                    assert_eq!(TablecodeLine::of(&split), TablecodeLine::of(&d));
                    found = true;
                    variants += 1;
                }
            }
        }
        assert!(found, "no split spelling for crossed {}", TablecodeLine::of(&d));
    }
    assert!(crossed > 100 && variants >= crossed, "{crossed} {variants}");
}
