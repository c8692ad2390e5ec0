//! The network of a dissection: one node per maximal horizontal segment, one
//! branch per element joining the segments through its top and bottom edges,
//! and a battery branch joining the top and bottom sides.

use std::collections::BTreeMap;

use crate::dissection::Dissection;
use crate::embedding::{EmbeddingError, PlanarEmbedding};

/// Builds the completed network; returns it with the battery branch index.
/// Segments touching at a point (a cross) merge into one node.
pub fn network_of(d: &Dissection) -> Result<(PlanarEmbedding, usize), EmbeddingError> {
    // Intervals on each horizontal line, then merged into segments.
    let mut lines: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for e in d.elements() {
        lines.entry(e.y).or_default().push((e.x, e.right()));
        lines.entry(e.bottom()).or_default().push((e.x, e.right()));
    }
    let mut segments: Vec<(u64, u64, u64)> = Vec::new();
    for (y, mut iv) in lines {
        iv.sort_unstable();
        let mut cur = iv[0];
        for &(a, b) in &iv[1..] {
            if a <= cur.1 {
                cur.1 = cur.1.max(b);
            } else {
                segments.push((y, cur.0, cur.1));
                cur = (a, b);
            }
        }
        segments.push((y, cur.0, cur.1));
    }
    let node = |y: u64, x0: u64, x1: u64| {
        segments.iter().position(|&(sy, a, b)| sy == y && a <= x0 && x1 <= b).expect("segment exists")
    };
    let n = segments.len();
    let mut edges = Vec::with_capacity(d.order() + 1);
    // Per node: (x, dart) for elements hanging below and standing above.
    let mut below: Vec<Vec<(u64, usize)>> = vec![Vec::new(); n];
    let mut above: Vec<Vec<(u64, usize)>> = vec![Vec::new(); n];
    for e in d.elements() {
        let top = node(e.y, e.x, e.right());
        let bottom = node(e.bottom(), e.x, e.right());
        let k = edges.len();
        edges.push((top, bottom));
        below[top].push((e.x, 2 * k));
        above[bottom].push((e.x, 2 * k + 1));
    }
    let t = node(0, 0, d.width());
    let b = node(d.height(), 0, d.width());
    let battery = edges.len();
    edges.push((b, t));
    // Clockwise on screen: elements above left to right, then elements
    // below right to left; the battery runs round the right-hand side.
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        above[v].sort_unstable();
        below[v].sort_unstable();
        let r = &mut rotation[v];
        r.extend(above[v].iter().map(|&(_, dart)| dart));
        if v == b {
            r.push(2 * battery);
        }
        if v == t {
            r.push(2 * battery + 1);
        }
        r.extend(below[v].iter().rev().map(|&(_, dart)| dart));
    }
    Ok((PlanarEmbedding::from_darts(n, edges, rotation)?, battery))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{parse_bouwkampcode, place_elements};
    use crate::network::{analyze, Network, RowOutcome};

    fn solved(code: &str) -> (Dissection, Dissection) {
        let d = place_elements(&parse_bouwkampcode(code).unwrap()).unwrap();
        let (e, p) = network_of(&d).unwrap();
        assert_eq!(e.m(), d.order() + 1);
        let rows = analyze(&Network::from_embedding(&e)).unwrap().extract(&e).unwrap();
        let RowOutcome::Rectangle { dissection, .. } = rows[p].outcome.clone() else { panic!("battery row") };
        (d, dissection)
    }

    #[test]
    fn battery_row_reproduces_rectangle() {
        let (d, back) = solved("(18,15)(7,8)(14,4)(10,1)(9)");
        let mut a: Vec<u64> = d.sizes().collect();
        let mut b: Vec<u64> = back.sizes().collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!((back.width() + back.height()), 65);
    }

    #[test]
    fn equal_squares_give_parallel_branches() {
        let d = place_elements(&parse_bouwkampcode("(1,1)(1,1)").unwrap()).unwrap();
        let (e, _) = network_of(&d).unwrap();
        assert_eq!((e.n(), e.m()), (3, 5));
        assert!(e.has_multi_edges());
    }
}
