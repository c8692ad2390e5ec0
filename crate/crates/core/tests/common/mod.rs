//! Helpers shared by the integration tests.
#![allow(dead_code)]

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use squaring::fixtures::APPENDIX;
use squaring::{parse_record, record_lines, Dissection, Record};

pub type Edges = Vec<(usize, usize)>;

/// The appendix listing, parsed and placed.
pub fn corpus() -> Vec<(Record, Dissection)> {
    record_lines(APPENDIX)
        .map(|(n, line)| {
            let r = parse_record(line).unwrap_or_else(|e| panic!("line {n}: {e}"));
            let d = r.place().unwrap_or_else(|e| panic!("line {n}: {e}"));
            (r, d)
        })
        .collect()
}

pub fn id(r: &Record) -> &str {
    r.meta.id.as_deref().unwrap()
}

/// Connected simple graphs with up to `max_edges` edges, one per
/// isomorphism class, grown one edge at a time.
pub fn small_graphs(max_edges: usize) -> Vec<(usize, Edges)> {
    let mut level: Vec<(usize, Edges)> = vec![(1, Vec::new())];
    let mut all = level.clone();
    for _ in 0..max_edges {
        let mut next: Vec<(usize, Edges, UnGraph<(), ()>)> = Vec::new();
        for (n, edges) in &level {
            let mut candidates: Vec<(usize, Edges)> = (0..*n).map(|v| (n + 1, with(edges, (v, *n)))).collect();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !edges.contains(&(a, b)) {
                        candidates.push((*n, with(edges, (a, b))));
                    }
                }
            }
            for (cn, ce) in candidates {
                let g = UnGraph::<(), ()>::from_edges(ce.iter().map(|&(a, b)| (a as u32, b as u32)));
                let seen = next.iter().any(|(m, e, h)| *m == cn && e.len() == ce.len() && is_isomorphic(h, &g));
                if !seen {
                    next.push((cn, ce, g));
                }
            }
        }
        level = next.into_iter().map(|(n, e, _)| (n, e)).collect();
        all.extend(level.iter().cloned());
    }
    all
}

fn with(edges: &Edges, e: (usize, usize)) -> Edges {
    let mut out = edges.clone();
    out.push(e);
    out
}

/// Spanning trees by trying every (n-1)-subset of the edges.
pub fn brute_spanning_trees(n: usize, edges: &Edges) -> u64 {
    let m = edges.len();
    let mut count = 0;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &[usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for (k, &(a, b)) in edges.iter().enumerate() {
            if mask & (1 << k) != 0 {
                let (ra, rb) = (root(&parent, a), root(&parent, b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
            }
        }
        count += acyclic as u64;
    }
    count
}

/// Random connected multigraph: a random tree plus up to ten extra edges.
pub fn random_graph(rng: &mut ChaCha8Rng) -> (usize, Edges) {
    let n = rng.gen_range(2..=9);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..rng.gen_range(0..=10) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.push((a.min(b), a.max(b)));
        }
    }
    (n, edges)
}
