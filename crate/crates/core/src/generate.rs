//! Exhaustive small-scale generator of embedded planar graphs.
//!
//! Triangulations are grown from the tetrahedron by vertex splitting; edges
//! are then deleted one at a time, keeping 2-connected graphs of minimum
//! degree three. Isomorphs are rejected by canonical embedding code.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embedding::{twin, PlanarEmbedding};

/// Largest vertex count the generator accepts.
pub const MAX_VERTICES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("resource limit: at most {MAX_VERTICES} vertices (asked for {0})")]
    ResourceLimit(usize),
}

fn tetrahedron() -> PlanarEmbedding {
    PlanarEmbedding::from_neighbors(&[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]])
        .expect("tetrahedron")
}

/// Splits `v` along the neighbors at rotation positions `i < j`: the arc
/// `i..=j` stays on `v`, the rest moves to a new vertex, and both ends of the
/// arc gain an edge to it.
fn split(e: &PlanarEmbedding, v: usize, i: usize, j: usize) -> Option<PlanarEmbedding> {
    let mut nb = e.neighbors();
    let deg = nb[v].len();
    let w = nb.len();
    let (a, b) = (nb[v][i], nb[v][j]);
    let kept: Vec<usize> = nb[v][i..=j].to_vec();
    let moved: Vec<usize> = (j..=i + deg).map(|k| nb[v][k % deg]).collect();
    for &x in &moved[1..moved.len() - 1] {
        for y in nb[x].iter_mut().filter(|y| **y == v) {
            *y = w;
        }
    }
    nb[v] = kept;
    nb[v].push(w);
    let mut wl = moved;
    wl.push(v);
    nb.push(wl);
    // In the ends' rotations the new vertex sits on the side of the moved arc.
    let attach = |nb: &mut Vec<Vec<usize>>, x: usize, before: bool| {
        let p = nb[x].iter().position(|&y| y == v).expect("adjacent");
        nb[x].insert(if before { p } else { p + 1 }, w);
    };
    for (ba, bb) in [(false, true), (true, false), (false, false), (true, true)] {
        let mut trial = nb.clone();
        attach(&mut trial, a, ba);
        attach(&mut trial, b, bb);
        if let Ok(t) = PlanarEmbedding::from_neighbors(&trial) {
            if t.faces().iter().all(|f| f.len() == 3) {
                return Some(t);
            }
        }
    }
    None
}

/// All triangulations with `n` vertices, `4 <= n`, one per isomorphism class.
pub fn triangulations(n: usize) -> Result<Vec<PlanarEmbedding>, GenerateError> {
    if n > MAX_VERTICES {
        return Err(GenerateError::ResourceLimit(n));
    }
    let mut level = vec![tetrahedron()];
    for _ in 4..n {
        let mut next: BTreeMap<Vec<u8>, PlanarEmbedding> = BTreeMap::new();
        for t in &level {
            for v in 0..t.n() {
                let deg = t.degree(v);
                for i in 0..deg {
                    for j in i + 1..deg {
                        if let Some(s) = split(t, v, i, j) {
                            next.entry(s.canonical_code()).or_insert(s);
                        }
                    }
                }
            }
        }
        level = next.into_values().collect();
    }
    Ok(if n < 4 { Vec::new() } else { level })
}

fn keep(e: &PlanarEmbedding) -> bool {
    e.min_degree() >= 3 && e.is_biconnected()
}

/// Every 2-connected embedding of minimum degree three with at most
/// `max_vertices` vertices and `max_edges` edges, one per class of embedded
/// isomorphism (reflections included), sorted by vertex count, edge count and
/// canonical code.
pub fn brute_generate(max_vertices: usize, max_edges: usize) -> Result<Vec<PlanarEmbedding>, GenerateError> {
    if max_vertices > MAX_VERTICES {
        return Err(GenerateError::ResourceLimit(max_vertices));
    }
    let mut out = Vec::new();
    for n in 4..=max_vertices {
        let mut level: BTreeMap<Vec<u8>, PlanarEmbedding> =
            triangulations(n)?.into_iter().map(|t| (t.canonical_code(), t)).collect();
        let mut per_n = Vec::new();
        while !level.is_empty() {
            let mut next: BTreeMap<Vec<u8>, PlanarEmbedding> = BTreeMap::new();
            for g in level.values() {
                for e in 0..g.m() {
                    // Deleting an edge between two degree-3 ends cannot stay valid.
                    let d = 2 * e;
                    if g.degree(g.origin(d)) <= 3 || g.degree(g.origin(twin(d))) <= 3 {
                        continue;
                    }
                    if let Ok(h) = g.remove_edge(e) {
                        if keep(&h) {
                            next.entry(h.canonical_code()).or_insert(h);
                        }
                    }
                }
            }
            per_n.extend(level.into_values().filter(|g| g.m() <= max_edges));
            level = next;
        }
        per_n.sort_by_cached_key(|g| (g.m(), g.canonical_code()));
        out.extend(per_n);
    }
    Ok(out)
}
