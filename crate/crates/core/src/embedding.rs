//! Planar embeddings as rotation systems over darts.
//!
//! Edge `e` owns darts `2e` (tail to head) and `2e + 1` (head to tail).
//! `rotation[v]` lists the darts leaving `v` in clockwise order.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} lists neighbor {neighbor}, outside 0..{n}")]
    NeighborOutOfRange { vertex: usize, neighbor: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertices {0} and {1} disagree on the number of edges between them")]
    Asymmetric(usize, usize),
    #[error("dart {0} is missing from or repeated in the rotation system")]
    BadDart(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar (Euler characteristic {0})")]
    NotPlanar(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    /// Index of each dart within its origin's rotation.
    position: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
}

pub const fn twin(d: usize) -> usize {
    d ^ 1
}

pub const fn edge_of(d: usize) -> usize {
    d >> 1
}

impl PlanarEmbedding {
    /// Builds an embedding from an explicit edge list and dart rotations.
    pub fn from_darts(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        let darts = 2 * edges.len();
        let mut position = vec![usize::MAX; darts];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= darts || position[d] != usize::MAX {
                    return Err(EmbeddingError::BadDart(d));
                }
                let (t, h) = edges[edge_of(d)];
                if (if d & 1 == 0 { t } else { h }) != v {
                    return Err(EmbeddingError::BadDart(d));
                }
                position[d] = i;
            }
        }
        if rotation.len() != n {
            return Err(EmbeddingError::BadDart(darts));
        }
        if let Some(d) = position.iter().position(|&p| p == usize::MAX) {
            return Err(EmbeddingError::BadDart(d));
        }
        let mut e = PlanarEmbedding { n, edges, rotation, position, faces: Vec::new(), face_of: Vec::new() };
        e.trace_faces();
        if !e.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let chi = e.n as i64 - e.m() as i64 + e.f() as i64;
        if chi != 2 {
            return Err(EmbeddingError::NotPlanar(chi));
        }
        Ok(e)
    }

    /// Builds an embedding from clockwise neighbor lists.
    ///
    /// Edges are numbered by sorted endpoint pair and oriented from the lower
    /// to the higher vertex index. Parallel edges are paired so that the
    /// result is planar.
    pub fn from_neighbors(neighbors: &[Vec<usize>]) -> Result<Self, EmbeddingError> {
        let n = neighbors.len();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        for (v, list) in neighbors.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(EmbeddingError::NeighborOutOfRange { vertex: v, neighbor: w, n });
                }
                if w == v {
                    return Err(EmbeddingError::Loop(v));
                }
            }
        }
        // Positions of w in v's list, for each ordered pair with v < w.
        let mut pairs: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
        for v in 0..n {
            let mut ws: Vec<usize> = neighbors[v].iter().copied().filter(|&w| w > v).collect();
            ws.sort_unstable();
            ws.dedup();
            for w in ws {
                let pv: Vec<usize> = (0..neighbors[v].len()).filter(|&i| neighbors[v][i] == w).collect();
                let pw: Vec<usize> = (0..neighbors[w].len()).filter(|&i| neighbors[w][i] == v).collect();
                if pv.len() != pw.len() {
                    return Err(EmbeddingError::Asymmetric(v, w));
                }
                pairs.push((v, w, pv, pw));
            }
        }
        for (w, list) in neighbors.iter().enumerate() {
            for &v in list {
                if v < w && !pairs.iter().any(|p| p.0 == v && p.1 == w) {
                    return Err(EmbeddingError::Asymmetric(v, w));
                }
            }
        }
        let mut edges = Vec::new();
        for (v, w, pv, _) in &pairs {
            edges.extend(std::iter::repeat((*v, *w)).take(pv.len()));
        }
        let multi: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].2.len() > 1).collect();
        let mut offsets = vec![0usize; pairs.len()];
        loop {
            let mut rotation: Vec<Vec<usize>> = neighbors.iter().map(|l| vec![usize::MAX; l.len()]).collect();
            let mut edge = 0;
            for (pi, (v, w, pv, pw)) in pairs.iter().enumerate() {
                let k = pv.len();
                for (i, &slot) in pv.iter().enumerate() {
                    // Parallel edges appear in opposite cyclic order at the
                    // two ends.
                    let j = (offsets[pi] + k - i) % k;
                    rotation[*v][slot] = 2 * (edge + i);
                    rotation[*w][pw[j]] = 2 * (edge + i) + 1;
                }
                edge += k;
            }
            let err = match PlanarEmbedding::from_darts(n, edges.clone(), rotation) {
                Ok(e) => return Ok(e),
                Err(err) => err,
            };
            // Advance the mixed-radix counter over parallel classes.
            let mut advanced = false;
            for &pi in &multi {
                offsets[pi] += 1;
                if offsets[pi] < pairs[pi].2.len() {
                    advanced = true;
                    break;
                }
                offsets[pi] = 0;
            }
            if !advanced {
                return Err(err);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn f(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn origin(&self, d: usize) -> usize {
        let (t, h) = self.edges[edge_of(d)];
        if d & 1 == 0 {
            t
        } else {
            h
        }
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin(twin(d))
    }

    /// The next dart clockwise around the origin of `d`.
    pub fn next_cw(&self, d: usize) -> usize {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.position[d] + 1) % rot.len()]
    }

    pub fn next_ccw(&self, d: usize) -> usize {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.position[d] + rot.len() - 1) % rot.len()]
    }

    /// Faces as dart cycles under `d -> next_cw(twin(d))`.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Clockwise neighbor lists (the planar_code view).
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        self.rotation.iter().map(|rot| rot.iter().map(|&d| self.target(d)).collect()).collect()
    }

    fn trace_faces(&mut self) {
        let darts = 2 * self.edges.len();
        self.face_of = vec![usize::MAX; darts];
        self.faces.clear();
        for start in 0..darts {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            while self.face_of[d] == usize::MAX {
                self.face_of[d] = id;
                cycle.push(d);
                d = self.next_cw(twin(d));
            }
            self.faces.push(cycle);
        }
    }

    fn is_connected(&self) -> bool {
        self.components_without(&[]) == 1
    }

    /// Connected components after deleting `removed` vertices.
    fn components_without(&self, removed: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotation[v] {
                    let w = self.target(d);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_biconnected(&self) -> bool {
        self.n >= 2 && self.is_connected() && (0..self.n).all(|v| self.components_without(&[v]) <= 1)
    }

    /// Some pair of vertices whose removal disconnects the graph.
    pub fn two_separator(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.components_without(&[u, v]) > 1 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut sorted: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// A pair of parallel edges that does not bound a two-sided face, so that
    /// other parts of the graph sit between them.
    pub fn has_separated_multi_edge(&self) -> bool {
        let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            by_pair.entry((a.min(b), a.max(b))).or_default().push(e);
        }
        by_pair.values().filter(|es| es.len() > 1).any(|es| {
            es.iter().enumerate().any(|(i, &e1)| {
                es[i + 1..].iter().any(|&e2| {
                    let digon = |d: usize| self.faces[self.face_of[d]].len() == 2;
                    let shares_digon = [2 * e1, 2 * e1 + 1]
                        .iter()
                        .any(|&d| digon(d) && self.faces[self.face_of[d]].iter().any(|&x| edge_of(x) == e2));
                    !shares_digon
                })
            })
        })
    }

    /// The dual embedding: one vertex per face; dual edge `e` keeps darts
    /// `2e` and `2e + 1`, leaving the faces of the primal darts.
    pub fn dual(&self) -> PlanarEmbedding {
        let edges = (0..self.m()).map(|e| (self.face_of[2 * e], self.face_of[2 * e + 1])).collect();
        let rotation = self.faces.clone();
        PlanarEmbedding::from_darts(self.f(), edges, rotation).expect("dual of a planar embedding is planar")
    }

    /// Same graph with `e` deleted; faces on either side merge.
    pub fn remove_edge(&self, e: usize) -> Result<PlanarEmbedding, EmbeddingError> {
        let renumber = |d: usize| if edge_of(d) > e { d - 2 } else { d };
        let edges = self.edges.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
        let rotation = self
            .rotation
            .iter()
            .map(|rot| rot.iter().copied().filter(|&d| edge_of(d) != e).map(renumber).collect())
            .collect();
        PlanarEmbedding::from_darts(self.n, edges, rotation)
    }

    /// Copy with the given edge order and orientation.
    ///
    /// `order[k] = (e, flip)` makes old edge `e` the new edge `k`, reversed
    /// when `flip` is set.
    pub fn reordered(&self, order: &[(usize, bool)]) -> PlanarEmbedding {
        assert_eq!(order.len(), self.m(), "every edge must be placed once");
        let mut map = vec![usize::MAX; 2 * self.m()];
        let mut edges = Vec::with_capacity(self.m());
        for (k, &(e, flip)) in order.iter().enumerate() {
            let (t, h) = self.edges[e];
            edges.push(if flip { (h, t) } else { (t, h) });
            map[2 * e] = 2 * k + flip as usize;
            map[2 * e + 1] = 2 * k + 1 - flip as usize;
        }
        let rotation = self.rotation.iter().map(|rot| rot.iter().map(|&d| map[d]).collect()).collect();
        PlanarEmbedding::from_darts(self.n, edges, rotation).expect("relabelling keeps planarity")
    }

    /// Canonical form under relabelling and reflection: equal codes exactly
    /// for isomorphic embeddings.
    pub fn canonical_code(&self) -> Vec<u8> {
        let darts = 2 * self.m();
        let mut best: Option<Vec<u32>> = None;
        for start in 0..darts {
            for mirrored in [false, true] {
                let code = self.label_from(start, mirrored, best.as_deref());
                if let Some(c) = code {
                    best = Some(c);
                }
            }
        }
        let mut out = Vec::with_capacity(4 + 4 * (2 * darts));
        out.extend_from_slice(&(self.n as u32).to_be_bytes());
        for v in best.unwrap_or_default() {
            out.extend_from_slice(&v.to_be_bytes());
        }
        out
    }

    /// BFS dart labelling from `start`; returns the code when it beats `bound`.
    fn label_from(&self, start: usize, mirrored: bool, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        let darts = 2 * self.m();
        let next = |d: usize| if mirrored { self.next_ccw(d) } else { self.next_cw(d) };
        let mut label = vec![u32::MAX; darts];
        let mut order = Vec::with_capacity(darts);
        label[start] = 0;
        order.push(start);
        let mut code = Vec::with_capacity(2 * darts);
        let mut smaller = false;
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for nb in [next(d), twin(d)] {
                if label[nb] == u32::MAX {
                    label[nb] = order.len() as u32;
                    order.push(nb);
                }
                let v = label[nb];
                if !smaller {
                    if let Some(b) = bound {
                        let k = code.len();
                        if v > b[k] {
                            return None;
                        }
                        if v < b[k] {
                            smaller = true;
                        }
                    }
                }
                code.push(v);
            }
            i += 1;
        }
        match bound {
            Some(_) if !smaller => None,
            _ => Some(code),
        }
    }
}

/// Connectivity requirement of a graph class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// 2-connected with some 2-vertex separator.
    Exactly2,
    AtLeast2,
    /// No 2-vertex separator.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassFilter {
    pub min_degree: usize,
    pub connectivity: Connectivity,
    /// Required edge count, if any.
    pub edges: Option<usize>,
}

impl Default for ClassFilter {
    fn default() -> Self {
        ClassFilter { min_degree: 3, connectivity: Connectivity::Exactly2, edges: None }
    }
}

pub fn filter_class(e: &PlanarEmbedding, filter: &ClassFilter) -> bool {
    if filter.edges.is_some_and(|m| m != e.m()) || e.min_degree() < filter.min_degree || !e.is_biconnected() {
        return false;
    }
    match filter.connectivity {
        Connectivity::AtLeast2 => true,
        Connectivity::Exactly2 => e.two_separator().is_some(),
        Connectivity::Three => e.two_separator().is_none(),
    }
}
