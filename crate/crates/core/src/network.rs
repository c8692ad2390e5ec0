//! Exact electrical analysis of an embedded network.
//!
//! Every branch has unit resistance. With branch `p` as the battery, node
//! potentials are `V a_p` and branch currents are row `p` of `F = Aᵀ V A`,
//! where `A` is the reduced incidence matrix and `V = det(K) K⁻¹`. The
//! remaining branches tile a rectangle whose squares have the branch currents
//! as sides: the battery's own current is the extent along the potential axis
//! (the width) and the current through the rest of the network is the height.

use std::collections::VecDeque;

use num_bigint::BigInt;
use thiserror::Error;

use crate::dissection::{Dissection, Element};
use crate::embedding::{twin, PlanarEmbedding};
use crate::exact::{adjugate, determinant, gcd_all, ExactInt, Matrix, Overflow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("network is disconnected")]
    DisconnectedGraph,
    #[error("datum node {datum} is outside 0..{n}")]
    BadDatum { datum: usize, n: usize },
    #[error("Kirchhoff matrix is singular")]
    SingularMatrix,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("branch {branch}: {message}")]
    GeometryError { branch: usize, message: String },
}

impl From<Overflow> for NetworkError {
    fn from(_: Overflow) -> Self {
        NetworkError::Overflow
    }
}

/// Branches with reference directions, plus the choice of datum node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    n: usize,
    branches: Vec<(usize, usize)>,
    datum: usize,
}

impl Network {
    pub fn new(n: usize, branches: Vec<(usize, usize)>, datum: usize) -> Result<Network, NetworkError> {
        if datum >= n {
            return Err(NetworkError::BadDatum { datum, n });
        }
        let net = Network { n, branches, datum };
        if !net.connected() {
            return Err(NetworkError::DisconnectedGraph);
        }
        Ok(net)
    }

    /// The embedding's branches, with the highest-index node as datum.
    pub fn from_embedding(e: &PlanarEmbedding) -> Network {
        Network { n: e.n(), branches: e.edges().to_vec(), datum: e.n() - 1 }
    }

    pub fn with_datum(&self, datum: usize) -> Result<Network, NetworkError> {
        Network::new(self.n, self.branches.clone(), datum)
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn branches(&self) -> &[(usize, usize)] {
        &self.branches
    }

    pub fn datum(&self) -> usize {
        self.datum
    }

    fn connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.branches {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Row of node `v` in the reduced matrices, or `None` for the datum.
    fn row_of(&self, v: usize) -> Option<usize> {
        match v.cmp(&self.datum) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    }

    /// Full incidence matrix: +1 where a branch leaves a node, -1 where it
    /// enters.
    pub fn incidence_full(&self) -> Matrix<i64> {
        let mut a = Matrix::filled(self.n, self.branches.len(), 0i64);
        for (k, &(t, h)) in self.branches.iter().enumerate() {
            a[(t, k)] += 1;
            a[(h, k)] -= 1;
        }
        a
    }

    /// Incidence matrix with the datum row removed.
    pub fn incidence(&self) -> Matrix<i64> {
        let full = self.incidence_full();
        let rows: Vec<Vec<i64>> = (0..self.n).filter(|&v| v != self.datum).map(|v| full.row(v).to_vec()).collect();
        if rows.is_empty() {
            return Matrix::filled(0, self.branches.len(), 0);
        }
        Matrix::from_rows(&rows)
    }

    /// `K = A Aᵀ` on the reduced incidence matrix.
    pub fn kirchhoff(&self) -> Matrix<i64> {
        let size = self.n - 1;
        let mut k = Matrix::filled(size, size, 0i64);
        for &(t, h) in &self.branches {
            let (rt, rh) = (self.row_of(t), self.row_of(h));
            if let Some(i) = rt {
                k[(i, i)] += 1;
            }
            if let Some(j) = rh {
                k[(j, j)] += 1;
            }
            if let (Some(i), Some(j)) = (rt, rh) {
                k[(i, j)] -= 1;
                k[(j, i)] -= 1;
            }
        }
        k
    }
}

/// Determinant of `K`: the number of spanning trees.
pub fn complexity<T: ExactInt>(k: &Matrix<T>) -> Result<T, Overflow> {
    determinant(k)
}

/// `det(K) K⁻¹` as an integer matrix, with `det(K)`.
pub fn voltage_matrix<T: ExactInt>(k: &Matrix<T>) -> Result<(T, Matrix<T>), NetworkError> {
    match adjugate(k)? {
        Some(a) if !a.det.is_zero() => Ok((a.det, a.adjugate)),
        _ => Err(NetworkError::SingularMatrix),
    }
}

/// `F = Aᵀ V A` over all branches, computed entrywise from `V`.
pub fn full_currents<T: ExactInt>(net: &Network, v: &Matrix<T>) -> Result<Matrix<T>, Overflow> {
    let m = net.branches.len();
    let ends: Vec<(Option<usize>, Option<usize>)> =
        net.branches.iter().map(|&(t, h)| (net.row_of(t), net.row_of(h))).collect();
    let at = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(i), Some(j)) => v[(i, j)].clone(),
        _ => T::zero(),
    };
    let mut f = Matrix::filled(m, m, T::zero());
    for i in 0..m {
        let (ti, hi) = ends[i];
        for j in i..m {
            let (tj, hj) = ends[j];
            let val = at(ti, tj).checked_sub(&at(ti, hj))?.checked_sub(&at(hi, tj))?.checked_add(&at(hi, hj))?;
            f[(j, i)] = val.clone();
            f[(i, j)] = val;
        }
    }
    Ok(f)
}

/// Row gcds `R` and `B = F / R`. A zero row keeps `R_i = 0` and stays zero.
pub fn reduce<T: ExactInt>(f: &Matrix<T>) -> (Vec<T>, Matrix<T>) {
    let mut b = f.clone();
    let r: Vec<T> = (0..f.rows()).map(|i| gcd_all(f.row(i))).collect();
    for (i, g) in r.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        for j in 0..f.cols() {
            b[(i, j)] = f[(i, j)].div_exact(g);
        }
    }
    (r, b)
}

/// True when branch `i` as battery yields a squared square.
pub fn detect_square<T: ExactInt>(b: &Matrix<T>, r: &[T], det: &T, i: usize) -> bool {
    let two = T::from_i64(2);
    match two.checked_mul(&r[i]).and_then(|x| x.checked_mul(&b[(i, i)])) {
        Ok(x) => x == *det,
        Err(_) => false,
    }
}

/// Everything derived from one network, in one integer type.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkAnalysis<T> {
    pub network: Network,
    pub det: T,
    pub v: Matrix<T>,
    pub f: Matrix<T>,
    pub r: Vec<T>,
    pub b: Matrix<T>,
}

/// Currents with one branch as battery.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentSolution<T> {
    pub polar_branch: usize,
    /// Reduced signed currents of every branch, the battery included.
    pub currents: Vec<T>,
    pub reduction: T,
    pub width: T,
    pub height: T,
    /// Reduced node potentials; the datum is zero.
    pub potentials: Vec<T>,
}

impl<T: ExactInt> NetworkAnalysis<T> {
    pub fn compute(net: &Network) -> Result<Self, NetworkError> {
        let k: Matrix<T> = Matrix::from_i64(&net.kirchhoff());
        let (det, v) = voltage_matrix(&k)?;
        let f = full_currents(net, &v)?;
        let (r, b) = reduce(&f);
        Ok(NetworkAnalysis { network: net.clone(), det, v, f, r, b })
    }

    pub fn branches(&self) -> usize {
        self.network.branches.len()
    }

    pub fn is_square(&self, i: usize) -> bool {
        detect_square(&self.b, &self.r, &self.det, i)
    }

    /// The solution for battery branch `p`; `None` for an all-zero row.
    pub fn solution(&self, p: usize) -> Result<Option<CurrentSolution<T>>, Overflow> {
        let red = self.r[p].clone();
        if red.is_zero() {
            return Ok(None);
        }
        let net = &self.network;
        let (t, h) = net.branches[p];
        let mut potentials = Vec::with_capacity(net.n);
        for u in 0..net.n {
            let val = match net.row_of(u) {
                None => T::zero(),
                Some(i) => {
                    let vt = net.row_of(t).map_or(T::zero(), |j| self.v[(i, j)].clone());
                    let vh = net.row_of(h).map_or(T::zero(), |j| self.v[(i, j)].clone());
                    vt.checked_sub(&vh)?
                }
            };
            potentials.push(val.div_exact(&red));
        }
        let width = self.b[(p, p)].clone();
        let height = self.det.div_exact(&red).checked_sub(&width)?;
        Ok(Some(CurrentSolution { polar_branch: p, currents: self.b.row(p).to_vec(), reduction: red, width, height, potentials }))
    }

    pub fn solutions(&self) -> Result<Vec<CurrentSolution<T>>, Overflow> {
        (0..self.branches()).filter_map(|p| self.solution(p).transpose()).collect()
    }
}

impl<T: ExactInt> CurrentSolution<T> {
    /// Net signed current leaving each node through non-battery branches.
    pub fn kcl_residuals(&self, net: &Network) -> Result<Vec<T>, Overflow> {
        let mut out = vec![T::zero(); net.n];
        for (k, &(t, h)) in net.branches.iter().enumerate() {
            if k == self.polar_branch {
                continue;
            }
            out[t] = out[t].checked_add(&self.currents[k])?;
            out[h] = out[h].checked_sub(&self.currents[k])?;
        }
        Ok(out)
    }

    /// KCL holds at every node other than the poles, and the poles pass the
    /// height's worth of current.
    pub fn satisfies_kcl(&self, net: &Network) -> bool {
        let Ok(res) = self.kcl_residuals(net) else { return false };
        let (t, h) = net.branches[self.polar_branch];
        let Ok(neg) = self.height.checked_neg() else { return false };
        res.iter().enumerate().all(|(v, x)| {
            if v == t {
                *x == self.height
            } else if v == h {
                *x == neg
            } else {
                x.is_zero()
            }
        })
    }
}

/// What a battery branch produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOutcome {
    /// A tiling; `cross` marks four elements meeting at a point.
    Rectangle { dissection: Dissection, cross: bool },
    /// Some branch carries no current.
    ZeroCurrent,
    /// Zero width or height.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub polar_branch: usize,
    pub outcome: RowOutcome,
}

fn to_u64<T: ExactInt>(v: &T, branch: usize) -> Result<u64, NetworkError> {
    let big = v.to_bigint();
    u64::try_from(&big)
        .map_err(|_| NetworkError::GeometryError { branch, message: format!("value {big} does not fit 64 bits") })
}

/// Places the squares of one solution using node potentials for one axis and
/// a walk over the faces for the other.
pub fn place_solution<T: ExactInt>(
    e: &PlanarEmbedding,
    sol: &CurrentSolution<T>,
) -> Result<RowOutcome, NetworkError> {
    let p = sol.polar_branch;
    if sol.width.is_zero() || sol.width.is_negative() || sol.height.is_zero() || sol.height.is_negative() {
        return Ok(RowOutcome::Degenerate);
    }
    if sol.currents.iter().enumerate().any(|(k, c)| k != p && c.is_zero()) {
        return Ok(RowOutcome::ZeroCurrent);
    }
    let geometry = |message: &str| NetworkError::GeometryError { branch: p, message: message.to_string() };
    let (t, _) = e.edges()[p];
    let top = sol.potentials[t].clone();
    let mut x = Vec::with_capacity(e.n());
    for pot in &sol.potentials {
        let d = top.checked_sub(pot)?;
        if d.is_negative() {
            return Err(geometry("potential above the positive pole"));
        }
        x.push(to_u64(&d, p)?);
    }
    // Face coordinates: crossing a branch against its flow adds its current.
    let size: Vec<u64> = sol
        .currents
        .iter()
        .map(|c| if c.is_negative() { c.checked_neg().map_err(NetworkError::from) } else { Ok(c.clone()) })
        .map(|c| c.and_then(|c| to_u64(&c, p)))
        .collect::<Result<_, _>>()?;
    let flow = |k: usize| if sol.currents[k].is_negative() { 2 * k + 1 } else { 2 * k };
    let mut y: Vec<Option<i128>> = vec![None; e.f()];
    let start = e.face_of(2 * p);
    y[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(face) = queue.pop_front() {
        let here = y[face].expect("visited");
        for &d in &e.faces()[face] {
            let k = d >> 1;
            if k == p {
                continue;
            }
            let other = e.face_of(twin(d));
            let delta = size[k] as i128;
            let there = if flow(k) == d { here + delta } else { here - delta };
            match y[other] {
                None => {
                    y[other] = Some(there);
                    queue.push_back(other);
                }
                Some(v) if v != there => return Err(geometry("inconsistent face coordinates")),
                Some(_) => {}
            }
        }
    }
    let low = y.iter().flatten().copied().min().unwrap_or(0);
    let mut elements = Vec::with_capacity(e.m() - 1);
    for k in (0..e.m()).filter(|&k| k != p) {
        let d = flow(k);
        let fy = y[e.face_of(d)].ok_or_else(|| geometry("face not reached"))? - low;
        elements.push(Element::new(x[e.origin(d)], fy as u64, size[k]));
    }
    let width = to_u64(&sol.width, p)?;
    let height = to_u64(&sol.height, p)?;
    let d = Dissection::new(width, height, elements).reading_order();
    if !d.validate().ok() {
        return Err(geometry("placed squares do not tile the rectangle"));
    }
    let cross = has_cross(e, sol, p);
    Ok(RowOutcome::Rectangle { dissection: d, cross })
}

/// Two distinct nodes on a common face at equal potential.
fn has_cross<T: ExactInt>(e: &PlanarEmbedding, sol: &CurrentSolution<T>, p: usize) -> bool {
    e.faces().iter().any(|face| {
        let mut nodes: Vec<usize> = face.iter().filter(|&&d| d >> 1 != p).map(|&d| e.origin(d)).collect();
        nodes.sort_unstable();
        nodes.dedup();
        nodes.iter().enumerate().any(|(i, &a)| nodes[i + 1..].iter().any(|&b| sol.potentials[a] == sol.potentials[b]))
    })
}

pub fn extract_dissections<T: ExactInt>(
    e: &PlanarEmbedding,
    analysis: &NetworkAnalysis<T>,
) -> Result<Vec<Extraction>, NetworkError> {
    let mut out = Vec::with_capacity(analysis.branches());
    for p in 0..analysis.branches() {
        let outcome = match analysis.solution(p)? {
            None => RowOutcome::ZeroCurrent,
            Some(sol) => place_solution(e, &sol)?,
        };
        out.push(Extraction { polar_branch: p, outcome });
    }
    Ok(out)
}

/// Analysis in `i128`, or in arbitrary precision when that overflows.
#[derive(Debug, Clone, PartialEq)]
pub enum Analysis {
    Fixed(NetworkAnalysis<i128>),
    Big(NetworkAnalysis<BigInt>),
}

impl Analysis {
    pub fn det(&self) -> BigInt {
        match self {
            Analysis::Fixed(a) => a.det.to_bigint(),
            Analysis::Big(a) => a.det.clone(),
        }
    }

    pub fn extract(&self, e: &PlanarEmbedding) -> Result<Vec<Extraction>, NetworkError> {
        match self {
            Analysis::Fixed(a) => extract_dissections(e, a),
            Analysis::Big(a) => extract_dissections(e, a),
        }
    }

    pub fn square_rows(&self) -> Vec<usize> {
        match self {
            Analysis::Fixed(a) => (0..a.branches()).filter(|&i| a.is_square(i)).collect(),
            Analysis::Big(a) => (0..a.branches()).filter(|&i| a.is_square(i)).collect(),
        }
    }
}

pub fn analyze(net: &Network) -> Result<Analysis, NetworkError> {
    match NetworkAnalysis::<i128>::compute(net) {
        Ok(a) => Ok(Analysis::Fixed(a)),
        Err(NetworkError::Overflow) => NetworkAnalysis::<BigInt>::compute(net).map(Analysis::Big),
        Err(e) => Err(e),
    }
}
