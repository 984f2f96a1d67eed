//! Effective resistance and resistance curvature.
//!
//! The Laplacian pseudoinverse is never formed by eigendecomposition. For a
//! connected graph `L + J/n` is positive definite, its inverse differs from
//! the pseudoinverse by `J/n`, and that difference cancels in every quadratic
//! form against a vector summing to zero.

use std::collections::{BTreeSet, VecDeque};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::skeleton::Graph;

/// Values within this distance of zero are neither positive nor negative.
pub const POSITIVITY_THRESHOLD: f64 = 1e-12;
/// Default absolute tolerance when comparing order-one quantities.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResistanceError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("factorization failed; matrix is not positive definite")]
    Factorization,
    #[error("path length list is empty")]
    NoPaths,
    #[error("path lengths must be positive")]
    NonPositiveLength,
    #[error("expected exactly 3 face lengths, got {0}")]
    FaceCount(usize),
    #[error("face length {0} is below 3")]
    FaceTooShort(usize),
    #[error("vertex {0} is not in the chosen subset")]
    NotInSubset(usize),
    #[error("degree bound needs at least one endpoint of degree above 1")]
    BothLeaves,
    #[error("vertex {vertex} has curvature {curvature:e}, not positive")]
    NotPositive { vertex: usize, curvature: f64 },
}

pub type Result<T> = std::result::Result<T, ResistanceError>;

/// Dense Laplacian of a connected graph with a Cholesky factorization of
/// `L + J/n`.
#[derive(Debug, Clone)]
pub struct LaplacianSystem {
    n: usize,
    laplacian: DMatrix<f64>,
    factor: Cholesky<f64, Dyn>,
}

pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

impl LaplacianSystem {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() == 0 {
            return Err(ResistanceError::Empty);
        }
        if !g.is_connected() {
            return Err(ResistanceError::Disconnected);
        }
        let n = g.n();
        let laplacian = laplacian_matrix(g);
        let completed = laplacian.add_scalar(1.0 / n as f64);
        let factor = Cholesky::new(completed).ok_or(ResistanceError::Factorization)?;
        Ok(LaplacianSystem { n, laplacian, factor })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// Solves `(L + J/n) x = b`.
    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        self.factor.solve(b)
    }

    /// `(L + J/n)^{-1}`.
    pub fn completed_inverse(&self) -> DMatrix<f64> {
        self.factor.inverse()
    }

    /// The Moore–Penrose pseudoinverse of `L`.
    pub fn pseudoinverse(&self) -> DMatrix<f64> {
        self.completed_inverse().add_scalar(-1.0 / self.n as f64)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(ResistanceError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

pub fn laplacian_system(g: &Graph) -> Result<LaplacianSystem> {
    LaplacianSystem::new(g)
}

pub fn effective_resistance(sys: &LaplacianSystem, u: usize, v: usize) -> Result<f64> {
    sys.check(u)?;
    sys.check(v)?;
    if u == v {
        return Ok(0.0);
    }
    let mut b = DVector::zeros(sys.n);
    b[u] = 1.0;
    b[v] = -1.0;
    let x = sys.solve(&b);
    Ok(x[u] - x[v])
}

/// Full resistance matrix from one explicit inverse.
pub fn all_pairs_resistance(sys: &LaplacianSystem) -> DMatrix<f64> {
    let inv = sys.completed_inverse();
    let n = sys.n;
    DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { inv[(i, i)] + inv[(j, j)] - 2.0 * inv[(i, j)] })
}

pub fn resistance_curvature(sys: &LaplacianSystem, g: &Graph, v: usize) -> Result<f64> {
    sys.check(v)?;
    let mut sum = 0.0;
    for &u in g.neighbors(v) {
        sum += effective_resistance(sys, u, v)?;
    }
    Ok(1.0 - 0.5 * sum)
}

/// Sign classification with a dead zone around zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Boundary,
    Negative,
}

pub fn classify(value: f64) -> Sign {
    if value > POSITIVITY_THRESHOLD {
        Sign::Positive
    } else if value < -POSITIVITY_THRESHOLD {
        Sign::Negative
    } else {
        Sign::Boundary
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceProfile {
    pub per_vertex: Vec<f64>,
    /// Resistance across each edge, in canonical edge order.
    pub per_edge: Vec<f64>,
    pub min: f64,
    /// Every vertex curvature exceeds [`POSITIVITY_THRESHOLD`].
    pub positive: bool,
}

impl ResistanceProfile {
    pub fn argmin(&self) -> usize {
        self.per_vertex.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i).unwrap_or(0)
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.per_vertex.iter().map(|&k| classify(k)).collect()
    }
}

pub fn resistance_profile(g: &Graph) -> Result<ResistanceProfile> {
    let sys = LaplacianSystem::new(g)?;
    Ok(profile_with(&sys, g))
}

pub fn profile_with(sys: &LaplacianSystem, g: &Graph) -> ResistanceProfile {
    let inv = sys.completed_inverse();
    let per_edge: Vec<f64> = g.edges().iter().map(|&(u, v)| inv[(u, u)] + inv[(v, v)] - 2.0 * inv[(u, v)]).collect();
    let per_vertex: Vec<f64> =
        (0..g.n()).map(|v| 1.0 - 0.5 * g.incident_edges(v).iter().map(|&e| per_edge[e]).sum::<f64>()).collect();
    let min = per_vertex.iter().copied().fold(f64::INFINITY, f64::min);
    ResistanceProfile { positive: min > POSITIVITY_THRESHOLD, per_vertex, per_edge, min }
}

/// Curvature at every vertex of a vertex-transitive graph on `n` vertices.
pub fn transitive_curvature(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(ResistanceError::Empty);
    }
    Ok(1.0 / n as f64)
}

/// Upper bound on a resistance from the lengths of edge-disjoint paths.
pub fn path_upper_bound(lengths: &[usize]) -> Result<f64> {
    if lengths.is_empty() {
        return Err(ResistanceError::NoPaths);
    }
    if lengths.contains(&0) {
        return Err(ResistanceError::NonPositiveLength);
    }
    Ok(1.0 / lengths.iter().map(|&l| 1.0 / l as f64).sum::<f64>())
}

/// Greedy edge-disjoint `u`-`v` paths: repeatedly take a shortest path and
/// delete its edges. Each path is a vertex sequence from `u` to `v`.
pub fn edge_disjoint_paths(g: &Graph, u: usize, v: usize) -> Result<Vec<Vec<usize>>> {
    for w in [u, v] {
        g.check_vertex(w).map_err(|_| ResistanceError::VertexOutOfRange { vertex: w, n: g.n() })?;
    }
    if u == v {
        return Ok(Vec::new());
    }
    let mut removed = vec![false; g.m()];
    let mut paths = Vec::new();
    loop {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for (&y, &e) in g.neighbors(x).iter().zip(g.incident_edges(x)) {
                if !removed[e] && !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        if !seen[v] {
            break;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some((prev, e)) = parent[cur] {
            removed[e] = true;
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        paths.push(path);
    }
    Ok(paths)
}

fn check_face_lengths(lengths: &[usize]) -> Result<()> {
    if lengths.len() != 3 {
        return Err(ResistanceError::FaceCount(lengths.len()));
    }
    match lengths.iter().find(|&&l| l < 3) {
        Some(&l) => Err(ResistanceError::FaceTooShort(l)),
        None => Ok(()),
    }
}

/// The sum subtracted (halved) from 1 in [`simple3_lower_bound`].
fn simple3_sum(lengths: &[usize]) -> Ratio<i64> {
    let harmonic: Ratio<i64> = lengths.iter().map(|&l| Ratio::new(1, l as i64 - 1)).sum();
    lengths
        .iter()
        .map(|&l| {
            let a = Ratio::from_integer(l as i64 - 1);
            a / (a * (harmonic + Ratio::one()) - Ratio::one())
        })
        .sum()
}

/// Lower bound on the curvature at a vertex of a simple 3-polytope whose
/// three incident faces have the given lengths. Exact.
pub fn simple3_lower_bound(lengths: &[usize]) -> Result<Ratio<i64>> {
    check_face_lengths(lengths)?;
    Ok(Ratio::one() - simple3_sum(lengths) / Ratio::from_integer(2))
}

/// Whether [`simple3_lower_bound`] certifies strictly positive curvature.
pub fn face_vector_is_positive(lengths: &[usize]) -> Result<bool> {
    check_face_lengths(lengths)?;
    Ok(simple3_sum(lengths) < Ratio::from_integer(2))
}

/// Descending face vectors over `{lo..=hi}^3` that fail the positivity test.
pub fn forbidden_face_vectors(lo: usize, hi: usize) -> Vec<[usize; 3]> {
    let mut out = BTreeSet::new();
    for a in lo..=hi {
        for b in lo..=a {
            for c in lo..=b {
                if !face_vector_is_positive(&[a, b, c]).unwrap_or(true) {
                    out.insert([a, b, c]);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Lower bound on `r_uv` from the principal submatrix of `L` on `subset`.
///
/// When a block of that submatrix is singular (a whole component of the
/// graph lies inside the subset) the pseudoinverse of the block is used.
pub fn submatrix_lower_bound(g: &Graph, subset: &[usize], u: usize, v: usize) -> Result<f64> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    for &w in &set {
        g.check_vertex(w).map_err(|_| ResistanceError::VertexOutOfRange { vertex: w, n: g.n() })?;
    }
    for w in [u, v] {
        if !set.contains(&w) {
            return Err(ResistanceError::NotInSubset(w));
        }
    }
    let verts: Vec<usize> = set.into_iter().collect();
    let k = verts.len();
    let pos = |w: usize| verts.binary_search(&w).ok();

    let mut m = DMatrix::zeros(k, k);
    for (i, &a) in verts.iter().enumerate() {
        m[(i, i)] = g.degree(a) as f64;
        for &b in g.neighbors(a) {
            if let Some(j) = pos(b) {
                m[(i, j)] = -1.0;
            }
        }
    }

    // Components of the graph lying wholly inside the subset give singular
    // blocks; complete each with J_C / |C|.
    let mut closed_components: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut closed = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &b in g.neighbors(verts[i]) {
                match pos(b) {
                    Some(j) if !seen[j] => {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(_) => {}
                    None => closed = false,
                }
            }
        }
        if closed {
            closed_components.push(comp);
        }
    }
    for comp in &closed_components {
        let w = 1.0 / comp.len() as f64;
        for &i in comp {
            for &j in comp {
                m[(i, j)] += w;
            }
        }
    }

    let mut b = DVector::zeros(k);
    if u != v {
        b[pos(u).unwrap_or(0)] = 1.0;
        b[pos(v).unwrap_or(0)] = -1.0;
    }
    let factor = Cholesky::new(m).ok_or(ResistanceError::Factorization)?;
    let x = factor.solve(&b);
    let mut value = b.dot(&x);
    for comp in &closed_components {
        let s: f64 = comp.iter().map(|&i| b[i]).sum();
        value -= s * s / comp.len() as f64;
    }
    Ok(value)
}

/// The two branches of the degree lower bound on the resistance of an edge.
pub fn degree_bound_branches(du: usize, dv: usize) -> Result<(f64, f64)> {
    if du == 0 || dv == 0 || (du == 1 && dv == 1) {
        return Err(ResistanceError::BothLeaves);
    }
    let (a, b) = (du as f64, dv as f64);
    Ok(((a + b - 2.0) / (a * b - 1.0), 4.0 / (a + b + 2.0)))
}

pub fn degree_lower_bound(du: usize, dv: usize) -> Result<f64> {
    let (x, y) = degree_bound_branches(du, dv)?;
    Ok(x.max(y))
}

/// Degree condition forcing non-positive curvature at `v`.
pub fn negative_curvature_criterion(g: &Graph, v: usize) -> Result<bool> {
    g.check_vertex(v).map_err(|_| ResistanceError::VertexOutOfRange { vertex: v, n: g.n() })?;
    let dv = g.degree(v);
    Ok(dv >= 2 && g.neighbors(v).iter().all(|&u| g.degree(u) + 2 <= dv))
}

/// The quadratic form `κᵀ R κ` used by the diameter bound.
pub fn curvature_energy(profile: &ResistanceProfile, r: &DMatrix<f64>) -> f64 {
    let k = DVector::from_column_slice(&profile.per_vertex);
    k.dot(&(r * &k))
}

/// Diameter bound for resistance-positive graphs, with the natural logarithm.
pub fn resistance_diameter_bound(g: &Graph) -> Result<u64> {
    let sys = LaplacianSystem::new(g)?;
    let profile = profile_with(&sys, g);
    if !profile.positive {
        let vertex = profile.argmin();
        return Err(ResistanceError::NotPositive { vertex, curvature: profile.per_vertex[vertex] });
    }
    let r = all_pairs_resistance(&sys);
    let energy = curvature_energy(&profile, &r);
    let value = (g.max_degree() as f64 * energy / profile.min).sqrt() * (g.n() as f64).ln();
    Ok(value.ceil().max(Zero::zero()) as u64)
}
