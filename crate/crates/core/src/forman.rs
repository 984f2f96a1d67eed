//! Forman–Ricci curvature of edges and the bounds built on it.
//!
//! All arithmetic here is exact: curvatures are `i64`, averages are
//! `Ratio<i64>`, and the large counting bounds use big integers.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::pyramid_skeleton;
use crate::iso::skeletons_isomorphic;
use crate::skeleton::{FlagCounts, TwoSkeleton};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormanError {
    #[error("edge index {edge} out of range for {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("average curvature undefined without edges")]
    NoEdges,
    #[error("face numbers must be positive (f0 = {f0}, f1 = {f1})")]
    NonPositiveCounts { f0: i64, f1: i64 },
    #[error("curvature constant must be positive, got {0}")]
    NonPositiveConstant(Ratio<i64>),
    #[error("edge {edge} has curvature {curvature} < {bound}")]
    CurvatureBelow { edge: usize, curvature: i64, bound: Ratio<i64> },
    #[error("Moore bound requires max degree at least 3, got {0}")]
    DegreeTooSmall(u64),
    #[error("diameter must be at least 1")]
    ZeroDiameter,
    #[error("average-degree parameter must be at least 3, got {0}")]
    RhoTooSmall(Ratio<i64>),
    #[error("screen dimension must be 3 or 4, got {0}")]
    InvalidDimension(u32),
    #[error("dimension-3 screen needs a polyhedral skeleton")]
    NotPolyhedral,
}

pub type Result<T> = std::result::Result<T, FormanError>;

/// Parallel neighbors of an edge, split by the clause that admits them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParallelSet {
    /// Edges sharing an endpoint but no face.
    pub by_vertex: Vec<usize>,
    /// Edges sharing a face but no endpoint.
    pub by_face: Vec<usize>,
}

impl ParallelSet {
    pub fn len(&self) -> usize {
        self.by_vertex.len() + self.by_face.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Both clauses merged, sorted.
    pub fn all(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.by_vertex.iter().chain(&self.by_face).copied().collect();
        v.sort_unstable();
        v
    }
}

fn check_edge(sk: &TwoSkeleton, e: usize) -> Result<()> {
    let m = sk.graph().m();
    if e < m {
        Ok(())
    } else {
        Err(FormanError::EdgeOutOfRange { edge: e, m })
    }
}

pub fn parallel_neighbors(sk: &TwoSkeleton, e: usize) -> Result<ParallelSet> {
    check_edge(sk, e)?;
    let g = sk.graph();
    let (a, b) = g.edge(e);
    let faces_e = sk.edge_faces(e);

    let mut by_vertex = BTreeSet::new();
    for &x in &[a, b] {
        for &other in g.incident_edges(x) {
            if other == e {
                continue;
            }
            let shared = sk.edge_faces(other).iter().any(|f| faces_e.contains(f));
            if !shared {
                by_vertex.insert(other);
            }
        }
    }

    let mut by_face = BTreeSet::new();
    for &f in faces_e {
        for &other in sk.face_edges(f) {
            let (c, d) = g.edge(other);
            if c != a && c != b && d != a && d != b {
                by_face.insert(other);
            }
        }
    }

    Ok(ParallelSet { by_vertex: by_vertex.into_iter().collect(), by_face: by_face.into_iter().collect() })
}

pub fn forman_curvature(sk: &TwoSkeleton, e: usize) -> Result<i64> {
    let parallel = parallel_neighbors(sk, e)?;
    Ok(sk.edge_faces(e).len() as i64 + 2 - parallel.len() as i64)
}

/// Per-edge Forman curvatures with exact summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormanProfile {
    pub per_edge: Vec<i64>,
    pub min: i64,
    pub average: Ratio<i64>,
    /// Every edge has curvature at least 1.
    pub positive: bool,
}

/// Evaluates every edge. An edgeless skeleton yields min 0 and average 0.
pub fn forman_profile(sk: &TwoSkeleton) -> FormanProfile {
    let per_edge: Vec<i64> =
        (0..sk.graph().m()).map(|e| forman_curvature(sk, e).expect("edge index in range")).collect();
    let min = per_edge.iter().copied().min().unwrap_or(0);
    let average =
        if per_edge.is_empty() { Ratio::zero() } else { Ratio::new(per_edge.iter().sum(), per_edge.len() as i64) };
    FormanProfile { positive: !per_edge.is_empty() && min >= 1, per_edge, min, average }
}

/// Average edge curvature from face statistics alone.
pub fn average_via_flags(fc: &FlagCounts) -> Result<Ratio<i64>> {
    if fc.f1 == 0 {
        return Err(FormanError::NoEdges);
    }
    let square_sum =
        |hist: &std::collections::BTreeMap<u64, u64>| -> i64 { hist.iter().map(|(&k, &c)| (k * k * c) as i64).sum() };
    let numer = 6 * fc.f02 as i64 + 4 * fc.f1 as i64 - square_sum(&fc.d_hist) - square_sum(&fc.p_hist);
    Ok(Ratio::new(numer, fc.f1 as i64))
}

/// Exact average for a simplicial polytope from edges, triangles and the
/// degree histogram.
pub fn simplicial_average(fc: &FlagCounts) -> Result<Ratio<i64>> {
    if fc.f1 == 0 {
        return Err(FormanError::NoEdges);
    }
    let deg: i64 = fc.d_hist.iter().map(|(&k, &c)| (k * k * c) as i64).sum();
    Ok(Ratio::new(9 * fc.f2 as i64 + 4 * fc.f1 as i64 - deg, fc.f1 as i64))
}

/// Upper bound on the average curvature of a simplicial polytope with the
/// given face numbers (degree sum of squares bounded below by Cauchy–Schwarz).
pub fn simplicial_average_bound(f0: i64, f1: i64, f2: i64) -> Result<Ratio<i64>> {
    if f0 <= 0 || f1 <= 0 {
        return Err(FormanError::NonPositiveCounts { f0, f1 });
    }
    let numer = Ratio::from_integer(9 * f2 + 4 * f1) - Ratio::new(4 * f1 * f1, f0);
    Ok(numer / Ratio::from_integer(f1))
}

/// Triangle count of a simplicial 5-polytope from its vertex and edge counts.
pub fn simplicial5_triangles(f0: i64, f1: i64) -> i64 {
    4 * f1 - 10 * f0 + 20
}

/// [`simplicial_average_bound`] with `f2` eliminated for simplicial 5-polytopes.
pub fn simplicial5_average_bound(f0: i64, f1: i64) -> Result<Ratio<i64>> {
    simplicial_average_bound(f0, f1, simplicial5_triangles(f0, f1))
}

/// Diameter bound for skeletons whose edge curvatures are all at least `c`.
pub fn forman_diameter_bound(sk: &TwoSkeleton, c: Ratio<i64>) -> Result<u64> {
    if c <= Ratio::zero() {
        return Err(FormanError::NonPositiveConstant(c));
    }
    let profile = forman_profile(sk);
    if let Some((edge, &curvature)) = profile.per_edge.iter().enumerate().find(|(_, &k)| Ratio::from_integer(k) < c) {
        return Err(FormanError::CurvatureBelow { edge, curvature, bound: c });
    }
    let max_up = (0..sk.graph().m()).map(|e| sk.edge_faces(e).len()).max().unwrap_or(0) as i64;
    let bound = (Ratio::from_integer(2) / c) * Ratio::from_integer(1 + max_up);
    Ok(bound.floor().to_integer() as u64)
}

/// Largest vertex count of a graph with the given max degree and diameter.
pub fn moore_bound(max_degree: u64, diameter: u64) -> Result<BigUint> {
    if max_degree < 3 {
        return Err(FormanError::DegreeTooSmall(max_degree));
    }
    if diameter == 0 {
        return Err(FormanError::ZeroDiameter);
    }
    let delta = BigUint::from(max_degree);
    let power = num_traits::pow(BigUint::from(max_degree - 1), diameter as usize);
    let numer = delta * power - BigUint::from(2u32);
    Ok(numer / BigUint::from(max_degree - 2))
}

/// Which variant of the vertex-count bound was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundFormula {
    /// Exponent `4 + 6ρ`, denominator `2^{3ρ}ρ − 1`.
    Stated,
    /// Exponent `2 + 6ρ`, denominator `2^{3ρ+1}ρ − 2`.
    ProofDerived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexCountBound {
    pub formula: BoundFormula,
    pub log10: f64,
    /// Floor of the bound, when `3ρ` is an integer.
    pub exact: Option<BigUint>,
}

/// Vertex-count bound for 3-polytopes with positive curvature and average
/// degree parameter `rho`.
pub fn vertex_count_bound(rho: Ratio<i64>, formula: BoundFormula) -> Result<VertexCountBound> {
    if rho < Ratio::from_integer(3) {
        return Err(FormanError::RhoTooSmall(rho));
    }
    let r = *rho.numer() as f64 / *rho.denom() as f64;
    let (exp_offset, den_shift, den_sub) = match formula {
        BoundFormula::Stated => (4.0, 0.0, 1.0),
        BoundFormula::ProofDerived => (2.0, 1.0, 2.0),
    };
    let ln2 = std::f64::consts::LN_2;
    // ln(2^{3ρ+1} ρ) and friends; the "− 1", "− 2" corrections matter only
    // far below f64 resolution but are kept through ln_1p.
    let ln_a = (3.0 * r + 1.0) * ln2 + r.ln();
    let ln_base = ln_a + (-(-ln_a).exp()).ln_1p();
    let exponent = exp_offset + 6.0 * r;
    let ln_numer = ln_a + exponent * ln_base;
    let ln_d0 = (3.0 * r + den_shift) * ln2 + r.ln();
    let ln_den = ln_d0 + (-den_sub * (-ln_d0).exp()).ln_1p();
    let log10 = (ln_numer - ln_den) / std::f64::consts::LN_10;

    let three_rho = rho * Ratio::from_integer(3);
    let exact = three_rho.is_integer().then(|| {
        let t = three_rho.to_integer() as u32;
        let rho_big = BigRational::new(BigInt::from(*rho.numer()), BigInt::from(*rho.denom()));
        let pow2 = |e: u32| BigRational::from_integer(BigInt::one() << e);
        let a = pow2(t + 1) * &rho_big;
        let base = &a - BigRational::one();
        let exp = match formula {
            BoundFormula::Stated => 4 + 2 * t,
            BoundFormula::ProofDerived => 2 + 2 * t,
        };
        let numer = a * num_traits::pow(base, exp as usize) - BigRational::from_integer(BigInt::from(2));
        let den = match formula {
            BoundFormula::Stated => pow2(t) * &rho_big - BigRational::one(),
            BoundFormula::ProofDerived => pow2(t + 1) * &rho_big - BigRational::from_integer(BigInt::from(2)),
        };
        let value = (numer / den).floor().to_integer();
        value.abs().to_biguint().unwrap_or_default()
    });
    Ok(VertexCountBound { formula, log10, exact })
}

/// Number of decimal digits minus one, refined by the leading digits.
pub fn big_log10(value: &BigUint) -> f64 {
    let digits = value.to_string();
    let lead: f64 = digits[..digits.len().min(15)].parse().unwrap_or(0.0);
    lead.log10() + (digits.len() - digits.len().min(15)) as f64
}

/// A reason a skeleton cannot be Forman-positive in a given dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScreenViolation {
    VertexDegree { vertex: usize, degree: usize },
    FaceLength { face: usize, len: usize },
}

impl std::fmt::Display for ScreenViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScreenViolation::VertexDegree { vertex, degree } => write!(f, "deg(v{vertex})={degree}"),
            ScreenViolation::FaceLength { face, len } => write!(f, "len(f{face})={len}"),
        }
    }
}

/// Structural necessary conditions for positivity.
///
/// In dimension 3 every vertex degree and face length must be at most 5,
/// with the hexagonal pyramid as the only allowed exception. In dimension 4
/// no vertex may have degree above 12.
pub fn screen_low_dimension(sk: &TwoSkeleton, dim: u32) -> Result<Vec<ScreenViolation>> {
    let g = sk.graph();
    match dim {
        3 => {
            if !sk.is_polyhedral() {
                return Err(FormanError::NotPolyhedral);
            }
            let mut out: Vec<ScreenViolation> = (0..g.n())
                .filter(|&v| g.degree(v) >= 6)
                .map(|v| ScreenViolation::VertexDegree { vertex: v, degree: g.degree(v) })
                .collect();
            out.extend(
                sk.faces()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.len() >= 6)
                    .map(|(i, f)| ScreenViolation::FaceLength { face: i, len: f.len() }),
            );
            if !out.is_empty() && is_hexagonal_pyramid(sk) {
                out.clear();
            }
            Ok(out)
        }
        4 => Ok((0..g.n())
            .filter(|&v| g.degree(v) > 12)
            .map(|v| ScreenViolation::VertexDegree { vertex: v, degree: g.degree(v) })
            .collect()),
        other => Err(FormanError::InvalidDimension(other)),
    }
}

pub fn is_hexagonal_pyramid(sk: &TwoSkeleton) -> bool {
    let g = sk.graph();
    if g.n() != 7 || g.m() != 12 || sk.faces().len() != 7 {
        return false;
    }
    let pyramid = pyramid_skeleton(6).expect("valid parameter");
    skeletons_isomorphic(sk, &pyramid)
}

/// Converts a ratio to `f64` for display.
pub fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hypercube_skeleton, prism_skeleton, simplex_skeleton, square_cupola_skeleton};
    use crate::skeleton::{flag_counts, graph_diameter};

    fn edge_of(sk: &TwoSkeleton, u: usize, v: usize) -> usize {
        sk.graph().edge_id(u, v).unwrap()
    }

    #[test]
    fn tetrahedron_edges_have_no_parallels() {
        let sk = simplex_skeleton(3).unwrap();
        for e in 0..6 {
            assert!(parallel_neighbors(&sk, e).unwrap().is_empty());
            assert_eq!(forman_curvature(&sk, e).unwrap(), 4);
        }
    }

    #[test]
    fn cupola_octagon_edge_next_to_quad() {
        let sk = square_cupola_skeleton();
        // b1 - b2 borders the quad (t0, b1, b2, t1).
        let e = edge_of(&sk, 5, 6);
        let p = parallel_neighbors(&sk, e).unwrap();
        assert_eq!(p.by_face.len(), 6);
        assert!(p.by_vertex.is_empty());
        assert_eq!(forman_curvature(&sk, e).unwrap(), -2);
        // b0 - b1 borders the triangle (t0, b0, b1).
        assert_eq!(forman_curvature(&sk, edge_of(&sk, 4, 5)).unwrap(), -1);
        assert_eq!(forman_curvature(&sk, edge_of(&sk, 0, 1)).unwrap(), 0);
        assert_eq!(forman_curvature(&sk, edge_of(&sk, 0, 4)).unwrap(), 2);
    }

    #[test]
    fn prism5_rim_edge() {
        let sk = prism_skeleton(5).unwrap();
        let e = edge_of(&sk, 0, 1);
        assert_eq!(parallel_neighbors(&sk, e).unwrap().len(), 3);
        let profile = forman_profile(&sk);
        let mut sorted = profile.per_edge.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, [vec![1; 10], vec![2; 5]].concat());
        assert!(profile.positive);
        assert!(!forman_profile(&prism_skeleton(6).unwrap()).positive);
    }

    #[test]
    fn out_of_range_edge() {
        let sk = simplex_skeleton(3).unwrap();
        assert_eq!(forman_curvature(&sk, 6), Err(FormanError::EdgeOutOfRange { edge: 6, m: 6 }));
    }

    #[test]
    fn averages_from_flags() {
        let tet = flag_counts(&simplex_skeleton(3).unwrap());
        assert_eq!(average_via_flags(&tet).unwrap(), Ratio::from_integer(4));
        assert_eq!(simplicial_average(&tet).unwrap(), Ratio::from_integer(4));
        let cupola = flag_counts(&square_cupola_skeleton());
        assert_eq!(average_via_flags(&cupola).unwrap(), Ratio::new(1, 5));
        for d in 3..=6 {
            let fc = flag_counts(&hypercube_skeleton(d).unwrap());
            assert_eq!(average_via_flags(&fc).unwrap(), Ratio::from_integer(2));
        }
    }

    #[test]
    fn simplicial_bounds() {
        assert_eq!(simplicial_average_bound(6, 12, 8).unwrap(), Ratio::from_integer(2));
        assert_eq!(simplicial_average_bound(4, 6, 4).unwrap(), Ratio::from_integer(4));
        assert_eq!(simplicial5_triangles(12, 60), 140);
        assert_eq!(simplicial5_average_bound(12, 60).unwrap(), simplicial_average_bound(12, 60, 140).unwrap());
        assert!(simplicial_average_bound(0, 1, 1).is_err());
    }

    #[test]
    fn diameter_bounds() {
        let cube = hypercube_skeleton(3).unwrap();
        assert_eq!(forman_diameter_bound(&cube, Ratio::from_integer(1)).unwrap(), 6);
        assert_eq!(forman_diameter_bound(&cube, Ratio::from_integer(2)).unwrap(), 3);
        assert_eq!(graph_diameter(cube.graph()).unwrap(), 3);
        let p6 = pyramid_skeleton(6).unwrap();
        assert_eq!(forman_diameter_bound(&p6, Ratio::from_integer(1)).unwrap(), 6);
        assert!(matches!(
            forman_diameter_bound(&prism_skeleton(6).unwrap(), Ratio::from_integer(1)),
            Err(FormanError::CurvatureBelow { curvature: 0, .. })
        ));
    }

    #[test]
    fn moore_values() {
        assert_eq!(moore_bound(3, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(moore_bound(3, 6).unwrap(), BigUint::from(190u32));
        assert_eq!(moore_bound(2, 5), Err(FormanError::DegreeTooSmall(2)));
    }

    #[test]
    fn vertex_bound_magnitudes() {
        let six = vertex_count_bound(Ratio::from_integer(6), BoundFormula::Stated).unwrap();
        let three = vertex_count_bound(Ratio::from_integer(3), BoundFormula::Stated).unwrap();
        assert!((six.log10 - 260.2).abs() < 0.05, "{}", six.log10);
        assert!((three.log10 - 77.0).abs() < 0.05, "{}", three.log10);
        assert!((big_log10(six.exact.as_ref().unwrap()) - six.log10).abs() < 1e-9);
        assert!(six.exact > three.exact);
        let half = vertex_count_bound(Ratio::new(7, 2), BoundFormula::Stated).unwrap();
        assert!(half.exact.is_none());
        let proof = vertex_count_bound(Ratio::from_integer(3), BoundFormula::ProofDerived).unwrap();
        assert!((big_log10(proof.exact.as_ref().unwrap()) - proof.log10).abs() < 1e-9);
        assert!(vertex_count_bound(Ratio::from_integer(2), BoundFormula::Stated).is_err());
    }

    #[test]
    fn screens() {
        assert!(!screen_low_dimension(&pyramid_skeleton(7).unwrap(), 3).unwrap().is_empty());
        assert!(screen_low_dimension(&pyramid_skeleton(6).unwrap(), 3).unwrap().is_empty());
        assert!(screen_low_dimension(&hypercube_skeleton(3).unwrap(), 3).unwrap().is_empty());
        assert!(!screen_low_dimension(&prism_skeleton(6).unwrap(), 3).unwrap().is_empty());
        assert!(screen_low_dimension(&pyramid_skeleton(12).unwrap(), 4).unwrap().is_empty());
        assert_eq!(
            screen_low_dimension(&pyramid_skeleton(13).unwrap(), 4).unwrap(),
            vec![ScreenViolation::VertexDegree { vertex: 13, degree: 13 }]
        );
        assert_eq!(screen_low_dimension(&pyramid_skeleton(4).unwrap(), 5), Err(FormanError::InvalidDimension(5)));
    }

    #[test]
    fn ratio_helpers() {
        assert_eq!(ratio_to_f64(Ratio::new(1, 4)), 0.25);
    }
}
