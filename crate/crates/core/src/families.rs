//! Generators for the polytope families used throughout the crate.
//!
//! Each generator returns a full [`TwoSkeleton`]. [`FamilySpec::generate`]
//! additionally returns a role table naming what each vertex is (apex, cap,
//! tube level and so on), which keeps tests and examples self-describing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::skeleton::{face_vector, Graph, SkeletonError, TwoSkeleton};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} needs parameter >= {min}, got {value}")]
    ParameterTooSmall { family: &'static str, value: usize, min: usize },
    #[error("vertex {vertex} has degree {degree}; expansion needs degree 3")]
    NotCubicVertex { vertex: usize, degree: usize },
    #[error("skeleton is not polyhedral")]
    NotPolyhedral,
    #[error("skeleton is not simple (vertex {vertex} has degree {degree})")]
    NotSimple { vertex: usize, degree: usize },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

fn need(family: &'static str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(FamilyError::ParameterTooSmall { family, value, min })
    } else {
        Ok(())
    }
}

fn assemble(n: usize, edges: &[(usize, usize)], faces: &[Vec<usize>]) -> Result<TwoSkeleton> {
    let graph = Graph::new(n, edges)?;
    Ok(TwoSkeleton::new(graph, faces)?)
}

/// Edges of a cycle through `vs` in order.
fn ring(vs: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..vs.len()).map(move |i| (vs[i], vs[(i + 1) % vs.len()]))
}

/// Complete graph on `d + 1` vertices with every triangle as a face.
pub fn simplex_skeleton(d: usize) -> Result<TwoSkeleton> {
    need("simplex", d, 2)?;
    let n = d + 1;
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
            for c in b + 1..n {
                faces.push(vec![a, b, c]);
            }
        }
    }
    assemble(n, &edges, &faces)
}

/// The `d`-cube: vertices are bitmasks, faces are the 2-dimensional subcubes.
pub fn hypercube_skeleton(d: usize) -> Result<TwoSkeleton> {
    need("hypercube", d, 2)?;
    let n = 1usize << d;
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..d {
            let bi = 1 << i;
            if v & bi == 0 {
                edges.push((v, v | bi));
                for j in i + 1..d {
                    let bj = 1 << j;
                    if v & bj == 0 {
                        faces.push(vec![v, v | bi, v | bi | bj, v | bj]);
                    }
                }
            }
        }
    }
    assemble(n, &edges, &faces)
}

/// A single `n`-gon with its interior as the one face.
pub fn polygon_skeleton(n: usize) -> Result<TwoSkeleton> {
    need("polygon", n, 3)?;
    let vs: Vec<usize> = (0..n).collect();
    let edges: Vec<_> = ring(&vs).collect();
    assemble(n, &edges, &[vs])
}

/// Bottom `n`-gon on `0..n`, top on `n..2n`, joined by squares.
pub fn prism_skeleton(n: usize) -> Result<TwoSkeleton> {
    need("prism", n, 3)?;
    let bottom: Vec<usize> = (0..n).collect();
    let top: Vec<usize> = (n..2 * n).collect();
    let mut edges: Vec<_> = ring(&bottom).chain(ring(&top)).collect();
    edges.extend((0..n).map(|i| (i, n + i)));
    let mut faces = vec![bottom, top];
    faces.extend((0..n).map(|i| {
        let j = (i + 1) % n;
        vec![i, j, n + j, n + i]
    }));
    assemble(2 * n, &edges, &faces)
}

/// Base `n`-gon on `0..n` with apex `n`.
pub fn pyramid_skeleton(n: usize) -> Result<TwoSkeleton> {
    need("pyramid", n, 3)?;
    let base: Vec<usize> = (0..n).collect();
    let mut edges: Vec<_> = ring(&base).collect();
    edges.extend((0..n).map(|i| (i, n)));
    let mut faces = vec![base];
    faces.extend((0..n).map(|i| vec![i, (i + 1) % n, n]));
    assemble(n + 1, &edges, &faces)
}

/// Square cupola: top square `t0..t3` on `0..4`, octagon `b0..b7` on `4..12`.
pub fn square_cupola_skeleton() -> TwoSkeleton {
    let t = |i: usize| i % 4;
    let b = |i: usize| 4 + i % 8;
    let top: Vec<usize> = (0..4).collect();
    let octagon: Vec<usize> = (0..8).map(b).collect();
    let mut edges: Vec<_> = ring(&top).chain(ring(&octagon)).collect();
    let mut faces = vec![top.clone(), octagon.clone()];
    for i in 0..4 {
        edges.push((t(i), b(2 * i)));
        edges.push((t(i), b(2 * i + 1)));
        faces.push(vec![t(i), b(2 * i), b(2 * i + 1)]);
        faces.push(vec![t(i), b(2 * i + 1), b(2 * i + 2), t(i + 1)]);
    }
    assemble(12, &edges, &faces).expect("fixed construction is valid")
}

/// Vertex index of position `i` (mod 3) on level `j` of a tube.
pub fn tube_vertex(position: usize, level: usize) -> usize {
    2 + 3 * level + position % 3
}

/// Caps `x = 0`, `y = 1`; level `j` holds `2 + 3j .. 2 + 3j + 3`.
/// Quads join consecutive levels, triangles join each cap to its end level.
pub fn tube_skeleton(k: usize) -> Result<TwoSkeleton> {
    need("tube", k, 1)?;
    let n = 3 * k + 2;
    let p = tube_vertex;
    let mut edges = Vec::with_capacity(6 * k + 3);
    let mut faces = Vec::with_capacity(3 * k + 3);
    for j in 0..k {
        for i in 0..3 {
            edges.push((p(i, j), p(i + 1, j)));
            if j + 1 < k {
                edges.push((p(i, j), p(i, j + 1)));
                faces.push(vec![p(i, j), p(i + 1, j), p(i + 1, j + 1), p(i, j + 1)]);
            }
        }
    }
    for (cap, level) in [(0, 0), (1, k - 1)] {
        for i in 0..3 {
            edges.push((cap, p(i, level)));
            faces.push(vec![cap, p(i, level), p(i + 1, level)]);
        }
    }
    assemble(n, &edges, &faces)
}

/// Replaces the degree-3 vertex `v` by a triangle.
///
/// Remaining vertices keep their relative order (indices above `v` shift
/// down by one); the new vertices are appended, the `i`-th attached to the
/// `i`-th smallest former neighbor of `v`.
pub fn delta_expansion(sk: &TwoSkeleton, v: usize) -> Result<TwoSkeleton> {
    let g = sk.graph();
    g.check_vertex(v)?;
    if !sk.is_polyhedral() {
        return Err(FamilyError::NotPolyhedral);
    }
    if g.degree(v) != 3 {
        return Err(FamilyError::NotCubicVertex { vertex: v, degree: g.degree(v) });
    }
    let n = g.n();
    let relabel = |w: usize| if w > v { w - 1 } else { w };
    let nbrs = g.neighbors(v).to_vec();
    let fresh = |w: usize| n - 1 + nbrs.iter().position(|&x| x == w).expect("neighbor of v");

    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().filter(|&&(a, b)| a != v && b != v).map(|&(a, b)| (relabel(a), relabel(b))).collect();
    for (i, &w) in nbrs.iter().enumerate() {
        edges.push((relabel(w), n - 1 + i));
    }
    edges.extend([(n - 1, n), (n, n + 1), (n - 1, n + 1)]);

    let mut faces = Vec::with_capacity(sk.faces().len() + 1);
    for face in sk.faces() {
        let cycle = face.vertices();
        let len = cycle.len();
        let mut out = Vec::with_capacity(len + 1);
        for i in 0..len {
            if cycle[i] == v {
                let before = cycle[(i + len - 1) % len];
                let after = cycle[(i + 1) % len];
                out.push(fresh(before));
                out.push(fresh(after));
            } else {
                out.push(relabel(cycle[i]));
            }
        }
        faces.push(out);
    }
    faces.push(vec![n - 1, n, n + 1]);
    assemble(n + 2, &edges, &faces)
}

/// Per-condition outcome of the sufficient test for a resistance-positive
/// expansion of a simple 3-polytope at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaHypotheses {
    /// Every face vector lies in {3, 4, 5}^3.
    pub faces_at_most_five: bool,
    /// No vertex has face vector (5, 5, 5).
    pub no_all_fives: bool,
    /// At most one face at the target vertex is a pentagon.
    pub one_pentagon_at_target: bool,
    /// For each neighbor, its face away from the target has at most 4 edges.
    pub far_faces_small: bool,
    /// No vertex on the target's faces has face vector (5, 5, 4).
    pub no_554_nearby: bool,
}

impl DeltaHypotheses {
    pub fn holds(&self) -> bool {
        self.faces_at_most_five
            && self.no_all_fives
            && self.one_pentagon_at_target
            && self.far_faces_small
            && self.no_554_nearby
    }
}

fn require_simple(sk: &TwoSkeleton) -> Result<()> {
    if !sk.is_polyhedral() {
        return Err(FamilyError::NotPolyhedral);
    }
    let g = sk.graph();
    match (0..g.n()).find(|&w| g.degree(w) != 3) {
        Some(w) => Err(FamilyError::NotSimple { vertex: w, degree: g.degree(w) }),
        None => Ok(()),
    }
}

pub fn delta_hypotheses(sk: &TwoSkeleton, v: usize) -> Result<DeltaHypotheses> {
    require_simple(sk)?;
    let g = sk.graph();
    g.check_vertex(v)?;
    let vectors: Vec<Vec<usize>> = (0..g.n()).map(|w| face_vector(sk, w)).collect::<std::result::Result<_, _>>()?;

    let faces_at_most_five = vectors.iter().flatten().all(|&l| (3..=5).contains(&l));
    let no_all_fives = vectors.iter().all(|l| l != &[5, 5, 5]);
    let one_pentagon_at_target = vectors[v].iter().filter(|&&l| l == 5).count() <= 1;
    let at_v = sk.vertex_faces(v);
    let far_faces_small = g
        .neighbors(v)
        .iter()
        .all(|&u| sk.vertex_faces(u).iter().filter(|f| !at_v.contains(f)).all(|&f| sk.face(f).len() <= 4));
    let no_554_nearby = at_v.iter().flat_map(|&f| sk.face(f).vertices()).all(|&w| vectors[w] != [5, 5, 4]);

    Ok(DeltaHypotheses { faces_at_most_five, no_all_fives, one_pentagon_at_target, far_faces_small, no_554_nearby })
}

/// What a generated vertex is, for labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexRole {
    /// Simplex, hypercube (bitmask) or polygon vertex.
    Corner(usize),
    Bottom(usize),
    Top(usize),
    Base(usize),
    Apex,
    Square(usize),
    Octagon(usize),
    Cap(TubeEnd),
    Level {
        level: usize,
        position: usize,
    },
    /// A vertex surviving an expansion, with its index before the expansion.
    Kept(usize),
    /// A vertex of the triangle created by an expansion.
    Cut(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TubeEnd {
    X,
    Y,
}

/// A generator invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Simplex { dim: usize },
    Hypercube { dim: usize },
    Polygon { n: usize },
    Prism { n: usize },
    Pyramid { n: usize },
    SquareCupola,
    Tube { k: usize },
    DeltaExpansion { base: Box<FamilySpec>, vertex: usize },
}

/// A generated skeleton with its role table.
#[derive(Debug, Clone)]
pub struct Generated {
    pub skeleton: TwoSkeleton,
    pub roles: Vec<VertexRole>,
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Generated> {
        use VertexRole::*;
        let (skeleton, roles) = match self {
            FamilySpec::Simplex { dim } => {
                let sk = simplex_skeleton(*dim)?;
                (sk, (0..dim + 1).map(Corner).collect())
            }
            FamilySpec::Hypercube { dim } => {
                let sk = hypercube_skeleton(*dim)?;
                (sk, (0..1usize << dim).map(Corner).collect())
            }
            FamilySpec::Polygon { n } => (polygon_skeleton(*n)?, (0..*n).map(Corner).collect()),
            FamilySpec::Prism { n } => {
                let roles = (0..*n).map(Bottom).chain((0..*n).map(Top)).collect();
                (prism_skeleton(*n)?, roles)
            }
            FamilySpec::Pyramid { n } => {
                let roles = (0..*n).map(Base).chain([Apex]).collect();
                (pyramid_skeleton(*n)?, roles)
            }
            FamilySpec::SquareCupola => {
                let roles = (0..4).map(Square).chain((0..8).map(Octagon)).collect();
                (square_cupola_skeleton(), roles)
            }
            FamilySpec::Tube { k } => {
                let mut roles = vec![Cap(TubeEnd::X), Cap(TubeEnd::Y)];
                for level in 0..*k {
                    roles.extend((0..3).map(|position| Level { level, position }));
                }
                (tube_skeleton(*k)?, roles)
            }
            FamilySpec::DeltaExpansion { base, vertex } => {
                let inner = base.generate()?;
                let sk = delta_expansion(&inner.skeleton, *vertex)?;
                let n = inner.skeleton.graph().n();
                let roles = (0..n).filter(|&w| w != *vertex).map(Kept).chain((0..3).map(Cut)).collect();
                (sk, roles)
            }
        };
        Ok(Generated { skeleton, roles })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::skeletons_isomorphic;
    use crate::skeleton::flag_counts;
    use std::collections::BTreeMap;

    pub(crate) fn dodecahedron() -> TwoSkeleton {
        let (a, b, c, d) = (|i: usize| i % 5, |i: usize| 5 + i % 5, |i: usize| 10 + i % 5, |i: usize| 15 + i % 5);
        let mut edges = Vec::new();
        let mut faces = vec![(0..5).map(a).collect::<Vec<_>>(), (0..5).map(d).collect()];
        for i in 0..5 {
            edges.extend([(a(i), a(i + 1)), (a(i), b(i)), (b(i), c(i)), (c(i), b(i + 1))]);
            edges.extend([(c(i), d(i)), (d(i), d(i + 1))]);
            faces.push(vec![a(i), a(i + 1), b(i + 1), c(i), b(i)]);
            faces.push(vec![c(i), b(i + 1), c(i + 1), d(i + 1), d(i)]);
        }
        assemble(20, &edges, &faces).unwrap()
    }

    fn counts(sk: &TwoSkeleton) -> (usize, usize, usize) {
        (sk.graph().n(), sk.graph().m(), sk.faces().len())
    }

    fn face_lengths(sk: &TwoSkeleton) -> Vec<usize> {
        let mut v: Vec<usize> = sk.faces().iter().map(|f| f.len()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn simplices() {
        let t = simplex_skeleton(3).unwrap();
        assert!(t.is_polyhedral());
        assert_eq!(counts(&simplex_skeleton(5).unwrap()), (6, 15, 20));
        assert_eq!(counts(&simplex_skeleton(2).unwrap()), (3, 3, 1));
        assert!(simplex_skeleton(1).is_err());
    }

    #[test]
    fn hypercubes() {
        assert_eq!(counts(&hypercube_skeleton(3).unwrap()), (8, 12, 6));
        assert_eq!(counts(&hypercube_skeleton(4).unwrap()), (16, 32, 24));
        for d in 2..=6 {
            let sk = hypercube_skeleton(d).unwrap();
            assert!((0..sk.graph().m()).all(|e| sk.edge_faces(e).len() == d - 1));
        }
    }

    #[test]
    fn prisms_pyramids_cupola() {
        let cube = hypercube_skeleton(3).unwrap();
        assert!(skeletons_isomorphic(&prism_skeleton(4).unwrap(), &cube));
        let p5 = flag_counts(&prism_skeleton(5).unwrap());
        assert_eq!((p5.f0, p5.f1, p5.f2), (10, 15, 7));
        assert_eq!(p5.p_hist, BTreeMap::from([(4, 5), (5, 2)]));
        for n in 3..=12 {
            assert!(prism_skeleton(n).unwrap().is_polyhedral());
            let py = pyramid_skeleton(n).unwrap();
            assert!(py.is_polyhedral());
            assert_eq!(py.graph().degree(n), n);
        }
        let cupola = square_cupola_skeleton();
        assert!(cupola.is_polyhedral());
        let fc = flag_counts(&cupola);
        assert_eq!((fc.f0, fc.f1, fc.f02), (12, 20, 40));
        assert_eq!(fc.d_hist, BTreeMap::from([(3, 8), (4, 4)]));
        assert_eq!(fc.p_hist, BTreeMap::from([(3, 4), (4, 5), (8, 1)]));
        assert!(prism_skeleton(2).is_err());
    }

    #[test]
    fn tubes() {
        let bip = tube_skeleton(1).unwrap();
        assert_eq!(counts(&bip), (5, 9, 6));
        assert!(bip.faces().iter().all(|f| f.len() == 3));
        assert_eq!(counts(&tube_skeleton(3).unwrap()), (11, 21, 12));
        for k in 1..=50 {
            let sk = tube_skeleton(k).unwrap();
            assert_eq!(counts(&sk), (3 * k + 2, 6 * k + 3, 3 * k + 3));
            assert!(sk.is_polyhedral());
        }
        let t4 = tube_skeleton(4).unwrap();
        assert_eq!(face_vector(&t4, 0).unwrap(), vec![3, 3, 3]);
        assert_eq!(face_vector(&t4, tube_vertex(0, 0)).unwrap(), vec![4, 4, 3, 3]);
        assert_eq!(face_vector(&t4, tube_vertex(1, 2)).unwrap(), vec![4, 4, 4, 4]);
        assert!(tube_skeleton(0).is_err());
    }

    #[test]
    fn expansions() {
        let tet = simplex_skeleton(3).unwrap();
        for v in 0..4 {
            let e = delta_expansion(&tet, v).unwrap();
            assert!(skeletons_isomorphic(&e, &prism_skeleton(3).unwrap()));
        }
        let cube = hypercube_skeleton(3).unwrap();
        let e = delta_expansion(&cube, 0).unwrap();
        assert_eq!(counts(&e), (10, 15, 7));
        assert_eq!(face_lengths(&e), vec![3, 4, 4, 4, 5, 5, 5]);
        assert!(e.is_polyhedral());
        assert!((0..10).all(|w| e.graph().degree(w) == 3));
        assert!(matches!(
            delta_expansion(&pyramid_skeleton(4).unwrap(), 4),
            Err(FamilyError::NotCubicVertex { vertex: 4, degree: 4 })
        ));
    }

    #[test]
    fn hypotheses() {
        let tet = simplex_skeleton(3).unwrap();
        assert!((0..4).all(|v| delta_hypotheses(&tet, v).unwrap().holds()));
        let cube = hypercube_skeleton(3).unwrap();
        assert!((0..8).all(|v| delta_hypotheses(&cube, v).unwrap().holds()));
        let dodeca = dodecahedron();
        assert!(dodeca.is_polyhedral());
        let h = delta_hypotheses(&dodeca, 0).unwrap();
        assert!(!h.no_all_fives);
        assert!(!h.holds());
        assert!(matches!(delta_hypotheses(&pyramid_skeleton(4).unwrap(), 0), Err(FamilyError::NotSimple { .. })));
    }

    #[test]
    fn spec_dispatch_and_roles() {
        let spec = FamilySpec::DeltaExpansion { base: Box::new(FamilySpec::Simplex { dim: 3 }), vertex: 2 };
        let generated = spec.generate().unwrap();
        assert_eq!(generated.roles.len(), 6);
        assert_eq!(generated.roles[2], VertexRole::Kept(3));
        assert_eq!(generated.roles[5], VertexRole::Cut(2));
        let tube = FamilySpec::Tube { k: 2 }.generate().unwrap();
        assert_eq!(tube.roles[tube_vertex(2, 1)], VertexRole::Level { level: 1, position: 2 });
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
    }
}
