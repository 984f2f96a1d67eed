//! Graphs, 2-skeletons and their face statistics.
//!
//! A [`TwoSkeleton`] is the universal input object of this crate: a simple
//! graph on dense vertex indices `0..n` together with its 2-faces, each stored
//! as a cyclic vertex sequence in canonical form. Everything else (curvatures,
//! bounds, exports) reads from it.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or transforming graphs and skeletons.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("face {face} has {len} vertices; at least 3 are required")]
    FaceTooShort { face: usize, len: usize },
    #[error("face {face} repeats vertex {vertex}")]
    RepeatedVertex { face: usize, vertex: usize },
    #[error("face {face} uses the non-edge ({u}, {v})")]
    NotAnEdge { face: usize, u: usize, v: usize },
    #[error("face {face} duplicates face {earlier}")]
    DuplicateFace { face: usize, earlier: usize },
    #[error("rotation at vertex {vertex} is inconsistent: {reason}")]
    InconsistentRotation { vertex: usize, reason: String },
    #[error("Euler test failed: n - m + f = {n} - {m} + {f} != 2")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("skeleton is not polyhedral")]
    NotPolyhedral,
    #[error("faces cannot be oriented coherently around edge ({u}, {v})")]
    NonOrientable { u: usize, v: usize },
    #[error("dual has parallel edges between faces {f} and {g}")]
    DualNotSimple { f: usize, g: usize },
}

pub type Result<T> = std::result::Result<T, SkeletonError>;

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    /// Canonical edge list: `(u, v)` with `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    /// Edge ids incident to each vertex, ordered like `adjacency`.
    incidence: Vec<Vec<usize>>,
    connected: bool,
    duplicates: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) are collapsed and counted in [`Graph::duplicate_edges`].
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(SkeletonError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(SkeletonError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        let duplicates = before - canon.len();

        let mut adjacency = vec![Vec::new(); n];
        let mut incidence = vec![Vec::new(); n];
        for (id, &(u, v)) in canon.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            incidence[u].push(id);
            incidence[v].push(id);
        }
        for v in 0..n {
            let mut pairs: Vec<(usize, usize)> =
                adjacency[v].iter().copied().zip(incidence[v].iter().copied()).collect();
            pairs.sort_unstable();
            adjacency[v] = pairs.iter().map(|p| p.0).collect();
            incidence[v] = pairs.iter().map(|p| p.1).collect();
        }

        let mut graph = Graph { n, adjacency, edges: canon, incidence, connected: false, duplicates };
        graph.connected = n > 0 && graph.bfs(0).iter().all(Option::is_some);
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edge ids at `v`, in the same order as [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Number of duplicate input pairs dropped during construction.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicates
    }

    /// Position of the edge `{u, v}` in the canonical edge list.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(SkeletonError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// `build_graph` in free-function form.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

/// Exact diameter by breadth-first search from every vertex.
pub fn graph_diameter(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(SkeletonError::Disconnected);
    }
    let mut best = 0;
    for s in 0..g.n() {
        for d in g.bfs(s).into_iter().flatten() {
            best = best.max(d);
        }
    }
    Ok(best)
}

/// Cartesian product; vertex `(a, b)` is encoded as `a * h.n() + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut edges = Vec::with_capacity(g.m() * nh + g.n() * h.m());
    for &(a1, a2) in g.edges() {
        for b in 0..nh {
            edges.push((a1 * nh + b, a2 * nh + b));
        }
    }
    for a in 0..g.n() {
        for &(b1, b2) in h.edges() {
            edges.push((a * nh + b1, a * nh + b2));
        }
    }
    Graph::new(g.n() * nh, &edges).expect("product of valid graphs is valid")
}

/// A 2-face stored as a cyclic vertex sequence in canonical form: rotated so
/// the smallest vertex comes first, oriented so the second entry is the
/// smaller of that vertex's two cycle neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face(Vec<usize>);

impl Face {
    /// Canonicalizes a cycle. No validation beyond non-emptiness.
    pub fn new(cycle: &[usize]) -> Self {
        if cycle.is_empty() {
            return Face(Vec::new());
        }
        let len = cycle.len();
        let start = (0..len).min_by_key(|&i| cycle[i]).unwrap_or(0);
        let next = cycle[(start + 1) % len];
        let prev = cycle[(start + len - 1) % len];
        let seq = if next <= prev {
            (0..len).map(|i| cycle[(start + i) % len]).collect()
        } else {
            (0..len).map(|i| cycle[(start + len - i) % len]).collect()
        };
        Face(seq)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges (equivalently vertices) on the boundary.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive vertex pairs around the cycle.
    pub fn boundary(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

/// A graph together with its 2-faces and the incidence tables between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSkeleton {
    graph: Graph,
    faces: Vec<Face>,
    face_edges: Vec<Vec<usize>>,
    edge_faces: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    polyhedral: bool,
}

impl TwoSkeleton {
    /// Attaches 2-faces to a graph, validating every face and evaluating the
    /// polyhedral flag (connected, every edge in exactly two faces, Euler
    /// characteristic 2).
    pub fn new(graph: Graph, cycles: &[Vec<usize>]) -> Result<Self> {
        let n = graph.n();
        let mut faces = Vec::with_capacity(cycles.len());
        let mut face_edges = Vec::with_capacity(cycles.len());
        let mut edge_faces = vec![Vec::new(); graph.m()];
        let mut vertex_faces = vec![Vec::new(); n];
        let mut seen: BTreeMap<Face, usize> = BTreeMap::new();

        for (fi, cycle) in cycles.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(SkeletonError::FaceTooShort { face: fi, len: cycle.len() });
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(SkeletonError::RepeatedVertex { face: fi, vertex: w[0] });
                }
            }
            for &v in cycle {
                graph.check_vertex(v)?;
            }
            let face = Face::new(cycle);
            let mut ids = Vec::with_capacity(face.len());
            for (u, v) in face.boundary() {
                let id = graph.edge_id(u, v).ok_or(SkeletonError::NotAnEdge { face: fi, u, v })?;
                ids.push(id);
            }
            if let Some(&earlier) = seen.get(&face) {
                return Err(SkeletonError::DuplicateFace { face: fi, earlier });
            }
            seen.insert(face.clone(), fi);
            for &id in &ids {
                edge_faces[id].push(fi);
            }
            for &v in face.vertices() {
                vertex_faces[v].push(fi);
            }
            faces.push(face);
            face_edges.push(ids);
        }

        let euler = n as i64 - graph.m() as i64 + faces.len() as i64;
        let polyhedral = graph.is_connected() && edge_faces.iter().all(|fs| fs.len() == 2) && euler == 2;

        Ok(TwoSkeleton { graph, faces, face_edges, edge_faces, vertex_faces, polyhedral })
    }

    /// A skeleton without 2-faces (graph-only input).
    pub fn graph_only(graph: Graph) -> Self {
        TwoSkeleton::new(graph, &[]).expect("an empty face list is always valid")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    /// Edge ids along the boundary of face `f`, in cycle order.
    pub fn face_edges(&self, f: usize) -> &[usize] {
        &self.face_edges[f]
    }

    /// Faces containing edge `e`.
    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    /// Faces containing vertex `v`.
    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    pub fn is_polyhedral(&self) -> bool {
        self.polyhedral
    }

    pub fn max_face_len(&self) -> usize {
        self.faces.iter().map(Face::len).max().unwrap_or(0)
    }

    /// Face cycles oriented so that every edge is traversed once in each
    /// direction. Only defined for polyhedral skeletons.
    pub fn oriented_faces(&self) -> Result<Vec<Vec<usize>>> {
        if !self.polyhedral {
            return Err(SkeletonError::NotPolyhedral);
        }
        let mut oriented: Vec<Option<Vec<usize>>> = vec![None; self.faces.len()];
        let runs = |cycle: &[usize], a: usize, b: usize| {
            let len = cycle.len();
            (0..len).any(|i| cycle[i] == a && cycle[(i + 1) % len] == b)
        };
        for root in 0..self.faces.len() {
            if oriented[root].is_some() {
                continue;
            }
            oriented[root] = Some(self.faces[root].vertices().to_vec());
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let cycle = oriented[f].clone().unwrap_or_default();
                let len = cycle.len();
                for i in 0..len {
                    let (a, b) = (cycle[i], cycle[(i + 1) % len]);
                    let e = self.graph.edge_id(a, b).ok_or(SkeletonError::NotPolyhedral)?;
                    for &g in &self.edge_faces[e] {
                        if g == f {
                            continue;
                        }
                        match &oriented[g] {
                            Some(cg) => {
                                if !runs(cg, b, a) {
                                    return Err(SkeletonError::NonOrientable { u: a, v: b });
                                }
                            }
                            None => {
                                let mut cg = self.faces[g].vertices().to_vec();
                                if !runs(&cg, b, a) {
                                    cg.reverse();
                                }
                                oriented[g] = Some(cg);
                                queue.push_back(g);
                            }
                        }
                    }
                }
            }
        }
        Ok(oriented.into_iter().map(Option::unwrap_or_default).collect())
    }

    /// A rotation system whose face tracing reproduces this skeleton's faces.
    pub fn rotation_system(&self) -> Result<RotationSystem> {
        let oriented = self.oriented_faces()?;
        let n = self.graph.n();
        // next[v][u] = w when some face runs u -> v -> w.
        let mut next: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for cycle in &oriented {
            let len = cycle.len();
            for i in 0..len {
                let (u, v, w) = (cycle[i], cycle[(i + 1) % len], cycle[(i + 2) % len]);
                next[v].insert(u, w);
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, succ) in next.iter().enumerate() {
            let deg = self.graph.degree(v);
            let Some(&start) = self.graph.neighbors(v).first() else {
                rotations.push(Vec::new());
                continue;
            };
            let mut order = vec![start];
            let mut cur = start;
            while order.len() < deg {
                cur = *succ.get(&cur).ok_or(SkeletonError::NotPolyhedral)?;
                if cur == start {
                    break;
                }
                order.push(cur);
            }
            if order.len() != deg {
                return Err(SkeletonError::InconsistentRotation {
                    vertex: v,
                    reason: "faces around the vertex do not form a single cycle".into(),
                });
            }
            rotations.push(order);
        }
        RotationSystem::new(rotations)
    }
}

/// `attach_faces` in free-function form.
pub fn attach_faces(graph: Graph, faces: &[Vec<usize>]) -> Result<TwoSkeleton> {
    TwoSkeleton::new(graph, faces)
}

/// Descending lengths of the faces incident to `v`.
pub fn face_vector(sk: &TwoSkeleton, v: usize) -> Result<Vec<usize>> {
    sk.graph().check_vertex(v)?;
    let mut lens: Vec<usize> = sk.vertex_faces(v).iter().map(|&f| sk.face(f).len()).collect();
    lens.sort_unstable_by(|a, b| b.cmp(a));
    Ok(lens)
}

/// Cyclic neighbor order at every vertex, as read from a planar embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotations.len();
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(SkeletonError::InconsistentRotation {
                        vertex: v,
                        reason: format!("neighbor {} listed twice", w[0]),
                    });
                }
            }
            for &u in rot {
                if u >= n {
                    return Err(SkeletonError::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(SkeletonError::SelfLoop(v));
                }
                if !rotations[u].contains(&v) {
                    return Err(SkeletonError::InconsistentRotation {
                        vertex: v,
                        reason: format!("lists {u} but {u} does not list {v}"),
                    });
                }
            }
        }
        Ok(RotationSystem { rotations })
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(v, rot)| rot.iter().filter(move |&&u| v < u).map(move |&u| (v, u)))
            .collect();
        Graph::new(self.n(), &edges).expect("validated rotation system")
    }

    /// Traces the faces of the embedding: the successor of the dart `(u, v)`
    /// is `(v, w)` where `w` follows `u` in the cyclic order at `v`.
    pub fn trace_faces(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let offsets: Vec<usize> = std::iter::once(0)
            .chain(self.rotations.iter().scan(0, |acc, r| {
                *acc += r.len();
                Some(*acc)
            }))
            .collect();
        let mut used = vec![false; offsets[n]];
        let position = |v: usize, u: usize| self.rotations[v].iter().position(|&x| x == u);
        let mut faces = Vec::new();
        for v in 0..n {
            for (i, &w) in self.rotations[v].iter().enumerate() {
                if used[offsets[v] + i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b, mut slot) = (v, w, i);
                while !used[offsets[a] + slot] {
                    used[offsets[a] + slot] = true;
                    face.push(a);
                    let p = position(b, a).unwrap_or(0);
                    let deg = self.rotations[b].len();
                    let c = self.rotations[b][(p + 1) % deg];
                    slot = (p + 1) % deg;
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Derives the 2-skeleton of a planar embedding by face tracing.
pub fn faces_from_rotation(rot: &RotationSystem) -> Result<TwoSkeleton> {
    let graph = rot.to_graph();
    let faces = rot.trace_faces();
    let (n, m, f) = (graph.n(), graph.m(), faces.len());
    if n as i64 - m as i64 + f as i64 != 2 || !graph.is_connected() {
        return Err(SkeletonError::EulerViolation { n, m, f });
    }
    TwoSkeleton::new(graph, &faces)
}

/// Exact face statistics of a skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCounts {
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
    /// Vertex-in-face incidences.
    pub f02: u64,
    /// Edge-in-face incidences.
    pub f12: u64,
    /// Degree `k` mapped to the number of vertices of that degree.
    pub d_hist: BTreeMap<u64, u64>,
    /// Gon count `k` mapped to the number of `k`-gonal faces.
    pub p_hist: BTreeMap<u64, u64>,
}

pub fn flag_counts(sk: &TwoSkeleton) -> FlagCounts {
    let g = sk.graph();
    let mut d_hist = BTreeMap::new();
    for v in 0..g.n() {
        *d_hist.entry(g.degree(v) as u64).or_insert(0) += 1;
    }
    let mut p_hist = BTreeMap::new();
    for face in sk.faces() {
        *p_hist.entry(face.len() as u64).or_insert(0) += 1;
    }
    FlagCounts {
        f0: g.n() as u64,
        f1: g.m() as u64,
        f2: sk.faces().len() as u64,
        f02: (0..g.n()).map(|v| sk.vertex_faces(v).len() as u64).sum(),
        f12: (0..g.m()).map(|e| sk.edge_faces(e).len() as u64).sum(),
        d_hist,
        p_hist,
    }
}

/// Planar dual of a polyhedral skeleton, together with the edge
/// correspondence: primal edge `i` maps to dual edge `sigma[i]`.
#[derive(Debug, Clone)]
pub struct Dual {
    pub skeleton: TwoSkeleton,
    pub edge_map: Vec<usize>,
}

pub fn planar_dual(sk: &TwoSkeleton) -> Result<Dual> {
    let oriented = sk.oriented_faces()?;
    let g = sk.graph();
    let nf = oriented.len();

    let mut dual_edges = Vec::with_capacity(g.m());
    for e in 0..g.m() {
        let fs = sk.edge_faces(e);
        dual_edges.push((fs[0], fs[1]));
    }
    let dual_graph = Graph::new(nf, &dual_edges)?;
    if dual_graph.duplicate_edges() > 0 {
        let (f, gg) = first_repeat(&dual_edges);
        return Err(SkeletonError::DualNotSimple { f, g: gg });
    }

    // The face running u -> v -> w sits between darts (u,v) and (v,w) at v.
    let mut corner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, cycle) in oriented.iter().enumerate() {
        let len = cycle.len();
        for i in 0..len {
            corner.insert((cycle[i], cycle[(i + 1) % len]), fi);
        }
    }
    let rot = sk.rotation_system()?;
    let mut dual_faces = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let cycle: Vec<usize> = rot
            .rotation(v)
            .iter()
            .map(|&u| corner.get(&(u, v)).copied().ok_or(SkeletonError::NotPolyhedral))
            .collect::<Result<_>>()?;
        dual_faces.push(cycle);
    }
    let skeleton = TwoSkeleton::new(dual_graph, &dual_faces)?;
    let edge_map = dual_edges.iter().map(|&(f, h)| skeleton.graph().edge_id(f, h).expect("dual edge exists")).collect();
    Ok(Dual { skeleton, edge_map })
}

fn first_repeat(pairs: &[(usize, usize)]) -> (usize, usize) {
    let mut seen = std::collections::BTreeSet::new();
    for &(a, b) in pairs {
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return key;
        }
    }
    (0, 0)
}

/// The JSON skeleton document: `{"n": .., "edges": [[u, v], ..], "faces": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
}

impl SkeletonDoc {
    pub fn from_skeleton(sk: &TwoSkeleton) -> Self {
        let g = sk.graph();
        SkeletonDoc {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            faces: if sk.faces().is_empty() {
                None
            } else {
                Some(sk.faces().iter().map(|f| f.vertices().to_vec()).collect())
            },
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &edges)
    }

    pub fn to_skeleton(&self) -> Result<TwoSkeleton> {
        let graph = self.to_graph()?;
        TwoSkeleton::new(graph, self.faces.as_deref().unwrap_or(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn tetra() -> TwoSkeleton {
        TwoSkeleton::new(k4(), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn build_graph_examples() {
        let p2 = build_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.m(), 1);
        assert!(p2.is_connected());

        let g = k4();
        assert!((0..4).all(|v| g.degree(v) == 3));

        let dup = build_graph(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.m(), 1);
        assert_eq!(dup.duplicate_edges(), 1);
        assert!(!dup.is_connected());
    }

    #[test]
    fn build_graph_errors() {
        assert_eq!(build_graph(2, &[(0, 2)]), Err(SkeletonError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(build_graph(2, &[(1, 1)]), Err(SkeletonError::SelfLoop(1)));
    }

    #[test]
    fn canonical_face_form() {
        assert_eq!(Face::new(&[2, 0, 1]).vertices(), &[0, 1, 2]);
        assert_eq!(Face::new(&[3, 2, 1, 0]).vertices(), &[0, 1, 2, 3]);
        assert_eq!(Face::new(&[5, 0, 7, 3]).vertices(), &[0, 5, 3, 7]);
    }

    #[test]
    fn attach_faces_examples() {
        assert!(tetra().is_polyhedral());
        let partial = attach_faces(k4(), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(!partial.is_polyhedral());
    }

    #[test]
    fn attach_faces_errors() {
        let sq = cycle(4);
        assert!(matches!(
            attach_faces(sq.clone(), &[vec![0, 1, 2]]),
            Err(SkeletonError::NotAnEdge { face: 0, u: 2, v: 0 })
        ));
        assert!(matches!(
            attach_faces(k4(), &[vec![0, 1, 0, 2]]),
            Err(SkeletonError::RepeatedVertex { face: 0, vertex: 0 })
        ));
        assert!(matches!(
            attach_faces(k4(), &[vec![0, 1, 2], vec![2, 1, 0]]),
            Err(SkeletonError::DuplicateFace { face: 1, earlier: 0 })
        ));
        assert!(matches!(attach_faces(sq, &[vec![0, 1]]), Err(SkeletonError::FaceTooShort { face: 0, len: 2 })));
    }

    #[test]
    fn tetrahedron_rotation_traces_four_triangles() {
        let rot = RotationSystem::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap();
        let sk = faces_from_rotation(&rot).unwrap();
        assert_eq!(sk.faces().len(), 4);
        assert!(sk.faces().iter().all(|f| f.len() == 3));
        assert!(sk.is_polyhedral());
    }

    #[test]
    fn k5_rotation_fails_euler() {
        let rot: Vec<Vec<usize>> = (0..5).map(|v| (0..5).filter(|&u| u != v).collect()).collect();
        let rot = RotationSystem::new(rot).unwrap();
        assert!(matches!(faces_from_rotation(&rot), Err(SkeletonError::EulerViolation { .. })));
    }

    #[test]
    fn inconsistent_rotation_rejected() {
        let err = RotationSystem::new(vec![vec![1], vec![]]).unwrap_err();
        assert!(matches!(err, SkeletonError::InconsistentRotation { vertex: 0, .. }));
    }

    #[test]
    fn rotation_round_trip_on_tetrahedron() {
        let sk = tetra();
        let rot = sk.rotation_system().unwrap();
        let traced = faces_from_rotation(&rot).unwrap();
        let mut a = sk.faces().to_vec();
        let mut b = traced.faces().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn cartesian_product_examples() {
        let c3 = cycle(3);
        let one = Graph::new(1, &[]).unwrap();
        let same = cartesian_product(&c3, &one);
        assert_eq!((same.n(), same.m()), (3, 3));

        let prism = cartesian_product(&c3, &path(2));
        assert_eq!((prism.n(), prism.m()), (6, 9));
        assert!((0..6).all(|v| prism.degree(v) == 3));

        let tube = cartesian_product(&c3, &path(4));
        assert_eq!((tube.n(), tube.m()), (12, 21));
    }

    #[test]
    fn flag_counts_tetrahedron() {
        let fc = flag_counts(&tetra());
        assert_eq!((fc.f0, fc.f1, fc.f2, fc.f02, fc.f12), (4, 6, 4, 12, 12));
        assert_eq!(fc.d_hist, BTreeMap::from([(3, 4)]));
        assert_eq!(fc.p_hist, BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn dual_of_tetrahedron_is_tetrahedron() {
        let d = planar_dual(&tetra()).unwrap();
        let s = &d.skeleton;
        assert_eq!((s.graph().n(), s.graph().m(), s.faces().len()), (4, 6, 4));
        assert!(s.is_polyhedral());
        let mut seen = d.edge_map.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn dual_rejects_non_polyhedral() {
        let sk = TwoSkeleton::graph_only(k4());
        assert!(matches!(planar_dual(&sk), Err(SkeletonError::NotPolyhedral)));
    }

    #[test]
    fn face_vector_and_errors() {
        assert_eq!(face_vector(&tetra(), 0).unwrap(), vec![3, 3, 3]);
        assert!(face_vector(&tetra(), 9).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(graph_diameter(&k4()).unwrap(), 1);
        assert_eq!(graph_diameter(&cycle(8)).unwrap(), 4);
        let disconnected = Graph::new(2, &[]).unwrap();
        assert_eq!(graph_diameter(&disconnected), Err(SkeletonError::Disconnected));
    }

    #[test]
    fn json_doc_round_trip() {
        let doc = SkeletonDoc::from_skeleton(&tetra());
        let text = serde_json::to_string(&doc).unwrap();
        let back: SkeletonDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_skeleton().unwrap(), tetra());

        let graph_only: SkeletonDoc = serde_json::from_str(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
        assert!(graph_only.faces.is_none());
        assert_eq!(graph_only.to_skeleton().unwrap().faces().len(), 0);
    }
}
