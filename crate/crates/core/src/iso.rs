//! Brute-force isomorphism for small graphs and skeletons.
//!
//! Backtracking over vertex maps with degree and face-vector pruning. Meant
//! for tests and the hexagonal-pyramid screen, i.e. a dozen vertices or so.

use std::collections::BTreeSet;

use crate::skeleton::{face_vector, Graph, TwoSkeleton};

/// A vertex map `a -> b` witnessing isomorphism, if one exists.
pub fn graph_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let la: Vec<Vec<usize>> = (0..a.n()).map(|v| vec![a.degree(v)]).collect();
    let lb: Vec<Vec<usize>> = (0..b.n()).map(|v| vec![b.degree(v)]).collect();
    search(a, b, &la, &lb, |_| true)
}

pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    graph_isomorphism(a, b).is_some()
}

/// Isomorphism of skeletons: the vertex map must also carry faces onto faces.
pub fn skeleton_isomorphism(a: &TwoSkeleton, b: &TwoSkeleton) -> Option<Vec<usize>> {
    if a.faces().len() != b.faces().len() {
        return None;
    }
    let label = |sk: &TwoSkeleton| -> Vec<Vec<usize>> {
        (0..sk.graph().n())
            .map(|v| {
                let mut l = vec![sk.graph().degree(v)];
                l.extend(face_vector(sk, v).unwrap_or_default());
                l
            })
            .collect()
    };
    let target: BTreeSet<Vec<usize>> = b
        .faces()
        .iter()
        .map(|f| {
            let mut s = f.vertices().to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    search(a.graph(), b.graph(), &label(a), &label(b), |map| {
        a.faces().iter().all(|f| {
            let mut s: Vec<usize> = f.vertices().iter().map(|&v| map[v]).collect();
            s.sort_unstable();
            target.contains(&s)
        })
    })
}

pub fn skeletons_isomorphic(a: &TwoSkeleton, b: &TwoSkeleton) -> bool {
    skeleton_isomorphism(a, b).is_some()
}

fn search(
    a: &Graph,
    b: &Graph,
    la: &[Vec<usize>],
    lb: &[Vec<usize>],
    accept: impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let mut sa: Vec<&Vec<usize>> = la.iter().collect();
    let mut sb: Vec<&Vec<usize>> = lb.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    // Visit vertices in BFS order so each new vertex has mapped neighbors.
    let mut order = Vec::with_capacity(a.n());
    let mut seen = vec![false; a.n()];
    for root in 0..a.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in a.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    if extend(a, b, la, lb, &order, 0, &mut map, &mut used, &accept) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    la: &[Vec<usize>],
    lb: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    accept: &impl Fn(&[usize]) -> bool,
) -> bool {
    if depth == order.len() {
        return accept(map);
    }
    let v = order[depth];
    for w in 0..b.n() {
        if used[w] || la[v] != lb[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| a.has_edge(v, x) == b.has_edge(w, map[x]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, la, lb, order, depth + 1, map, used, accept) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn relabeled_cycle_is_isomorphic() {
        let c = cycle(6);
        let perm = [3, 5, 0, 1, 4, 2];
        let e: Vec<_> = c.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let d = Graph::new(6, &e).unwrap();
        let map = graph_isomorphism(&c, &d).unwrap();
        for &(u, v) in c.edges() {
            assert!(d.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn two_triangles_differ_from_hexagon() {
        let t = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!graphs_isomorphic(&t, &cycle(6)));
    }
}
