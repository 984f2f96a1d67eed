#![allow(dead_code)]

use std::path::{Path, PathBuf};

use polycurv::families::{
    hypercube_skeleton, prism_skeleton, pyramid_skeleton, simplex_skeleton, square_cupola_skeleton, tube_skeleton,
};
use polycurv::planar_code::parse_planar_code;
use polycurv::skeleton::{build_graph, faces_from_rotation, Graph, TwoSkeleton};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn read_corpus(path: &Path) -> Vec<TwoSkeleton> {
    let bytes = std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_planar_code(&bytes[..]).map(|r| faces_from_rotation(&r.unwrap()).unwrap()).collect()
}

/// Every bundled fixture graph (4..=8 vertices).
pub fn fixture_skeletons() -> Vec<TwoSkeleton> {
    (4..=8).flat_map(|n| read_corpus(&fixture_dir().join(format!("p{n}.pc")))).collect()
}

/// 3-dimensional generated families.
pub fn polyhedral_families() -> Vec<(String, TwoSkeleton)> {
    let mut out = vec![
        ("tetrahedron".to_string(), simplex_skeleton(3).unwrap()),
        ("cube".to_string(), hypercube_skeleton(3).unwrap()),
        ("square cupola".to_string(), square_cupola_skeleton()),
    ];
    for n in 3..=12 {
        out.push((format!("prism({n})"), prism_skeleton(n).unwrap()));
        out.push((format!("pyramid({n})"), pyramid_skeleton(n).unwrap()));
    }
    for k in 1..=6 {
        out.push((format!("tube({k})"), tube_skeleton(k).unwrap()));
    }
    out
}

/// Random connected simple graph: a random spanning tree plus extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    build_graph(n, &edges).unwrap()
}

pub fn random_graphs(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let extra = rng.gen_range(0..=2 * n);
            random_connected(&mut rng, n, extra)
        })
        .collect()
}
