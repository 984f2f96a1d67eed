// Lower and upper bounds around every edge resistance of a prism.
use polycurv::families::prism_skeleton;
use polycurv::resistance::{
    degree_lower_bound, edge_disjoint_paths, forbidden_face_vectors, path_upper_bound, simple3_lower_bound,
    submatrix_lower_bound,
};
use polycurv::resistance_profile;
use polycurv::skeleton::face_vector;

pub fn main() {
    let sk = prism_skeleton(5).unwrap();
    let g = sk.graph();
    let p = resistance_profile(g).unwrap();
    for (e, &(u, v)) in g.edges().iter().enumerate().take(6) {
        let lower = degree_lower_bound(g.degree(u), g.degree(v)).unwrap();
        let sub = submatrix_lower_bound(g, &[u, v, (v + 1) % g.n()], u, v).unwrap();
        let lengths: Vec<usize> = edge_disjoint_paths(g, u, v).unwrap().iter().map(|p| p.len() - 1).collect();
        let upper = path_upper_bound(&lengths).unwrap();
        println!("{u}-{v}: {lower:.4} / {sub:.4} <= {:.4} <= {upper:.4}", p.per_edge[e]);
    }
    let fv = face_vector(&sk, 0).unwrap();
    println!(
        "face vector at 0: {fv:?}, bound {} vs curvature {:.4}",
        simple3_lower_bound(&fv).unwrap(),
        p.per_vertex[0]
    );
    println!("forbidden vectors over 3..6: {:?}", forbidden_face_vectors(3, 6));
}
