// Diameter, Moore and vertex-count bounds, plus the simplicial averages.
use num_rational::Ratio;
use polycurv::families::{hypercube_skeleton, simplex_skeleton};
use polycurv::forman::{
    forman_diameter_bound, moore_bound, simplicial5_average_bound, simplicial_average, vertex_count_bound, BoundFormula,
};
use polycurv::skeleton::{flag_counts, graph_diameter};

pub fn main() {
    let cube = hypercube_skeleton(3).unwrap();
    let bound = forman_diameter_bound(&cube, Ratio::from_integer(2)).unwrap();
    println!("cube: diameter {} <= {bound}", graph_diameter(cube.graph()).unwrap());
    println!("moore(3, 3) = {}", moore_bound(3, 3).unwrap());
    for rho in [3, 6] {
        let b = vertex_count_bound(Ratio::from_integer(rho), BoundFormula::Stated).unwrap();
        println!("vertex bound at average degree {rho}: about 10^{:.1}", b.log10);
    }
    let s5 = simplex_skeleton(5).unwrap();
    println!("5-simplex average {}", simplicial_average(&flag_counts(&s5)).unwrap());
    println!("simplicial 5-polytope on 7 vertices, 21 edges: average <= {}", simplicial5_average_bound(7, 21).unwrap());
}
