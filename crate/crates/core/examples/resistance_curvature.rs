// Effective resistances and resistance curvature on small graphs.
use polycurv::families::{hypercube_skeleton, pyramid_skeleton};
use polycurv::resistance::{effective_resistance, negative_curvature_criterion, transitive_curvature, LaplacianSystem};
use polycurv::resistance_profile;

pub fn main() {
    let cube = hypercube_skeleton(3).unwrap();
    let sys = LaplacianSystem::new(cube.graph()).unwrap();
    for v in [1, 3, 7] {
        println!("cube r(0,{v}) = {:.6}", effective_resistance(&sys, 0, v).unwrap());
    }
    let p = resistance_profile(cube.graph()).unwrap();
    println!("cube curvature {:.6} (transitive value {:.6})", p.min, transitive_curvature(8).unwrap());

    for n in [4, 5, 8] {
        let sk = pyramid_skeleton(n).unwrap();
        let p = resistance_profile(sk.graph()).unwrap();
        let fires = negative_curvature_criterion(sk.graph(), n).unwrap();
        println!("pyramid({n}) apex curvature {:.6}, degree criterion fires: {fires}", p.per_vertex[n]);
    }
}
