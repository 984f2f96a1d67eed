// Dual of the square cupola, with DOT output of both.
use polycurv::dot::{export_dot, DotLabels};
use polycurv::families::square_cupola_skeleton;
use polycurv::skeleton::{planar_dual, SkeletonDoc};

pub fn main() {
    let cupola = square_cupola_skeleton();
    let dual = planar_dual(&cupola).unwrap();
    println!("{}", export_dot(&cupola, DotLabels::Forman).unwrap());
    println!("{}", export_dot(&dual.skeleton, DotLabels::Resistance).unwrap());
    println!("{}", serde_json::to_string(&SkeletonDoc::from_skeleton(&dual.skeleton)).unwrap());
}
