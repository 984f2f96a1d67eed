// Closed-form tube resistances and curvatures against the numeric solver.
use polycurv::tube_spectral::{verify_tube, EdgeKind, TubeClosedForm, TubeRole};

pub fn main() {
    let t = TubeClosedForm::new(6).unwrap();
    println!("phi = {:.12}", t.phi());
    for level in 0..3 {
        println!(
            "level {level}: cycle {:.9} path {:.9} curvature {:.9}",
            t.resistance(EdgeKind::Cycle, level).unwrap(),
            t.resistance(EdgeKind::Path, level).unwrap(),
            t.curvature(TubeRole::Level(level)).unwrap()
        );
    }
    println!("cap curvature {:.9}", t.curvature(TubeRole::Cap).unwrap());
    for k in [1, 5, 20] {
        let c = verify_tube(k).unwrap();
        println!(
            "k = {k}: max errors {:.1e} / {:.1e}, end-level gap {:.1e}, passes {}",
            c.resistance_error,
            c.curvature_error,
            c.end_level_gap,
            c.passes(1e-9)
        );
    }
    let huge = TubeClosedForm::new(10_000).unwrap();
    println!("k = 10000: ln(min curvature) = {:.3}", huge.ln_min_curvature());
}
