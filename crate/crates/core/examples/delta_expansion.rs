// Successive corner truncations of the tetrahedron stay resistance positive.
use polycurv::families::{delta_expansion, delta_hypotheses, FamilySpec};
use polycurv::resistance_profile;

pub fn main() {
    let mut sk = FamilySpec::Simplex { dim: 3 }.generate().unwrap().skeleton;
    for step in 1..=3 {
        let v = sk.graph().n() - 1;
        let hyp = delta_hypotheses(&sk, v).unwrap();
        sk = delta_expansion(&sk, v).unwrap();
        let p = resistance_profile(sk.graph()).unwrap();
        println!(
            "step {step}: {} vertices, hypotheses hold: {}, min curvature {:.6}",
            sk.graph().n(),
            hyp.holds(),
            p.min
        );
    }
    let spec: FamilySpec =
        serde_json::from_str(r#"{"family":"delta_expansion","base":{"family":"hypercube","dim":3},"vertex":0}"#)
            .unwrap();
    let g = spec.generate().unwrap();
    println!("expanded cube roles: {:?}", &g.roles[7..]);
}
