// Forman curvature of a few polytopes, exact average and parallel sets.
use polycurv::families::{prism_skeleton, square_cupola_skeleton};
use polycurv::forman::{average_via_flags, parallel_neighbors};
use polycurv::forman_profile;
use polycurv::skeleton::flag_counts;

pub fn main() {
    let cupola = square_cupola_skeleton();
    let p = forman_profile(&cupola);
    println!("square cupola: min {} average {} positive {}", p.min, p.average, p.positive);
    for (e, &(u, v)) in cupola.graph().edges().iter().enumerate().take(4) {
        let par = parallel_neighbors(&cupola, e).unwrap();
        println!("  edge {u}-{v}: F = {}, parallels {:?}", p.per_edge[e], par.all());
    }
    for n in 3..=7 {
        let sk = prism_skeleton(n).unwrap();
        let p = forman_profile(&sk);
        let avg = average_via_flags(&flag_counts(&sk)).unwrap();
        assert_eq!(avg, p.average);
        println!("prism({n}): min {} average {}", p.min, avg);
    }
}
