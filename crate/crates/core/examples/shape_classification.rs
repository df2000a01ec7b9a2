//! Classify the bipartite graph of several well-known degree sets and show
//! how each B component lines up with the components of Δ and Γ.

use bipdiv::divisor_graphs::diameter_case;
use bipdiv::{DegreeSet, DivisorGraphs};

fn main() {
    let sets: [(&str, &[u64]); 5] = [
        ("S3:A4", &[1, 2, 3, 6]),
        ("order 588", &[1, 6, 12]),
        ("M10", &[1, 9, 10, 16]),
        ("PSL(2,25)", &[1, 13, 24, 25, 26]),
        ("six-cycle", &[1, 21, 1183, 6591]),
    ];
    for (name, degrees) in sets {
        let cd = DegreeSet::new(degrees.iter().copied()).expect("valid degrees");
        let graphs = DivisorGraphs::new(&cd);
        println!("{name} {cd}: B = {}", graphs.bipartite.classify_shape().shape);
        for t in graphs.matched_components() {
            println!(
                "    component diameters B/Δ/Γ = {}/{}/{} ({:?})",
                t.bipartite_diameter,
                t.prime_diameter,
                t.common_diameter,
                diameter_case(t.bipartite_diameter, t.prime_diameter, t.common_diameter)
            );
        }
    }
}
