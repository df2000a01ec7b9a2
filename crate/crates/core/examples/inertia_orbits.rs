//! Character degrees from inertia indices: for an abelian normal subgroup N
//! with abelian quotient, the orbit lengths of G on Irr(N) are the degrees.

use bipdiv::{abelian_dual_orbit_indices, cd_set, parse_cycles, PermGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: [(&str, usize, &[&str], &str); 3] = [
        ("S3", 3, &["(1 2)", "(1 2 3)"], "(1 2 3)"),
        ("D4", 4, &["(1 2 3 4)", "(1 3)"], "(1 2 3 4)"),
        ("S3", 3, &["(1 2)", "(1 2 3)"], "(1 2)"),
    ];
    for (name, deg, gens, normal) in cases {
        let g = PermGroup::from_cycles(deg, gens, 1000)?;
        let n = parse_cycles(normal, deg)?;
        match abelian_dual_orbit_indices(&g, &[n]) {
            Ok(orbits) => println!(
                "{name} over <{normal}>: N ≅ {:?}, indices {:?}, cd = {}",
                orbits.cyclic_factors,
                orbits.index_set(),
                cd_set(&g)?
            ),
            Err(e) => println!("{name} over <{normal}>: {e}"),
        }
    }
    Ok(())
}
