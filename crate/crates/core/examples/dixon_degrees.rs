//! Character degrees of permutation groups by Dixon's modular method.

use bipdiv::chardeg::choose_dixon_prime;
use bipdiv::{character_degrees, PermGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let groups: [(&str, usize, &[&str]); 4] = [
        ("S4", 4, &["(1 2 3 4)", "(1 2)"]),
        ("A5", 5, &["(1 2 3 4 5)", "(1 2 3)"]),
        ("GL(2,3)", 8, &["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)", "(3 6)(4 7)(5 8)"]),
        ("PSL(2,7)", 8, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 8)(2 7)(3 4)(5 6)"]),
    ];
    for (name, deg, gens) in groups {
        let g = PermGroup::from_cycles(deg, gens, 10_000)?;
        let p = choose_dixon_prime(g.order(), g.exponent());
        let degrees = character_degrees(&g)?;
        println!(
            "{name}: |G| = {}, {} classes, p = {p}, degrees {degrees:?}",
            g.order(),
            g.class_count()
        );
    }
    Ok(())
}
