//! The family PSL(2, 2^n): which members have a bipartite graph made of
//! three paths.

use bipdiv::{build_graph, factorize, psl2_degrees, Flavor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=10u32 {
        let q = 1u64 << n;
        let cd = psl2_degrees(q)?;
        let shape = build_graph(&cd, Flavor::Bipartite).classify_shape();
        let small = |m: u64| factorize(m).map(|f| f.factors().len() <= 2);
        println!(
            "q = {q:>4}: cd = {cd}, B = {}, |π(q±1)| <= 2: {}",
            shape.shape,
            small(q - 1)? && small(q + 1)?
        );
    }
    Ok(())
}
