//! Factor a few integers and collect the prime support of a degree set.
//!
//! `cargo run --example factorize -- 6591 1183`

use bipdiv::{factorize, rho, DegreeSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let numbers = if args.is_empty() { vec![21, 1183, 6591, 9_223_372_036_854_775_783] } else { args };
    for &n in &numbers {
        println!("{n} = {}", factorize(n)?);
    }
    let set = DegreeSet::new(numbers.iter().copied())?;
    println!("rho({set}) = {:?}", rho(&set));
    Ok(())
}
