//! Graphs built from the character degree set `cd(G)` of a finite group.
//!
//! Three graphs are supported: the bipartite divisor graph `B` on primes and
//! nonlinear degrees, the prime degree graph `Δ`, and the common divisor
//! graph `Γ`. [`divisor_graphs`] builds them and classifies their shapes.
//! Degree sets come from literal input, from closed forms in [`families`],
//! or from permutation generators via Dixon's modular method in
//! [`chardeg`]. [`verify`] checks the known structural statements about
//! these graphs over a corpus and over random degree sets.
//!
//! ```
//! use bipdiv::{build_graph, DegreeSet, Flavor, Shape};
//!
//! let cd: DegreeSet = "1,6,12".parse().unwrap();
//! let b = build_graph(&cd, Flavor::Bipartite);
//! assert_eq!(b.classify_shape().shape, Shape::Cycle(4));
//! ```

pub mod arith;
pub mod chardeg;
pub mod divisor_graphs;
pub mod families;
pub mod permgroup;
pub mod verify;

pub use arith::{factorize, gcd, rho, ArithError, DegreeSet, Factorization};
pub use chardeg::{cd_set, character_degrees, CharDegError};
pub use divisor_graphs::{build_graph, DivisorGraph, DivisorGraphs, Flavor, GraphError, Shape, ShapeVerdict};
pub use families::{builtin_corpus, direct_product_degrees, psl2_degrees, GroupRecord};
pub use permgroup::{abelian_dual_orbit_indices, parse_cycles, GroupError, PermGroup, Permutation};
pub use verify::{verify_all, Report, Status, VerifyOptions};
