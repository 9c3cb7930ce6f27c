//! Inputs shared by the benchmarks.

use closure_lattice::oracle::{random_poset, RandomPosetSpec};
use closure_lattice::Poset;

/// A reproducible random poset of the given size.
pub fn sample_poset(size: usize, seed: u64) -> Poset {
    random_poset(RandomPosetSpec {
        size,
        edge_probability: 0.35,
        seed,
        require_top: false,
    })
    .expect("valid spec")
}
