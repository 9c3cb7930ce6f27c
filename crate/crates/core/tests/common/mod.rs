#![allow(dead_code)]

use closure_lattice::oracle::{random_poset, RandomPosetSpec};
use closure_lattice::Poset;
use proptest::prelude::*;

/// Random posets with `1..=max_size` elements (one more with `require_top`).
pub fn poset_strategy(max_size: usize, require_top: bool) -> impl Strategy<Value = Poset> {
    (1..=max_size, 0u32..=10, any::<u64>()).prop_map(move |(size, tenths, seed)| {
        random_poset(RandomPosetSpec {
            size,
            edge_probability: f64::from(tenths) / 10.0,
            seed,
            require_top,
        })
        .unwrap()
    })
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}
