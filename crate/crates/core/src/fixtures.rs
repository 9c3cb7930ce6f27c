//! Small named posets used throughout the tests, benches and CLI examples.

use crate::poset::Poset;

fn build(elements: &[&str], pairs: &[(&str, &str)]) -> Poset {
    Poset::from_covers(elements, pairs).expect("fixture is a valid poset")
}

/// `a < b < c`.
pub fn chain3() -> Poset {
    build(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

/// Two minimal elements `x, y` under a common top `t`.
pub fn lambda() -> Poset {
    build(&["x", "y", "t"], &[("x", "t"), ("y", "t")])
}

/// Two maximal elements `a, b` over a common bottom `c`.
pub fn vee() -> Poset {
    build(&["a", "b", "c"], &[("c", "a"), ("c", "b")])
}

/// The four-element Boolean lattice `z < a, b < w`.
pub fn diamond() -> Poset {
    build(&["z", "a", "b", "w"], &[("z", "a"), ("z", "b"), ("a", "w"), ("b", "w")])
}

/// `c, d` both below both of `a, b`, with a top `t`. Adjoining a bottom does
/// not give a lattice: `a, b` have two maximal lower bounds.
pub fn bowtie1() -> Poset {
    build(
        &["a", "b", "c", "d", "t"],
        &[
            ("c", "a"),
            ("c", "b"),
            ("d", "a"),
            ("d", "b"),
            ("a", "t"),
            ("b", "t"),
        ],
    )
}

/// Two incomparable elements.
pub fn antichain2() -> Poset {
    build(&["a", "b"], &[])
}

/// Six elements with maximal elements `{a, b}` whose mlb-closure is `{a, b, c}`:
/// `c` sits below both `a` and `b`, with `d, e < c` and `f < d`.
pub fn hanging_vee() -> Poset {
    build(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("c", "a"),
            ("c", "b"),
            ("d", "c"),
            ("e", "c"),
            ("f", "d"),
        ],
    )
}

/// Every named fixture, in a fixed order.
pub fn all() -> Vec<(&'static str, Poset)> {
    vec![
        ("chain3", chain3()),
        ("lambda", lambda()),
        ("vee", vee()),
        ("diamond", diamond()),
        ("bowtie1", bowtie1()),
        ("antichain2", antichain2()),
        ("hanging_vee", hanging_vee()),
    ]
}
