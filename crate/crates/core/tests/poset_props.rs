mod common;

use closure_lattice::{parse_poset, format_poset, ElementSet, Poset};
use common::{config, poset_strategy};
use proptest::prelude::*;

fn check_order_axioms(p: &Poset) -> Result<(), TestCaseError> {
    let n = p.len();
    for x in 0..n {
        prop_assert!(p.leq(x, x));
        for y in 0..n {
            if x != y {
                prop_assert!(!(p.leq(x, y) && p.leq(y, x)));
            }
            for z in 0..n {
                if p.leq(x, y) && p.leq(y, z) {
                    prop_assert!(p.leq(x, z));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn order_is_a_partial_order(p in poset_strategy(7, false)) {
        check_order_axioms(&p)?;
    }

    #[test]
    fn covers_are_the_transitive_reduction(p in poset_strategy(7, false)) {
        let n = p.len();
        for x in 0..n {
            for y in 0..n {
                let between = (0..n).any(|z| p.lt(x, z) && p.lt(z, y));
                prop_assert_eq!(p.covers_of(x).contains(y), p.lt(x, y) && !between);
            }
        }
    }

    #[test]
    fn linear_extension_respects_order(p in poset_strategy(7, false)) {
        let order = p.linear_extension();
        prop_assert_eq!(order.len(), p.len());
        let mut position = vec![0; p.len()];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) {
                    prop_assert!(position[x] < position[y]);
                }
            }
        }
    }

    #[test]
    fn maximal_lower_bounds_edge_cases(p in poset_strategy(7, false)) {
        prop_assert_eq!(p.maximal_lower_bounds(ElementSet::EMPTY), p.maximal_elements());
        for b in 0..p.len() {
            prop_assert_eq!(p.maximal_lower_bounds(ElementSet::singleton(b)), ElementSet::singleton(b));
        }
    }

    #[test]
    fn text_format_round_trip(p in poset_strategy(7, false)) {
        prop_assert_eq!(parse_poset(&format_poset(&p)).unwrap(), p);
    }

    #[test]
    fn adjoined_elements_are_extreme(p in poset_strategy(6, false)) {
        let top = p.adjoin_top().unwrap();
        prop_assert_eq!(top.greatest_element(), Some(p.len()));
        let bottom = p.adjoin_bottom().unwrap();
        prop_assert_eq!(bottom.least_element(), Some(p.len()));
        check_order_axioms(&top)?;
    }
}
