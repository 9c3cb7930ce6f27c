mod common;

use closure_lattice::oracle::{enumerate_closures_naive, meet_by_search};
use closure_lattice::{
    enumerate_closed_interval, fixtures, ClosureRelation, JoinAlgorithm, LcLattice, Poset, DEFAULT_SIZE_LIMIT,
};
use common::{config, poset_strategy};
use proptest::prelude::*;

fn all_closures(p: &Poset) -> Vec<ClosureRelation> {
    LcLattice::build(p, DEFAULT_SIZE_LIMIT).unwrap().closures()
}

#[test]
fn round_trips_on_fixtures() {
    for (name, p) in fixtures::all() {
        let family = enumerate_closed_interval(&p, DEFAULT_SIZE_LIMIT).unwrap();
        for &a in family.sets() {
            let h = ClosureRelation::from_closed_set(&p, a).unwrap();
            assert_eq!(h.closed_set(), a, "{name}");
            let again = ClosureRelation::from_closed_set(&p, h.closed_set()).unwrap();
            assert_eq!(again, h, "{name}");
            let validated = ClosureRelation::validate(&p, h.image().to_vec()).unwrap();
            assert_eq!(validated, h, "{name}");
        }
    }
}

#[test]
fn order_three_ways_on_diamond() {
    let d = fixtures::diamond();
    let closures = all_closures(&d);
    assert_eq!(closures.len(), 7);
    for h in &closures {
        for k in &closures {
            let pointwise = h.leq(k).unwrap();
            assert_eq!(pointwise, h.to_partition().refines(&k.to_partition()));
            assert_eq!(pointwise, k.closed_set().is_subset(h.closed_set()));
        }
    }
}

#[test]
fn lattice_laws_on_fixtures() {
    for (name, p) in fixtures::all() {
        let cs = all_closures(&p);
        for a in &cs {
            assert_eq!(&a.join(a).unwrap(), a);
            assert_eq!(&a.meet(a).unwrap(), a);
            for b in &cs {
                let ab = a.join(b).unwrap();
                let mab = a.meet(b).unwrap();
                assert_eq!(ab, b.join(a).unwrap(), "{name}");
                assert_eq!(mab, b.meet(a).unwrap(), "{name}");
                assert_eq!(&a.join(&mab).unwrap(), a, "{name}: absorption");
                assert_eq!(&a.meet(&ab).unwrap(), a, "{name}: absorption");
                for c in &cs {
                    assert_eq!(ab.join(c).unwrap(), a.join(&b.join(c).unwrap()).unwrap(), "{name}");
                    assert_eq!(mab.meet(c).unwrap(), a.meet(&b.meet(c).unwrap()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn n_ary_operations_fold_binary_ones() {
    let d = fixtures::diamond();
    let cs = all_closures(&d);
    let folded_join = cs.iter().skip(1).fold(cs[0].clone(), |acc, h| acc.join(h).unwrap());
    assert_eq!(ClosureRelation::join_all(&d, &cs).unwrap(), folded_join);
    assert_eq!(
        ClosureRelation::join_all_with(&d, &cs, JoinAlgorithm::PartitionJoin).unwrap(),
        folded_join
    );
    let folded_meet = cs.iter().skip(1).fold(cs[0].clone(), |acc, h| acc.meet(h).unwrap());
    assert_eq!(ClosureRelation::meet_all(&d, &cs).unwrap(), folded_meet);
    assert_eq!(folded_meet, ClosureRelation::identity(&d));
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn join_algorithms_agree(p in poset_strategy(6, false)) {
        let cs = all_closures(&p);
        for h in &cs {
            for k in &cs {
                let by_sets = h.join_with(k, JoinAlgorithm::ClosedSetIntersection).unwrap();
                let by_blocks = h.join_with(k, JoinAlgorithm::PartitionJoin).unwrap();
                prop_assert_eq!(&by_sets, &by_blocks);
                prop_assert!(h.leq(&by_sets).unwrap() && k.leq(&by_sets).unwrap());
            }
        }
    }

    #[test]
    fn meet_is_greatest_lower_bound(p in poset_strategy(5, false)) {
        let naive = enumerate_closures_naive(&p).unwrap();
        let cs = all_closures(&p);
        for h in &cs {
            for k in &cs {
                let searched = meet_by_search(&p, &naive, h, k).unwrap();
                prop_assert_eq!(searched, &h.meet(k).unwrap());
            }
        }
    }

    #[test]
    fn order_agrees_with_partitions_and_closed_sets(p in poset_strategy(6, false)) {
        let cs = all_closures(&p);
        for h in &cs {
            let partition = h.to_partition();
            prop_assert_eq!(partition.len(), h.closed_set().len());
            prop_assert_eq!(partition.leaders(), h.closed_set());
            for k in &cs {
                let pointwise = h.leq(k).unwrap();
                prop_assert_eq!(pointwise, partition.refines(&k.to_partition()));
                prop_assert_eq!(pointwise, k.closed_set().is_subset(h.closed_set()));
            }
        }
    }

    #[test]
    fn closures_fix_exactly_their_closed_set(p in poset_strategy(6, false)) {
        for h in all_closures(&p) {
            for x in 0..p.len() {
                prop_assert_eq!(h.apply(x), p.min_above(h.closed_set(), x).unwrap());
                prop_assert!(p.leq(x, h.apply(x)));
            }
        }
    }
}

#[test]
fn mismatched_posets_are_rejected() {
    let a = fixtures::diamond();
    let b = fixtures::diamond();
    let ha = ClosureRelation::identity(&a);
    let hb = ClosureRelation::identity(&b);
    assert!(ha.join(&hb).is_err());
    assert!(ha.meet(&hb).is_err());
    assert!(ha.leq(&hb).is_err());
    // clones share identity
    let a2 = a.clone();
    assert!(ha.join(&ClosureRelation::top(&a2)).is_ok());
}
