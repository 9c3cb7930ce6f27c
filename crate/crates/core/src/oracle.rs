//! Deliberately naive reference computations.
//!
//! Nothing here calls into the mlb-closure, closure or lattice modules: each
//! routine works straight from the definitions over the poset's order
//! relation, so the fast paths can be checked against it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::closure::ClosureRelation;
use crate::error::SizeLimit;
use crate::poset::Poset;
use crate::set::ElementSet;

/// Largest poset [`enumerate_closures_naive`] will scan (`n^n` maps).
pub const NAIVE_CLOSURE_LIMIT: usize = 7;
/// Largest poset [`mlb_closure_by_intersection`] will scan (`2^n` subsets).
pub const INTERSECTION_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    SizeLimit(#[from] SizeLimit),
    #[error("invalid random poset spec: {0}")]
    InvalidSpec(&'static str),
}

/// Every map `P -> P` that is extensive, monotone and idempotent, found by
/// scanning all `|P|^|P|` maps. Sorted by image.
pub fn enumerate_closures_naive(poset: &Poset) -> Result<Vec<ClosureRelation>, SizeLimit> {
    let n = poset.len();
    SizeLimit::check("naive closure enumeration", n, NAIVE_CLOSURE_LIMIT)?;
    let mut found = Vec::new();
    let mut image = vec![0usize; n];
    loop {
        if satisfies_axioms(poset, &image) {
            found.push(
                ClosureRelation::validate(poset, image.clone()).expect("axioms were just checked"),
            );
        }
        // odometer increment; done after wrapping the last digit
        let mut digit = 0;
        loop {
            if digit == n {
                return Ok(found);
            }
            image[digit] += 1;
            if image[digit] < n {
                break;
            }
            image[digit] = 0;
            digit += 1;
        }
    }
}

fn satisfies_axioms(poset: &Poset, image: &[usize]) -> bool {
    let n = image.len();
    (0..n).all(|x| poset.leq(x, image[x]))
        && (0..n).all(|x| (0..n).all(|y| !poset.leq(x, y) || poset.leq(image[x], image[y])))
        && (0..n).all(|x| image[image[x]] == image[x])
}

/// Literal mlb-closedness: every subset's maximal lower bounds lie in `a`.
pub fn is_mlb_closed_naive(poset: &Poset, a: ElementSet) -> bool {
    let n = poset.len();
    a.subsets().all(|b| {
        let lower: Vec<usize> = (0..n).filter(|&z| b.iter().all(|y| poset.leq(z, y))).collect();
        lower
            .iter()
            .filter(|&&z| !lower.iter().any(|&w| w != z && poset.leq(z, w)))
            .all(|&z| a.contains(z))
    })
}

/// Intersection of all mlb-closed supersets of `a`, over all `2^|P|` subsets.
pub fn mlb_closure_by_intersection(poset: &Poset, a: ElementSet) -> Result<ElementSet, SizeLimit> {
    SizeLimit::check("closure by intersection", poset.len(), INTERSECTION_LIMIT)?;
    Ok(poset
        .all()
        .subsets()
        .filter(|&c| a.is_subset(c) && is_mlb_closed_naive(poset, c))
        .fold(poset.all(), |acc, c| acc.intersection(c)))
}

/// Common refinement of two set partitions: all nonempty pairwise block
/// intersections, sorted.
pub fn partition_meet(p: &[ElementSet], q: &[ElementSet]) -> Vec<ElementSet> {
    let mut blocks: Vec<ElementSet> = p
        .iter()
        .flat_map(|&a| q.iter().map(move |&b| a.intersection(b)))
        .filter(|b| !b.is_empty())
        .collect();
    blocks.sort();
    blocks
}

/// The greatest closure below both `h` and `k` among `all`, by scanning.
pub fn meet_by_search<'a>(
    poset: &Poset,
    all: &'a [ClosureRelation],
    h: &ClosureRelation,
    k: &ClosureRelation,
) -> Option<&'a ClosureRelation> {
    let below = |a: &ClosureRelation, b: &ClosureRelation| {
        (0..poset.len()).all(|x| poset.leq(a.apply(x), b.apply(x)))
    };
    let lower: Vec<&ClosureRelation> = all.iter().filter(|j| below(j, h) && below(j, k)).collect();
    lower
        .iter()
        .find(|&&j| lower.iter().all(|&i| below(i, j)))
        .copied()
}

/// Parameters for [`random_poset`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomPosetSpec {
    pub size: usize,
    /// Chance that each pair `i < j` of indices becomes an order pair.
    pub edge_probability: f64,
    pub seed: u64,
    /// Adjoin a greatest element after generating.
    pub require_top: bool,
}

/// A random poset on labels `p0, p1, ...`: each pair `i < j` is related with
/// the given probability, then the relation is closed transitively. The same
/// spec always yields the same poset.
pub fn random_poset(spec: RandomPosetSpec) -> Result<Poset, OracleError> {
    if spec.size == 0 {
        return Err(OracleError::InvalidSpec("size must be at least 1"));
    }
    if !(0.0..=1.0).contains(&spec.edge_probability) {
        return Err(OracleError::InvalidSpec("edge probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();
    for i in 0..spec.size {
        for j in i + 1..spec.size {
            if rng.gen_bool(spec.edge_probability) {
                edges.push((i, j));
            }
        }
    }
    let labels = (0..spec.size).map(|i| format!("p{i}")).collect();
    let poset = Poset::from_indexed(labels, &edges).map_err(|_| OracleError::InvalidSpec("too many elements"))?;
    if spec.require_top {
        Ok(poset.adjoin_top().expect("generated labels never collide with the top label"))
    } else {
        Ok(poset)
    }
}
