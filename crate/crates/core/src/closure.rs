//! Closure relations on a poset and their lattice operations.
//!
//! A closure relation `H` is a map `P -> P` that is extensive (`x <= H(x)`),
//! monotone and idempotent. It is determined by its closed set
//! `{x : H(x) = x}`, which is mlb-closed; conversely every mlb-closed set `A`
//! gives the closure `x ↦ min {a in A : a >= x}`.

use std::fmt;

use thiserror::Error;

use crate::mlb::{closed_maximals, mlb_closure, mlb_violation};
use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("image has {found} entries, poset has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("image of element {0} is out of range")]
    OutOfRange(usize),
    #[error("not extensive at element {0}: x <= H(x) fails")]
    NotExtensive(usize),
    #[error("not monotone at elements {0} <= {1}: H({0}) <= H({1}) fails")]
    NotMonotone(usize, usize),
    #[error("not idempotent at element {0}: H(H(x)) != H(x)")]
    NotIdempotent(usize),
    #[error("closed set is not mlb-closed: maximal lower bounds {missing:?} of subset {subset:?} are missing")]
    NotMlbClosed {
        subset: ElementSet,
        missing: ElementSet,
    },
    #[error("closure relations belong to different posets")]
    PosetMismatch,
    #[error("partition-join block {0:?} has no greatest element")]
    BlockWithoutGreatest(ElementSet),
    #[error("partition join and sequential closure disagree at element {0}")]
    SequentialMismatch(usize),
}

/// Which construction [`ClosureRelation::join_with`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JoinAlgorithm {
    /// Intersect the closed sets and rebuild the closure.
    #[default]
    ClosedSetIntersection,
    /// Join the block partitions and send each element to the greatest
    /// element of its block.
    PartitionJoin,
}

/// A validated closure relation.
#[derive(Clone)]
pub struct ClosureRelation {
    poset: Poset,
    image: Vec<usize>,
    closed: ElementSet,
}

impl ClosureRelation {
    /// Checks the three closure axioms, reporting the first failure found
    /// (all extensivity checks come before monotonicity, then idempotence).
    pub fn validate(poset: &Poset, image: Vec<usize>) -> Result<ClosureRelation, ClosureError> {
        let n = poset.len();
        if image.len() != n {
            return Err(ClosureError::WrongLength {
                expected: n,
                found: image.len(),
            });
        }
        if let Some(x) = (0..n).find(|&x| image[x] >= n) {
            return Err(ClosureError::OutOfRange(x));
        }
        if let Some(x) = (0..n).find(|&x| !poset.leq(x, image[x])) {
            return Err(ClosureError::NotExtensive(x));
        }
        for x in 0..n {
            for y in poset.up_set(x) {
                if !poset.leq(image[x], image[y]) {
                    return Err(ClosureError::NotMonotone(x, y));
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| image[image[x]] != image[x]) {
            return Err(ClosureError::NotIdempotent(x));
        }
        let closed = (0..n).filter(|&x| image[x] == x).collect();
        Ok(ClosureRelation {
            poset: poset.clone(),
            image,
            closed,
        })
    }

    /// The closure whose closed elements are exactly `closed`.
    pub fn from_closed_set(poset: &Poset, closed: ElementSet) -> Result<ClosureRelation, ClosureError> {
        if let Some(v) = mlb_violation(poset, closed.intersection(poset.all())) {
            return Err(ClosureError::NotMlbClosed {
                subset: v.subset,
                missing: v.missing,
            });
        }
        Ok(Self::from_closed_set_unchecked(poset, closed))
    }

    /// Caller guarantees `closed` is mlb-closed.
    pub(crate) fn from_closed_set_unchecked(poset: &Poset, closed: ElementSet) -> ClosureRelation {
        let image = (0..poset.len())
            .map(|x| {
                poset
                    .min_above(closed, x)
                    .expect("mlb-closed sets have a least element above every x")
            })
            .collect();
        ClosureRelation {
            poset: poset.clone(),
            image,
            closed,
        }
    }

    /// The identity closure, least element of the lattice.
    pub fn identity(poset: &Poset) -> ClosureRelation {
        ClosureRelation {
            poset: poset.clone(),
            image: (0..poset.len()).collect(),
            closed: poset.all(),
        }
    }

    /// The greatest closure, whose closed set is the closure of the maximal elements.
    pub fn top(poset: &Poset) -> ClosureRelation {
        Self::from_closed_set_unchecked(poset, closed_maximals(poset))
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// `H(x)`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// The fixed points of the closure.
    pub fn closed_set(&self) -> ElementSet {
        self.closed
    }

    fn check_same(&self, other: &ClosureRelation) -> Result<(), ClosureError> {
        if self.poset.same(&other.poset) {
            Ok(())
        } else {
            Err(ClosureError::PosetMismatch)
        }
    }

    /// Pointwise order: `H <= K` when `H(x) <= K(x)` for every `x`.
    pub fn leq(&self, other: &ClosureRelation) -> Result<bool, ClosureError> {
        self.check_same(other)?;
        Ok((0..self.poset.len()).all(|x| self.poset.leq(self.image[x], other.image[x])))
    }

    pub fn join(&self, other: &ClosureRelation) -> Result<ClosureRelation, ClosureError> {
        self.join_with(other, JoinAlgorithm::default())
    }

    pub fn join_with(&self, other: &ClosureRelation, algorithm: JoinAlgorithm) -> Result<ClosureRelation, ClosureError> {
        Self::join_all_with(&self.poset, [self, other], algorithm)
    }

    /// Join of a finite family; the identity for an empty family.
    pub fn join_all<'a, I>(poset: &Poset, family: I) -> Result<ClosureRelation, ClosureError>
    where
        I: IntoIterator<Item = &'a ClosureRelation>,
    {
        Self::join_all_with(poset, family, JoinAlgorithm::default())
    }

    pub fn join_all_with<'a, I>(poset: &Poset, family: I, algorithm: JoinAlgorithm) -> Result<ClosureRelation, ClosureError>
    where
        I: IntoIterator<Item = &'a ClosureRelation>,
    {
        let family: Vec<&ClosureRelation> = family.into_iter().collect();
        for h in &family {
            if !h.poset.same(poset) {
                return Err(ClosureError::PosetMismatch);
            }
        }
        match algorithm {
            JoinAlgorithm::ClosedSetIntersection => {
                let closed = family
                    .iter()
                    .fold(poset.all(), |acc, h| acc.intersection(h.closed));
                Ok(Self::from_closed_set_unchecked(poset, closed))
            }
            JoinAlgorithm::PartitionJoin => partition_join(poset, &family),
        }
    }

    pub fn meet(&self, other: &ClosureRelation) -> Result<ClosureRelation, ClosureError> {
        Self::meet_all(&self.poset, [self, other])
    }

    /// Meet of a finite family: the closure of the mlb-closure of the union of
    /// closed sets. The top closure for an empty family.
    pub fn meet_all<'a, I>(poset: &Poset, family: I) -> Result<ClosureRelation, ClosureError>
    where
        I: IntoIterator<Item = &'a ClosureRelation>,
    {
        let mut union = ElementSet::EMPTY;
        for h in family {
            if !h.poset.same(poset) {
                return Err(ClosureError::PosetMismatch);
            }
            union = union.union(h.closed);
        }
        Ok(Self::from_closed_set_unchecked(poset, mlb_closure(poset, union)))
    }

    /// The closure viewed as a partition: `x` and `y` share a block when `H(x) = H(y)`.
    pub fn to_partition(&self) -> ClosurePartition {
        let blocks = self
            .closed
            .iter()
            .map(|leader| {
                let members = (0..self.poset.len())
                    .filter(|&x| self.image[x] == leader)
                    .collect();
                (leader, members)
            })
            .collect();
        ClosurePartition { blocks }
    }

    /// Renders the closure as its closed set, `closed: {a, b}`.
    pub fn display_closed(&self) -> String {
        format!("closed: {}", self.poset.format_set(self.closed))
    }
}

impl PartialEq for ClosureRelation {
    fn eq(&self, other: &ClosureRelation) -> bool {
        self.poset == other.poset && self.image == other.image
    }
}

impl Eq for ClosureRelation {}

impl std::hash::Hash for ClosureRelation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl fmt::Debug for ClosureRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (x, &hx) in self.image.iter().enumerate() {
            map.entry(&self.poset.label(x), &self.poset.label(hx));
        }
        map.finish()
    }
}

impl fmt::Display for ClosureRelation {
    /// One `x -> H(x)` per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, &hx) in self.image.iter().enumerate() {
            writeln!(f, "{} -> {}", self.poset.label(x), self.poset.label(hx))?;
        }
        Ok(())
    }
}

/// Join in the partition lattice followed by the block-maximum map.
///
/// Each element's value is also computed by applying the closures in
/// round-robin until nothing moves; the two must coincide.
fn partition_join(poset: &Poset, family: &[&ClosureRelation]) -> Result<ClosureRelation, ClosureError> {
    let n = poset.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for h in family {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, h.image[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks = vec![ElementSet::EMPTY; n];
    for x in 0..n {
        let root = find(&mut parent, x);
        blocks[root].insert(x);
    }

    let mut image = vec![usize::MAX; n];
    for block in blocks.into_iter().filter(|b| !b.is_empty()) {
        let greatest = poset.maximal_in(block);
        if greatest.len() != 1 || !block.iter().all(|x| poset.leq(x, greatest.first().unwrap())) {
            return Err(ClosureError::BlockWithoutGreatest(block));
        }
        let g = greatest.first().unwrap();
        for x in block {
            image[x] = g;
        }
    }

    for (x, &expected) in image.iter().enumerate() {
        let mut current = x;
        loop {
            let moved = family.iter().fold(current, |y, h| h.image[y]);
            if moved == current {
                break;
            }
            current = moved;
        }
        if current != expected {
            return Err(ClosureError::SequentialMismatch(x));
        }
    }

    ClosureRelation::validate(poset, image)
}

/// A closure relation as a set partition, each block with its greatest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePartition {
    /// `(leader, block)` pairs sorted by leader index.
    blocks: Vec<(usize, ElementSet)>,
}

impl ClosurePartition {
    pub fn blocks(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.blocks.iter().map(|&(_, b)| b)
    }

    pub fn leaders(&self) -> ElementSet {
        self.blocks.iter().map(|&(l, _)| l).collect()
    }

    pub fn leader_of(&self, block: ElementSet) -> Option<usize> {
        self.blocks.iter().find(|&&(_, b)| b == block).map(|&(l, _)| l)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &ClosurePartition) -> bool {
        self.blocks()
            .all(|b| other.blocks().any(|c| b.is_subset(c)))
    }

    /// Blocks as a canonical sorted list of sets.
    pub fn block_sets(&self) -> Vec<ElementSet> {
        let mut sets: Vec<ElementSet> = self.blocks().collect();
        sets.sort();
        sets
    }
}
