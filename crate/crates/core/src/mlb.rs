//! Closure of subsets under maximal lower bounds, and the convex geometry it
//! defines on the ground set.
//!
//! A set `A` is *mlb-closed* when every subset `B` of `A` (including the empty
//! one) has all of its maximal lower bounds in `A`. The maximal lower bounds
//! of `B` depend only on its set of common lower bounds
//! `LB(B) = ∩ { down(b) : b in B }`, so the checks below range over the
//! distinct sets `LB(B)` for `B ⊆ A` rather than over the subsets themselves.
//! Every subset is still accounted for; the family of lower-bound sets is just
//! usually far smaller than `2^|A|`.

use std::collections::HashMap;

use crate::error::SizeLimit;
use crate::poset::Poset;
use crate::set::ElementSet;

/// A subset `subset ⊆ A` whose maximal lower bounds `missing` are not in `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MlbViolation {
    pub subset: ElementSet,
    pub missing: ElementSet,
}

/// Distinct common-lower-bound sets of the subsets of `a`, each paired with a
/// subset generating it.
fn lower_bound_family(poset: &Poset, a: ElementSet) -> Vec<(ElementSet, ElementSet)> {
    let mut seen: HashMap<ElementSet, ElementSet> = HashMap::new();
    let mut family = vec![(poset.all(), ElementSet::EMPTY)];
    seen.insert(poset.all(), ElementSet::EMPTY);
    let mut next = 0;
    while next < family.len() {
        let (bounds, generator) = family[next];
        next += 1;
        for x in a.difference(generator) {
            let narrowed = bounds.intersection(poset.down_set(x));
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(narrowed) {
                let generator = generator.with(x);
                slot.insert(generator);
                family.push((narrowed, generator));
            }
        }
    }
    family
}

/// First subset of `a` whose maximal lower bounds escape `a`, if any.
pub fn mlb_violation(poset: &Poset, a: ElementSet) -> Option<MlbViolation> {
    lower_bound_family(poset, a)
        .into_iter()
        .find_map(|(bounds, subset)| {
            let missing = poset.maximal_in(bounds).difference(a);
            (!missing.is_empty()).then_some(MlbViolation { subset, missing })
        })
}

pub fn is_mlb_closed(poset: &Poset, a: ElementSet) -> bool {
    mlb_violation(poset, a).is_none()
}

/// The least mlb-closed superset of `a`.
///
/// Adds the maximal lower bounds of every subset of the working set until
/// nothing new appears.
pub fn mlb_closure(poset: &Poset, a: ElementSet) -> ElementSet {
    let mut current = a;
    loop {
        let grown = lower_bound_family(poset, current)
            .into_iter()
            .fold(current, |acc, (bounds, _)| acc.union(poset.maximal_in(bounds)));
        if grown == current {
            return current;
        }
        current = grown;
    }
}

/// The mlb-closure of the maximal elements: the smallest closed set of all.
pub fn closed_maximals(poset: &Poset) -> ElementSet {
    mlb_closure(poset, ElementSet::EMPTY)
}

/// All mlb-closed sets between the closure of the maximal elements and the
/// whole poset, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct MlbClosedFamily {
    poset: Poset,
    sets: Vec<ElementSet>,
    covers: Vec<(usize, usize)>,
    index: HashMap<ElementSet, usize>,
}

impl MlbClosedFamily {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Members sorted by size, then by bitmask. The first is the closure of
    /// the maximal elements, the last is the whole poset.
    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Inclusion Hasse diagram as `(i, j)` with `sets[j]` covering `sets[i]`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn position(&self, set: ElementSet) -> Option<usize> {
        self.index.get(&set).copied()
    }
}

/// Enumerates the interval `[closure(maximals), P]` of mlb-closed sets.
///
/// Fails with [`SizeLimit`] when more than `limit` elements lie outside the
/// closure of the maximal elements.
pub fn enumerate_closed_interval(poset: &Poset, limit: usize) -> Result<MlbClosedFamily, SizeLimit> {
    let floor = closed_maximals(poset);
    let free = poset.all().difference(floor);
    SizeLimit::check("closed-set interval", free.len(), limit)?;

    let mut sets: Vec<ElementSet> = free
        .subsets()
        .map(|extra| floor.union(extra))
        .filter(|&a| is_mlb_closed(poset, a))
        .collect();
    sets.sort_by_key(|s| (s.len(), s.bits()));
    let index: HashMap<ElementSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // Minimal closed proper supersets of A are among the closures of A + x.
    let mut covers = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        let candidates: Vec<ElementSet> = poset
            .all()
            .difference(a)
            .iter()
            .map(|x| mlb_closure(poset, a.with(x)))
            .collect();
        let mut uppers: Vec<usize> = candidates
            .iter()
            .filter(|&&c| !candidates.iter().any(|&d| d != c && d.is_subset(c)))
            .map(|c| index[c])
            .collect();
        uppers.sort_unstable();
        uppers.dedup();
        covers.extend(uppers.into_iter().map(|j| (i, j)));
    }
    covers.sort_unstable();

    Ok(MlbClosedFamily {
        poset: poset.clone(),
        sets,
        covers,
        index,
    })
}

/// Witness that mlb-closure fails the anti-exchange axiom: with `closed`
/// closed and `x != y` outside it, `x` is in the closure of `closed + y` and
/// `y` is in the closure of `closed + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntiExchangeWitness {
    pub closed: ElementSet,
    pub x: usize,
    pub y: usize,
}

/// Checks the anti-exchange axiom over every mlb-closed subset of `P`.
///
/// Returns `Ok(None)` when the axiom holds. The enumeration filters all
/// `2^|P|` subsets, so `|P|` itself is held to `limit`.
pub fn check_anti_exchange(poset: &Poset, limit: usize) -> Result<Option<AntiExchangeWitness>, SizeLimit> {
    SizeLimit::check("anti-exchange check", poset.len(), limit)?;
    let all = poset.all();
    for closed in all.subsets().filter(|&a| is_mlb_closed(poset, a)) {
        let outside = all.difference(closed);
        let closures: Vec<(usize, ElementSet)> = outside
            .iter()
            .map(|y| (y, mlb_closure(poset, closed.with(y))))
            .collect();
        for &(y, with_y) in &closures {
            for &(x, with_x) in &closures {
                if x != y && with_y.contains(x) && with_x.contains(y) {
                    return Ok(Some(AntiExchangeWitness { closed, x, y }));
                }
            }
        }
    }
    Ok(None)
}
