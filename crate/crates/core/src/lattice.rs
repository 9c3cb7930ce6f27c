//! The lattice of all closure relations on a poset, built explicitly.
//!
//! Nodes are identified by their closed sets. Node order is reverse inclusion
//! of closed sets, node 0 is the identity closure (bottom) and the last node
//! is the closure fixing only the mlb-closure of the maximal elements (top).

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::closure::ClosureRelation;
use crate::error::SizeLimit;
use crate::mlb::{closed_maximals, enumerate_closed_interval, mlb_closure};
use crate::oracle::partition_meet;
use crate::poset::{LatticeFailure, Poset, PosetError, TOP_LABEL, BOTTOM_LABEL};
use crate::polynomial::Polynomial;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    SizeLimit(#[from] SizeLimit),
    #[error("the poset has no greatest element")]
    NoGreatestElement,
    #[error("exponent |P| - m - s = {0} is negative")]
    NegativeExponent(i64),
    #[error("unique-cover count {all} differs from the count {outside} outside the closed maximals")]
    AtomCountDivergence { all: usize, outside: usize },
    #[error("closed set {0:?} is not a node of the lattice")]
    MissingNode(ElementSet),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The lattice of closure relations on a finite poset.
pub struct LcLattice {
    poset: Poset,
    closed: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    /// `down[i]` holds every `j <= i`.
    down: Vec<FixedBitSet>,
    /// `up[i]` holds every `j >= i`.
    up: Vec<FixedBitSet>,
    upper_covers: Vec<FixedBitSet>,
    hasse: Vec<(usize, usize)>,
    rank: Vec<usize>,
    mobius: Vec<i64>,
    join_table: OnceLock<Vec<u32>>,
    meet_table: OnceLock<Vec<u32>>,
}

impl LcLattice {
    /// Enumerates every closure relation through its closed set and
    /// precomputes order, Hasse diagram, ranks and Möbius values.
    pub fn build(poset: &Poset, limit: usize) -> Result<LcLattice, LatticeError> {
        let family = enumerate_closed_interval(poset, limit)?;
        let mut closed: Vec<ElementSet> = family.sets().to_vec();
        // larger closed sets are lower; this is a linear extension of the node order
        closed.sort_by_key(|s| (poset.len() - s.len(), s.bits()));
        let n = closed.len();
        let index: HashMap<ElementSet, usize> = closed.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let mut down = vec![FixedBitSet::with_capacity(n); n];
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if closed[j].is_subset(closed[i]) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }

        let mut upper_covers = vec![FixedBitSet::with_capacity(n); n];
        let mut hasse = Vec::new();
        for i in 0..n {
            let mut strictly_above = up[i].clone();
            strictly_above.set(i, false);
            for j in strictly_above.ones() {
                let mut between = down[j].clone();
                between.set(j, false);
                between.intersect_with(&strictly_above);
                if between.is_clear() {
                    upper_covers[i].insert(j);
                    hasse.push((i, j));
                }
            }
        }

        // longest chain from the bottom
        let mut rank = vec![0usize; n];
        for &(i, j) in &hasse {
            rank[j] = rank[j].max(rank[i] + 1);
        }

        let mut mobius = vec![0i64; n];
        for r in 0..n {
            mobius[r] = if r == 0 {
                1
            } else {
                -down[r].ones().filter(|&q| q != r).map(|q| mobius[q]).sum::<i64>()
            };
        }

        Ok(LcLattice {
            poset: poset.clone(),
            closed,
            index,
            down,
            up,
            upper_covers,
            hasse,
            rank,
            mobius,
            join_table: OnceLock::new(),
            meet_table: OnceLock::new(),
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.closed.len() - 1
    }

    pub fn closed_set(&self, node: usize) -> ElementSet {
        self.closed[node]
    }

    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.closed
    }

    pub fn node_of_closed_set(&self, closed: ElementSet) -> Option<usize> {
        self.index.get(&closed).copied()
    }

    pub fn node_of(&self, closure: &ClosureRelation) -> Option<usize> {
        if !closure.poset().same(&self.poset) {
            return None;
        }
        self.node_of_closed_set(closure.closed_set())
    }

    /// The closure relation at `node`.
    pub fn closure(&self, node: usize) -> ClosureRelation {
        ClosureRelation::from_closed_set_unchecked(&self.poset, self.closed[node])
    }

    pub fn closures(&self) -> Vec<ClosureRelation> {
        (0..self.len()).map(|i| self.closure(i)).collect()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Cover pairs `(i, j)`, `j` covering `i`, sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn upper_covers(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.upper_covers[node].ones()
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.upper_covers[lower].contains(upper)
    }

    /// Length of the longest chain from the bottom to `node`.
    pub fn rank(&self, node: usize) -> usize {
        self.rank[node]
    }

    /// `μ(0̂, node)` for every node.
    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    /// Nodes covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers(self.bottom()).collect()
    }

    /// True when every cover step raises the rank by exactly one, i.e. all
    /// maximal chains from the bottom to a node have the same length.
    pub fn is_ranked(&self) -> bool {
        self.hasse.iter().all(|&(i, j)| self.rank[j] == self.rank[i] + 1)
    }

    /// `Σ_q μ(0̂, q) λ^(r(1̂) - r(q))`.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        let top_rank = self.rank[self.top()];
        let mut coefficients = vec![0i64; top_rank + 1];
        for (q, &mu) in self.mobius.iter().enumerate() {
            coefficients[top_rank - self.rank[q]] += mu;
        }
        Polynomial::new(coefficients)
    }

    fn table<'a>(&'a self, cell: &'a OnceLock<Vec<u32>>, join: bool) -> &'a [u32] {
        cell.get_or_init(|| {
            let n = self.len();
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in a..n {
                    let v = if join { self.compute_join(a, b) } else { self.compute_meet(a, b) } as u32;
                    table[a * n + b] = v;
                    table[b * n + a] = v;
                }
            }
            table
        })
    }

    // Nodes are sorted by rank, so the least upper bound is the
    // lowest-indexed upper bound and the greatest lower bound the highest.
    fn compute_join(&self, a: usize, b: usize) -> usize {
        let mut bounds = self.up[a].clone();
        bounds.intersect_with(&self.up[b]);
        let candidate = bounds.ones().next().expect("top bounds every pair");
        debug_assert!(bounds.is_subset(&self.up[candidate]));
        candidate
    }

    fn compute_meet(&self, a: usize, b: usize) -> usize {
        let mut bounds = self.down[a].clone();
        bounds.intersect_with(&self.down[b]);
        let candidate = bounds.ones().next_back().expect("bottom bounds every pair");
        debug_assert!(bounds.is_subset(&self.down[candidate]));
        candidate
    }

    /// Lattice join of two nodes, read off the order.
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.table(&self.join_table, true)[a * self.len() + b] as usize
    }

    /// Lattice meet of two nodes, read off the order.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.table(&self.meet_table, false)[a * self.len() + b] as usize
    }

    /// First node `q` whose interval up to the join of its upper covers is
    /// not a Boolean algebra; `None` when the lattice is join-distributive.
    pub fn join_distributive_violation(&self) -> Option<usize> {
        (0..self.len()).find(|&q| !self.boolean_above(q))
    }

    pub fn check_join_distributive(&self) -> bool {
        self.join_distributive_violation().is_none()
    }

    fn boolean_above(&self, q: usize) -> bool {
        let covers: Vec<usize> = self.upper_covers(q).collect();
        let k = covers.len();
        if k >= usize::BITS as usize - 1 {
            return false;
        }
        let joins: Vec<usize> = (0..1usize << k)
            .map(|mask| {
                (0..k)
                    .filter(|bit| mask >> bit & 1 == 1)
                    .fold(q, |acc, bit| self.join(acc, covers[bit]))
            })
            .collect();
        let top = joins[(1 << k) - 1];
        let mut interval = self.up[q].clone();
        interval.intersect_with(&self.down[top]);
        if interval.count_ones(..) != 1 << k {
            return false;
        }
        for s in 0..joins.len() {
            for t in 0..joins.len() {
                let subset = s & !t == 0;
                if self.leq(joins[s], joins[t]) != subset {
                    return false;
                }
            }
        }
        true
    }

    /// A pair `(q, r)` both covering `q ∧ r` whose join does not cover both.
    pub fn semimodular_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for q in 0..n {
            for r in q + 1..n {
                let m = self.meet(q, r);
                if self.covers(m, q) && self.covers(m, r) {
                    let j = self.join(q, r);
                    if !(self.covers(q, j) && self.covers(r, j)) {
                        return Some((q, r));
                    }
                }
            }
        }
        None
    }

    pub fn check_semimodular(&self) -> bool {
        self.semimodular_violation().is_none()
    }

    /// A pair `K < K'` with `H ∨ K = H ∨ K'` and `H ∧ K = H ∧ K'`, if one exists.
    pub fn modularity_violation(&self, h: usize) -> Option<(usize, usize)> {
        for k in 0..self.len() {
            let (hk_join, hk_meet) = (self.join(h, k), self.meet(h, k));
            for k2 in self.up[k].ones().filter(|&k2| k2 != k) {
                if self.join(h, k2) == hk_join && self.meet(h, k2) == hk_meet {
                    return Some((k, k2));
                }
            }
        }
        None
    }

    /// Modularity of `h` by checking every comparable pair.
    pub fn is_modular_bruteforce(&self, h: usize) -> bool {
        self.modularity_violation(h).is_none()
    }

    /// A maximal chain of modular elements, listed from the bottom (identity) up.
    ///
    /// With a greatest element `1̂` and a linear extension `p_1, ..., p_n`,
    /// the chain is the closures fixing `{1̂, p_1, ..., p_i}`. Without one, a
    /// top is adjoined, the chain is built in the larger lattice, met with the
    /// closure fixing `{1̂} ∪ closure(maximals)`, and carried back.
    pub fn m_chain(&self) -> Result<Vec<usize>, LatticeError> {
        let p = &self.poset;
        let sets: Vec<ElementSet> = match p.greatest_element() {
            Some(top) => {
                let order = p.linear_extension();
                let mut sets = Vec::with_capacity(order.len() + 1);
                let mut current = ElementSet::singleton(top);
                sets.push(current);
                for x in order {
                    current.insert(x);
                    sets.push(current);
                }
                sets
            }
            None => {
                let extended = adjoin_fresh(p, TOP_LABEL, true)?;
                let new_top = p.len();
                let cut = closed_maximals(p).with(new_top);
                let mut current = ElementSet::singleton(new_top);
                let mut sets = vec![mlb_closure(&extended, current.union(cut)).without(new_top)];
                for x in extended.linear_extension() {
                    current.insert(x);
                    sets.push(mlb_closure(&extended, current.union(cut)).without(new_top));
                }
                sets
            }
        };
        let mut chain: Vec<usize> = Vec::with_capacity(sets.len());
        for set in sets.into_iter().rev() {
            let node = self.node_of_closed_set(set).ok_or(LatticeError::MissingNode(set))?;
            if chain.last() != Some(&node) {
                chain.push(node);
            }
        }
        Ok(chain)
    }

    /// Whether meets in this lattice agree with meets of block partitions,
    /// decided both by the lattice property of `0̂ + P` and by comparing every
    /// pair of nodes directly.
    pub fn check_sublattice_of_partitions(&self) -> Result<SublatticeReport, LatticeError> {
        let p = &self.poset;
        if p.greatest_element().is_none() {
            return Err(LatticeError::NoGreatestElement);
        }
        let with_bottom = adjoin_fresh(p, BOTTOM_LABEL, false)?;
        let bottom_is_lattice = with_bottom.is_lattice();
        let meet_failure = with_bottom.meet_failure();

        let partitions: Vec<_> = (0..self.len()).map(|i| self.closure(i).to_partition()).collect();
        let mut partition_witness = None;
        'outer: for a in 0..self.len() {
            for b in a + 1..self.len() {
                let in_partitions = partition_meet(&partitions[a].block_sets(), &partitions[b].block_sets());
                if in_partitions != partitions[self.meet(a, b)].block_sets() {
                    partition_witness = Some((a, b));
                    break 'outer;
                }
            }
        }

        Ok(SublatticeReport {
            bottom_is_lattice,
            meets_agree: partition_witness.is_none(),
            meet_failure,
            partition_witness,
        })
    }
}

/// Outcome of [`LcLattice::check_sublattice_of_partitions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeReport {
    /// `0̂ + P` is a lattice.
    pub bottom_is_lattice: bool,
    /// Every pairwise meet of closures equals the meet of their partitions.
    pub meets_agree: bool,
    /// Elements of `P` lacking a meet in `0̂ + P`, with their maximal lower bounds.
    pub meet_failure: Option<LatticeFailure>,
    /// Two nodes whose meet differs from the meet of their partitions.
    pub partition_witness: Option<(usize, usize)>,
}

impl SublatticeReport {
    pub fn routes_agree(&self) -> bool {
        self.bottom_is_lattice == self.meets_agree
    }
}

/// Adjoins a new top or bottom, priming the label until it is unused.
fn adjoin_fresh(p: &Poset, base: &str, on_top: bool) -> Result<Poset, PosetError> {
    let mut label = base.to_owned();
    while p.index_of(&label).is_some() {
        label.push('\'');
    }
    if on_top {
        p.adjoin_top_labeled(&label)
    } else {
        p.adjoin_bottom_labeled(&label)
    }
}

/// First cover pair `(x, y)` with `H(x) != x` and `H(y) != H(x)`.
///
/// Only meaningful (as a modularity test) when the poset has a greatest element.
pub fn cover_property_violation(h: &ClosureRelation) -> Result<Option<(usize, usize)>, LatticeError> {
    let p = h.poset();
    if p.greatest_element().is_none() {
        return Err(LatticeError::NoGreatestElement);
    }
    Ok(p.cover_pairs()
        .into_iter()
        .find(|&(x, y)| h.apply(x) != x && h.apply(y) != h.apply(x)))
}

/// If `y` covers `x` and `H(x) != x` then `H(y) = H(x)`.
pub fn has_cover_property(h: &ClosureRelation) -> Result<bool, LatticeError> {
    Ok(cover_property_violation(h)?.is_none())
}

/// The product form `(λ - 1)^s λ^(|P| - m - s)` with its ingredients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    /// Elements with a unique upper cover.
    pub unique_covers: usize,
    /// Size of the mlb-closure of the maximal elements.
    pub closed_maximals: usize,
    pub polynomial: Polynomial,
}

/// Characteristic polynomial computed from `P` alone, without building the lattice.
///
/// Unique-cover elements are counted both over all of `P` and outside the
/// closure of the maximal elements; the two counts must match.
pub fn closed_form_char_poly(poset: &Poset) -> Result<ClosedForm, LatticeError> {
    let unique = poset.covered_by_unique();
    let floor = closed_maximals(poset);
    let all = unique.len();
    let outside = unique.difference(floor).len();
    if all != outside {
        return Err(LatticeError::AtomCountDivergence { all, outside });
    }
    let m = floor.len();
    let exponent = poset.len() as i64 - m as i64 - all as i64;
    if exponent < 0 {
        return Err(LatticeError::NegativeExponent(exponent));
    }
    Ok(ClosedForm {
        unique_covers: all,
        closed_maximals: m,
        polynomial: Polynomial::shifted_power(all, exponent as usize),
    })
}
