//! Finite posets and the order queries the rest of the crate is built on.
//!
//! Elements are indexed `0..n` in declaration order. The order relation is
//! stored as up-sets and down-sets ([`ElementSet`] bitmasks), so most queries
//! are a handful of word operations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

/// Label given to the element added by [`Poset::adjoin_top`].
pub const TOP_LABEL: &str = "1̂";
/// Label given to the element added by [`Poset::adjoin_bottom`].
pub const BOTTOM_LABEL: &str = "0̂";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through {}", .0.join(", "))]
    Cycle(Vec<String>),
    #[error("poset has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooManyElements(usize),
    #[error("cannot adjoin `{0}`: label already in use")]
    LabelCollision(String),
}

/// Why [`Poset::min_above`] found no unique minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NoUniqueMin {
    #[error("no element of the set lies above the query element")]
    Empty,
    #[error("several minimal elements above the query element")]
    Multiple(ElementSet),
}

/// A pair of elements without a unique least upper or greatest lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeFailure {
    pub x: usize,
    pub y: usize,
    pub kind: BoundKind,
    /// Minimal upper bounds (for `Join`) or maximal lower bounds (for `Meet`).
    /// Empty when the pair has no bound at all.
    pub bounds: ElementSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

struct Inner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    lower_covers: Vec<ElementSet>,
}

/// An immutable finite poset.
///
/// Cloning is cheap and clones share identity: [`Poset::same`] is true for a
/// poset and its clones, and false for a structurally equal poset built
/// separately.
#[derive(Clone)]
pub struct Poset {
    inner: Arc<Inner>,
}

impl Poset {
    /// Builds a poset from element labels and order pairs `(x, y)` meaning `x < y`.
    ///
    /// Pairs implied by transitivity are accepted; only the transitive
    /// reduction is kept as the cover relation.
    pub fn from_covers<L, A, B>(elements: &[L], pairs: &[(A, B)]) -> Result<Poset, PosetError>
    where
        L: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = elements.iter().map(|l| l.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| PosetError::UnknownLabel(l.to_owned()))
        };
        let edges = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Self::from_indexed(labels, &edges)
    }

    /// Same as [`Poset::from_covers`] with elements given by index.
    pub fn from_indexed(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooManyElements(n));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(label.clone()));
            }
        }
        let mut succ = vec![ElementSet::EMPTY; n];
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} elements");
            succ[a].insert(b);
        }

        let order = topological_order(&succ).map_err(|stuck| {
            PosetError::Cycle(stuck.iter().map(|i| labels[i].clone()).collect())
        })?;

        let mut up = vec![ElementSet::EMPTY; n];
        for &x in order.iter().rev() {
            let mut set = ElementSet::singleton(x);
            for y in succ[x] {
                set = set.union(up[y]);
            }
            up[x] = set;
        }
        let mut down = vec![ElementSet::EMPTY; n];
        for (x, ups) in up.iter().enumerate() {
            for y in *ups {
                down[y].insert(x);
            }
        }

        let mut upper_covers = vec![ElementSet::EMPTY; n];
        let mut lower_covers = vec![ElementSet::EMPTY; n];
        for x in 0..n {
            let strict_up = up[x].without(x);
            for y in strict_up {
                let between = strict_up.intersection(down[y].without(y));
                if between.is_empty() {
                    upper_covers[x].insert(y);
                    lower_covers[y].insert(x);
                }
            }
        }

        Ok(Poset {
            inner: Arc::new(Inner {
                labels,
                index,
                up,
                down,
                upper_covers,
                lower_covers,
            }),
        })
    }

    /// True when `self` and `other` are the same poset value (clones included).
    pub fn same(&self, other: &Poset) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    /// The whole ground set.
    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    /// Index set of the given labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet, PosetError> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| PosetError::UnknownLabel(l.as_ref().to_owned()))
            })
            .collect()
    }

    /// Labels of the members of `set`, in element order.
    pub fn labels_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|x| self.label(x)).collect()
    }

    /// `{a, b, c}` rendering of a subset.
    pub fn format_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(", "))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.inner.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{y : x <= y}`.
    #[inline]
    pub fn up_set(&self, x: usize) -> ElementSet {
        self.inner.up[x]
    }

    /// `{y : y <= x}`.
    #[inline]
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.inner.down[x]
    }

    /// Elements covering `x`.
    #[inline]
    pub fn covers_of(&self, x: usize) -> ElementSet {
        self.inner.upper_covers[x]
    }

    /// Elements covered by `x`.
    #[inline]
    pub fn covered_by(&self, x: usize) -> ElementSet {
        self.inner.lower_covers[x]
    }

    /// The cover relation as `(x, y)` pairs with `y` covering `x`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.covers_of(x).iter().map(move |y| (x, y)))
            .collect()
    }

    /// Elements with exactly one upper cover.
    pub fn covered_by_unique(&self) -> ElementSet {
        (0..self.len())
            .filter(|&x| self.covers_of(x).len() == 1)
            .collect()
    }

    /// Maximal members of `set`.
    pub fn maximal_in(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .filter(|&x| self.up_set(x).intersection(set) == ElementSet::singleton(x))
            .collect()
    }

    /// Minimal members of `set`.
    pub fn minimal_in(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .filter(|&x| self.down_set(x).intersection(set) == ElementSet::singleton(x))
            .collect()
    }

    pub fn maximal_elements(&self) -> ElementSet {
        self.maximal_in(self.all())
    }

    pub fn minimal_elements(&self) -> ElementSet {
        self.minimal_in(self.all())
    }

    /// Common lower bounds of `set`; the whole ground set when `set` is empty.
    pub fn lower_bounds(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(self.all(), |acc, b| acc.intersection(self.down_set(b)))
    }

    /// Common upper bounds of `set`; the whole ground set when `set` is empty.
    pub fn upper_bounds(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(self.all(), |acc, b| acc.intersection(self.up_set(b)))
    }

    /// Maximal elements among the common lower bounds of `set`.
    ///
    /// For the empty set every element is a lower bound, so this is
    /// [`Poset::maximal_elements`].
    pub fn maximal_lower_bounds(&self, set: ElementSet) -> ElementSet {
        self.maximal_in(self.lower_bounds(set))
    }

    pub fn minimal_upper_bounds(&self, set: ElementSet) -> ElementSet {
        self.minimal_in(self.upper_bounds(set))
    }

    /// The least element of `{a in set : a >= x}`.
    pub fn min_above(&self, set: ElementSet, x: usize) -> Result<usize, NoUniqueMin> {
        let above = set.intersection(self.up_set(x));
        let minimal = self.minimal_in(above);
        match minimal.len() {
            0 => Err(NoUniqueMin::Empty),
            1 => Ok(minimal.first().unwrap()),
            _ => Err(NoUniqueMin::Multiple(minimal)),
        }
    }

    pub fn greatest_element(&self) -> Option<usize> {
        let max = self.maximal_elements();
        (max.len() == 1 && !self.is_empty()).then(|| max.first().unwrap())
    }

    pub fn least_element(&self) -> Option<usize> {
        let min = self.minimal_elements();
        (min.len() == 1 && !self.is_empty()).then(|| min.first().unwrap())
    }

    /// `P` with a new greatest element labelled [`TOP_LABEL`], appended last.
    pub fn adjoin_top(&self) -> Result<Poset, PosetError> {
        self.adjoin_top_labeled(TOP_LABEL)
    }

    pub fn adjoin_top_labeled(&self, label: &str) -> Result<Poset, PosetError> {
        self.adjoin(label, true)
    }

    /// `P` with a new least element labelled [`BOTTOM_LABEL`], appended last.
    pub fn adjoin_bottom(&self) -> Result<Poset, PosetError> {
        self.adjoin_bottom_labeled(BOTTOM_LABEL)
    }

    pub fn adjoin_bottom_labeled(&self, label: &str) -> Result<Poset, PosetError> {
        self.adjoin(label, false)
    }

    fn adjoin(&self, label: &str, on_top: bool) -> Result<Poset, PosetError> {
        if self.index_of(label).is_some() {
            return Err(PosetError::LabelCollision(label.to_owned()));
        }
        let n = self.len();
        let mut labels = self.labels().to_vec();
        labels.push(label.to_owned());
        let mut edges = self.cover_pairs();
        if on_top {
            edges.extend(self.maximal_elements().iter().map(|x| (x, n)));
        } else {
            edges.extend(self.minimal_elements().iter().map(|x| (n, x)));
        }
        Poset::from_indexed(labels, &edges)
    }

    /// A linear extension, choosing the lowest-indexed available element at each step.
    pub fn linear_extension(&self) -> Vec<usize> {
        topological_order(&self.inner.upper_covers).expect("order relation is acyclic")
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_failure().is_none()
    }

    /// First pair (in index order) lacking a join or a meet.
    pub fn lattice_failure(&self) -> Option<LatticeFailure> {
        self.bound_failure(true)
    }

    /// First pair (in index order) lacking a meet.
    ///
    /// A finite poset with a greatest element is a lattice exactly when this
    /// returns `None`.
    pub fn meet_failure(&self) -> Option<LatticeFailure> {
        self.bound_failure(false)
    }

    fn bound_failure(&self, check_joins: bool) -> Option<LatticeFailure> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let pair = ElementSet::singleton(x).with(y);
                if check_joins {
                    let bounds = self.minimal_upper_bounds(pair);
                    if bounds.len() != 1 {
                        return Some(LatticeFailure {
                            x,
                            y,
                            kind: BoundKind::Join,
                            bounds,
                        });
                    }
                }
                let bounds = self.maximal_lower_bounds(pair);
                if bounds.len() != 1 {
                    return Some(LatticeFailure {
                        x,
                        y,
                        kind: BoundKind::Meet,
                        bounds,
                    });
                }
            }
        }
        None
    }
}

impl PartialEq for Poset {
    /// Structural equality: same labels in the same order and the same relation.
    fn eq(&self, other: &Poset) -> bool {
        self.same(other) || (self.inner.labels == other.inner.labels && self.inner.up == other.inner.up)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.inner.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// Kahn's algorithm, lowest index first. On a cycle, returns the elements
/// that could not be ordered.
fn topological_order(succ: &[ElementSet]) -> Result<Vec<usize>, ElementSet> {
    let n = succ.len();
    let mut indegree = vec![0usize; n];
    for s in succ {
        for y in *s {
            indegree[y] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indegree[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = ready.pop() {
        order.push(x);
        for y in succ[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        let placed: ElementSet = order.into_iter().collect();
        Err(ElementSet::full(n).difference(placed))
    }
}
