//! The lattice of closure relations on a finite poset.
//!
//! A closure relation on a poset `P` is an extensive, monotone, idempotent
//! self-map. Ordered pointwise, the closure relations on `P` form a lattice
//! `LC(P)`. This crate builds `LC(P)` explicitly and computes its structure:
//! joins and meets, the correspondence with mlb-closed sets, ranks, Möbius
//! values and the characteristic polynomial, modular elements and a maximal
//! chain of them. The [`oracle`] module holds brute-force counterparts used to
//! cross-check everything.
//!
//! ```
//! use closure_lattice::{fixtures, LcLattice, closed_form_char_poly, DEFAULT_SIZE_LIMIT};
//!
//! let diamond = fixtures::diamond();
//! let lattice = LcLattice::build(&diamond, DEFAULT_SIZE_LIMIT).unwrap();
//! assert_eq!(lattice.len(), 7);
//! let chi = lattice.characteristic_polynomial();
//! assert_eq!(chi.to_string(), "(λ-1)^2·λ");
//! assert_eq!(chi, closed_form_char_poly(&diamond).unwrap().polynomial);
//! ```

pub mod closure;
mod error;
pub mod fixtures;
pub mod lattice;
pub mod mlb;
pub mod oracle;
pub mod parse;
pub mod polynomial;
pub mod poset;
pub mod set;

pub use closure::{ClosureError, ClosurePartition, ClosureRelation, JoinAlgorithm};
pub use error::{SizeLimit, DEFAULT_SIZE_LIMIT};
pub use lattice::{
    closed_form_char_poly, cover_property_violation, has_cover_property, ClosedForm, LatticeError, LcLattice,
    SublatticeReport,
};
pub use mlb::{
    check_anti_exchange, closed_maximals, enumerate_closed_interval, is_mlb_closed, mlb_closure, mlb_violation,
    AntiExchangeWitness, MlbClosedFamily, MlbViolation,
};
pub use parse::{format_poset, parse_poset, ParseError, ParseErrorKind};
pub use polynomial::Polynomial;
pub use poset::{BoundKind, LatticeFailure, NoUniqueMin, Poset, PosetError};
pub use set::ElementSet;
