//! Computational laboratory for monoids of weighted zero-sum sequences over
//! finite abelian groups, with an application to integers represented by
//! binary quadratic forms of negative discriminant.
//!
//! The building blocks are:
//! - [`group`]: finite abelian groups in invariant-factor presentation,
//!   endomorphism weight sets, and dense subset arithmetic;
//! - [`sequence`]: multiset sequences over a group, weighted sum sets, and
//!   membership in the monoid of weighted zero-sum sequences;
//! - [`monoid`]: atom enumeration, Davenport constants, factorizations, sets
//!   of lengths, catenary degree, the omega invariant, and unions of sets of
//!   lengths;
//! - [`structure`]: seminormality, complete integral closure, height-one
//!   primes, weakly-Krull witnesses, and class semigroups;
//! - [`qform`]: reduced binary quadratic forms, Gauss composition, the form
//!   class group, prime splitting, and the transfer map into plus-minus
//!   weighted zero-sum sequences.

pub mod error;
pub mod group;
pub mod monoid;
pub mod qform;
pub mod sequence;
pub mod structure;

pub use error::Error;
pub use group::{Elem, FiniteAbelianGroup, GSubset, WeightKind, WeightSet};
pub use monoid::MonoidHandle;
pub use sequence::Sequence;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
