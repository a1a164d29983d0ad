//! Subuniverse counting for finite join-semilattices and partial binary
//! algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`order`] and [`canon`]: posets as up-set bitmasks, join tables,
//!   canonical labelling and isomorphism.
//! * [`subuniverse`]: closed-subset tests, two independent counting
//!   algorithms, exact relative counts and the trace bound.
//! * [`catalog`]: chains, ordinal and glued sums, and the named small
//!   structures used by the ranking checks.
//! * [`enumerate`]: isomorph-free generation of every `n`-element
//!   join-semilattice, plus an all-relations oracle for small `n`.
//! * [`analysis`]: narrows and membership in the chain-attached families
//!   `C_p +ord core ⊞ C_q`.
//! * [`verify`]: ranking of subuniverse counts and the report builders.

pub mod analysis;
pub mod canon;
pub mod catalog;
pub mod dot;
pub mod dyadic;
pub mod enumerate;
mod error;
pub mod io;
pub mod order;
pub mod subuniverse;
pub mod verify;

pub use crate::canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use crate::dyadic::Dyadic;
pub use crate::error::{Error, Result};
pub use crate::order::{JoinSemilattice, Mask, Poset};
pub use crate::subuniverse::{JoinStructure, PartialBinaryAlgebra, SubuniverseReport};

/// Reference size used for relative subuniverse counts unless overridden.
pub const DEFAULT_K: i32 = 5;

/// Hard upper bound on structure size; up-sets are stored as `u32` masks.
pub const MAX_ELEMENTS: usize = 32;
