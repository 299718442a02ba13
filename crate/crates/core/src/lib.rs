//! All-versus-nothing contextuality and nonlocality checks for
//! distinguishable and identical particles.
//!
//! The crate builds the relevant three-particle states and (symmetrized)
//! observables as dense matrices, checks their eigenvalue and commutation
//! relations numerically, and decides by exhaustive enumeration whether a
//! noncontextual ±1 value assignment can reproduce them.

pub mod cli;
pub mod hilbert;
pub mod hv;
pub mod linalg;
pub mod scenarios;
pub mod states;
pub mod symmetrize;

pub use hv::{search, Constraint, ConstraintKind, Scenario, SearchResult};
pub use linalg::{Operator, StateVector};
pub use scenarios::{CatalogEntry, Conclusion, VerificationReport};
