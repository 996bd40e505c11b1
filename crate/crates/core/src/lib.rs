//! Exact limiting distributions of the entries of standard Young tableaux.
//!
//! The crate is organised bottom-up:
//!
//! - [`shapes`]: partitions, cells, hook lengths and `f^λ`.
//! - [`tableaux`]: standard tableaux, growth-word enumeration, prefix restriction.
//! - [`rsk`]: Robinson–Schensted row insertion, column insertion and the
//!   permutations sharing a given insertion tableau.
//! - [`involutions`]: involution counts, enumeration, uniform sampling and the
//!   exact count of tableaux with a given entry in cell (1,2).
//! - [`probabilities`]: limiting containment and cell-occupancy probabilities as
//!   exact rationals.
//! - [`quasirandom`]: subsequence statistics of conjugation-closed permutation
//!   families.
//! - [`oracle`]: cross-module consistency suites.
//!
//! All probabilities are [`Rational`]s. Floating point only appears in
//! explicitly asymptotic quantities ([`Real`]) and Monte-Carlo estimates.

pub mod error;
pub mod format;
pub mod involutions;
pub mod limits;
pub mod numeric;
pub mod oracle;
pub mod probabilities;
pub mod quasirandom;
pub mod real;
pub mod rsk;
pub mod shapes;
pub mod tableaux;

pub use error::{Error, Result};
pub use limits::Limits;
pub use numeric::Rational;
pub use real::Real;
pub use rsk::Permutation;
pub use shapes::{Cell, Partition};
pub use tableaux::StandardTableau;
