//! Multi-information on finite product spaces: evaluation, the structure of
//! its global maximizers, and their approximation by low-order interaction
//! families.
//!
//! Labels are 0-based throughout the library. Exact (rational) and float
//! distributions share one type; the combinatorial parts stay exact.

pub mod approx;
pub mod error;
pub mod exec;
pub mod interactions;
pub mod lp;
pub mod maximizers;
pub mod poset;
pub mod probspace;
pub mod rational;

pub use error::{Error, Result};
pub use exec::Exec;
pub use probspace::{Distribution, Divergence, ProductSpace, UnitSet};
