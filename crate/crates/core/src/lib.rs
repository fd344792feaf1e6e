//! Bethe and Gaudin subspaces of trigonometric holonomy Lie algebras, computed
//! exactly over ℚ(ζ_N) on the chart atlas of the wonderful model of a root
//! toric arrangement.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod arrangement;
pub mod lattice;
pub mod rootsys;
pub mod nested;
pub mod hamiltonians;
pub mod reps;
pub mod sampling;
pub mod verify;
pub mod report;
