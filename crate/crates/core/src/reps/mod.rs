//! Concrete realizations used to check commutativity exactly: the sl₂ spin
//! chain and the graded affine Hecke algebra.

pub mod hecke;
pub mod spin;

pub use hecke::{HeckeAlgebra, HeckeElem};
pub use spin::SpinChain;
