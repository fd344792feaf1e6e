pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{rat, rint, FieldScalar, Rational, DEFAULT_ORDER};
pub use matrix::ExactMatrix;
pub use poly::Poly;
