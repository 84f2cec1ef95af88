//! Exact computation of tropical convex hulls of point configurations in the
//! Bruhat–Tits building of `PGL_d` over a discretely valued field.

pub mod apartment;
pub mod error;
pub mod experiment;
pub mod hull;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod sa_basis;
pub mod scalar;
pub mod tropical;

pub use error::{Error, Result};
pub use matrix::{MatrixK, ValMatrix};
pub use scalar::{parse_scalar, ExtInt, FieldContext, ValuedScalar};
