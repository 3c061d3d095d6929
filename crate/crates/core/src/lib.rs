//! Exact computations on cubic threefolds: Jacobian rings, lines of second
//! type, double lines, Eckardt points, adjoint representatives and
//! finite-field censuses.
pub mod adjoint;
pub mod algebra;
pub mod census;
pub mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod ring;

pub use error::{Error, Result};
