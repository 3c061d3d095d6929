//! Forms, monomial tables and exact linear algebra.

pub mod binary;
pub mod form;
pub mod linalg;
pub mod monomial;

pub use binary::{binary_roots, BinaryRoots, ClosedPoint, RootPoint};
pub use form::HomForm;
pub use linalg::EchelonSpace;
