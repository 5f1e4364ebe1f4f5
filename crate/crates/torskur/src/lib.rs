//! Exact polynomial representations of the curve Schur algebra of P1, the
//! affinized symmetric (affine zigzag) algebra and the Kronecker KLR algebra,
//! the comparison map φ between them, and verification suites.

pub mod demazure;
pub mod error;
pub mod frobenius;
pub mod klr;
pub mod linalg;
pub mod perm;
pub mod phi;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod schur;
pub mod wreath;

pub use error::{Error, Result};
