//! Factorized discretizations of -d2/dx2 + alpha/x^2 on the half line.
//!
//! The operator is assembled as a product of first-order difference factors
//! B A with B = A^T, which pins down one self-adjoint realization per
//! factorization. The crate builds both the factorized and the direct
//! matrices, solves for low eigenpairs, fits eigenvector behavior near the
//! singular endpoint, and checks the result against a catalog of named
//! realizations.

// NaN-rejecting guards (`!(x > 0.0)`) and stencil index arithmetic
// (`i + 1 <= n`, "node i+1 exists") read as written.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::int_plus_one)]

pub mod asymptotics;
pub mod cli;
pub mod discretization;
pub mod error;
pub mod extensions;
pub mod report;
pub mod spectral;
pub mod superpotentials;
pub mod verify;

pub use error::{Error, Result};
