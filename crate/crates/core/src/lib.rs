//! Closed-form calculus for 2×2 real and complex matrices: exponential and
//! logarithm, operator norms, BCH, Schur derivatives, disks, Magnus exponents
//! and the critical BCH geometry.

// Range checks are written `!(x > 0.0)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bch_min;
pub mod counterexample;
pub mod error;
pub mod explog;
pub mod geometry;
pub mod m2;
pub mod magnus;
mod optim;
pub mod quad;
pub mod scalar;
pub mod schur_bch;
pub mod specfun;
pub mod tol;

pub use error::{Error, Result};
pub use m2::{Skew, M2C, M2R};
pub use scalar::Scalar;
