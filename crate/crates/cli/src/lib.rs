//! Command-line front end for the magnus2 library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod eval;
pub mod magnus_cmd;
pub mod matrix;
pub mod sweep;
pub mod verify;
