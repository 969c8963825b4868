//! Ground-state energy bounds for N identical relativistic bosons bound by
//! harmonic pair forces, with the one-body radial solver and independent
//! oracles behind them.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod figures;
pub mod minimize;
pub mod oracle;
pub mod pfunction;
pub mod radial;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
