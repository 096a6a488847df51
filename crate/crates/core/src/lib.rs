//! Equivariant localization for Joyce-Song pair invariants of local curves
//! and wall-crossing of stable pair series.

pub mod equivariant;
pub mod error;
pub mod localcurve;
pub mod ratfun;
pub mod series;

pub use error::{Error, Result};
