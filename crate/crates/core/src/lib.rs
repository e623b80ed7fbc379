//! Exact-arithmetic toolkit for additive quartic forms over the ramified
//! quadratic extensions of the 2-adic numbers.

pub mod aniso;
pub mod cert;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod qring;
pub mod forms;
pub mod powers;
pub mod residue;
pub mod solver;

pub use error::{Error, Result};
pub use qring::{Digits, Field, FieldParams, QuadRing, RingElt, Valuation};
