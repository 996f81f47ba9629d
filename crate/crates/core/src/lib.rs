//! Exact search for integer points on wave-resonance manifolds.
//!
//! Frequencies of power-law dispersion relations are radicals `γ·q^(1/c)`.
//! Grouping modes by their c-free kernel `q` turns each resonance condition
//! into independent rational equations, which [`search`] solves on bounded
//! lattices. [`dynamics`] integrates the resulting triads.

pub mod classes;
pub mod dispersion;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod report;
pub mod search;

pub use error::{Error, Result};
