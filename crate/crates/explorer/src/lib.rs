//! Command-line explorer for the two-qubit non-Hermitian XY model.

pub mod config;
pub mod error;
pub mod sweep;
pub mod table;
