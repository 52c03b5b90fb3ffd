//! Two-qubit XY model with asymmetric exchange: spectra, bi-orthogonal
//! thermal states, concurrence and hybrid Liouvillian dynamics.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod spin;
pub mod thermal;

pub use error::{Error, Result};
