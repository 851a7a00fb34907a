//! Lower bounds on the entanglement cost of non-local computation of
//! two-qubit gates, from controllable correlation and controllable
//! entanglement.

pub mod error;
pub mod qmath;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub mod gates;
pub mod optimize;
pub mod entanglement;
pub mod bounds;
pub mod campaign;
pub mod cli;
