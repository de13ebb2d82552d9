//! Degrees-of-freedom simulator for linear interference networks with
//! random link erasures and flexible message assignments.

pub mod assignment;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod montecarlo;
pub mod network;
pub mod oracles;
pub mod partition;
pub mod zf;

pub use error::{DofError, Result};
