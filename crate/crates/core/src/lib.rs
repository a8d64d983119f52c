//! Spin systems over `Z_p`: alternating commutation matrices, their
//! symplectic structure, exact monomial representations and the standard
//! invariants that classify irreducible systems.

pub mod cli;
pub mod commutant;
pub mod error;
pub mod exec;
pub mod gf;
mod gf2;
pub mod io;
pub mod monomial;
pub mod phase;
pub mod rep;
pub mod report;
pub mod symplectic;
pub mod units;
pub mod weyl;
pub mod words;

pub use error::{Error, Result};
