//! Key polynomials of elliptic curve families and the exact algebra used to
//! study their real zero sets.

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod elimination;
pub mod keypoly;
pub mod puiseux;
pub mod realroots;

pub use error::{Error, Result};
