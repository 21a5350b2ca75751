pub mod affine;
pub mod bernstein;
pub mod coeffs;
pub mod error;
pub mod exec;
pub mod gallery;
pub mod hecke;
pub mod rootdata;
pub mod verify;

pub use error::{Error, Result};
