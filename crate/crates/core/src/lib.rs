//! Squared-eigenfunction solitons of polynomial spectral operators.
//!
//! For `y'' = L(λ)y` with `L` a polynomial of degree `d` in λ, the squared
//! eigenfunction `φ = y²` solves `φ''' − 2⟨L, φ⟩ = 0`. This crate derives
//! polynomial-in-λ solutions `φ_n` by recursion over an exact differential
//! polynomial ring, emits the `d` solvability conditions, builds the
//! hyperelliptic curve polynomial `H(φ) = φφ'' − ½φ'² − 2Lφ²`, and checks
//! the identities numerically on closed-form KdV and NLS solutions.

pub mod curve;
pub mod diffring;
pub mod error;
pub mod format;
pub mod gaussian;
pub mod golden;
pub mod models;
pub mod numeric;
pub mod spectral;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
