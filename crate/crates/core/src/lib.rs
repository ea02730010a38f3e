//! Regularised bi- and tripartite continuous-variable EPR-type states.
//!
//! States are Gaussian kets `N exp(λ·a† + ½ a†ᵀ F a†)|0⟩`. Their Wigner
//! functions are evaluated as displaced-parity expectation values, either
//! through a general Gaussian (Berezin) integral, through closed forms, or by
//! brute-force Fock-space truncation. The [`chsh`] module turns parity
//! expectations into CHSH Bell values and maximizes them.
//!
//! Phase-space amplitudes follow `α = (x + i p)/√2`.

pub mod chsh;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64 as ComplexAmp;
