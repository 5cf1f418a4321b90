//! Separability of noisy two-qubit gates with respect to Bloch-cube and
//! rescaled single-qubit state spaces.
//!
//! Two-qubit operators are handled as 4×4 Pauli coefficient matrices
//! ([`pauli::PauliCoeffs2Q`]). Cube separability is decided by a linear
//! program over the 64 products of cube vertices, with an exact rational
//! fallback near degeneracy.

pub mod constructions;
pub mod dense;
pub mod error;
pub mod gates;
pub mod hn_sim;
pub mod lp;
pub mod pauli;
pub mod separability;
pub mod state_spaces;
pub mod thresholds;

pub use error::{Error, Result};
