//! Exact injective norm (geometric entanglement) of code states of binary
//! linear and CSS codes.
//!
//! For a `k`-dimensional code `C` the uniform superposition `|C>` has
//! injective norm `2^{-(k - j(C))/2}`, where `j(C)` is computed in polynomial
//! time by matroid intersection ([`entanglement::j_of_code`]). The dense
//! [`statevec`] layer verifies the value numerically at small sizes.

pub mod codes;
pub mod entanglement;
pub mod error;
pub mod gf2;
pub mod matroid;
pub mod statevec;
pub mod verify;

pub use codes::{CosetState, LinearCode};
pub use entanglement::{analyze, css_basis_report, EntanglementReport};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use matroid::{DualMatroid, IntersectionResult, LinearColumnMatroid, Matroid};
pub use statevec::{OptimizerConfig, StateVector};
