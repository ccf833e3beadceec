//! Finite-scale twisted convolution algebras.
//!
//! Builds finite group extensions `K ↪ G ↠ H`, the twisted action `(α, ω)` of H on
//! the group algebra of K, the twisted crossed product `ℓ¹_{α,ω}(H, ℂ[K])`, and a set of
//! numerical suites checking norm inequalities, Gelfand-limit agreement and positivity
//! of spectra in these algebras.

pub mod algebra;
pub mod error;
pub mod group;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
