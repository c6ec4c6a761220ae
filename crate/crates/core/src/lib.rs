//! Geometry of finite-dimensional real normed spaces and of the bilinear
//! operators between them.
//!
//! The crate is organised bottom-up:
//!
//! - [`spaces`]: norm families (`ℓ_p`, polyhedral, max-norm products), dual
//!   norms, supporting functionals and point smoothness.
//! - [`orthogonality`]: Birkhoff-James orthogonality and the positive and
//!   negative parts of a vector, decided from one-sided directional
//!   derivatives and cross-checked by a golden-section oracle.
//! - [`sip`]: semi-inner-products built from a selection of supporting
//!   functionals, and an axiom verifier.
//! - [`product`]: closed-form membership rules for `X × Y` under the max norm.
//! - [`bilinear`]: coefficient-tensor operators, operator norms and norm
//!   attainment sets.
//! - [`theorems`]: operator-level decision procedures (orthogonality,
//!   smoothness, semi-inner-product characterisation of maximisers).
//! - [`suites`]: seeded verification suites producing JSON reports.
//!
//! Every decision is a three-valued [`Decision`]: numerically marginal
//! instances are reported as inconclusive instead of being guessed.

pub mod bilinear;
pub mod decision;
pub mod error;
pub mod golden;
pub mod instances;
pub mod orthogonality;
pub mod product;
pub mod sip;
pub mod spaces;
pub mod suites;
pub mod theorems;
pub mod tolerance;
mod vecops;

pub use bilinear::{BilinearOperator, LinearOperator, NormAttainmentSet, SearchConfig};
pub use decision::{Decision, Verdict};
pub use error::{Error, Result};
pub use sip::SipSelector;
pub use spaces::{Functional, Space, SupportSet, Vector};
pub use tolerance::Tolerances;
