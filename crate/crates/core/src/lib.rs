//! Exact verification toolkit for the symmetry groups and fibration
//! geometry of chiral Potts rapidity families.
//!
//! The crate enumerates the level-N CP groups as monomial projective
//! transformations of P^3 with exact 4N-th root-of-unity coefficients,
//! machine-checks their presentations, quotients and conjugation tables,
//! and computes the associated Fermat-fibration, hyperelliptic-quotient,
//! resolution and theta-function data numerically with certified
//! tolerances.

pub mod cpm;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod proj;
pub mod refgroups;
pub mod report;

pub use error::{CpmError, Result};
