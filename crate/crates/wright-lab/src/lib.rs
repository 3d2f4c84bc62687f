//! Numerical laboratory for the Wright function and the positive linear
//! operators built from it.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`special`] | Wright function φ_{ρ,β}, log-gamma, modified Bessel I_ν, certified series truncation |
//! | [`operator`] | weight construction, operator application, raw/central moments (closed form and brute-force series) |
//! | [`corpus`] | registered test functions of quadratic growth with analytic growth certificates |
//! | [`bounds`] | bound evaluators, weighted norms, moduli of continuity, claim-audit harness |
//! | [`summability`] | summability matrices, A-transforms, A-densities, scaling experiments |
//!
//! The audit machinery measures stated quantities and records margins; it
//! never asserts a recorded claim as a test-suite truth. A `violated` verdict
//! is a measurement, not a failure.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod operator;
pub mod special;
pub mod summability;

pub use error::{Error, Result};
pub use special::{DEFAULT_TOL, MAX_SERIES_TERMS};
