//! Certified verification of Turán-type inequalities for the distinct
//! partition function and related eta-quotient coefficients.

pub mod arith;
pub mod bessel;
pub mod chern;
pub mod error;
pub mod nu;
pub mod partitions;
pub mod report;
pub mod suites;
pub mod symbolic;
pub mod turan;

pub use error::{Error, Result};
