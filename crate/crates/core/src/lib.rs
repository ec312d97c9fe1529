//! Homothetic extensions of nonunital associative algebras.

#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod audit;
pub mod bridge;
pub mod catalog;
pub mod cli;
pub mod documents;
pub mod dsl;
pub mod error;
pub mod homext;
pub mod linalg;
pub mod multiplier;
pub mod ore;
pub mod report;
pub mod scalar;
pub mod skewderiv;
pub mod witness;
