//! Errors surfaced by the command layer.

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::bridge::BridgeError;
use crate::catalog::CatalogError;
use crate::dsl::{ParseError, ResolveError};
use crate::homext::ExtError;
use crate::linalg::LinalgError;
use crate::multiplier::DatumError;
use crate::ore::OreError;
use crate::scalar::ScalarError;
use crate::skewderiv::SkewError;

/// Input and usage errors. Failed mathematical checks are reports, not
/// errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
