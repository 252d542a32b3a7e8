//! Cohomology of finite partially ordered sets.
//!
//! A finite poset plays the role of an index set of local regions. This crate
//! builds the simplicial machinery on top of such a poset (singular 1- and
//! 2-simplices, paths, homotopy), represents unitary 1-cocycles on it, splits
//! a cocycle into a charge component and a topological component relative to a
//! choice of base point, joins the two back together, and analyses the
//! holonomy algebra a cocycle generates at the base point (dimension, factor
//! check, tracial characters of loop classes).
//!
//! All numerics are dense complex linear algebra over `f64`, sized for posets
//! with tens of elements and matrices of dimension at most a few dozen.

pub mod cocycle;
pub mod corpus;
pub mod holonomy;
pub mod homotopy;
pub mod linalg;
pub mod net;
pub mod poset;
pub mod simplicial;
pub mod splitting;

pub use cocycle::{Cocycle, IntertwinerSpace, ValidationReport};
pub use holonomy::{HolonomyReport, MatrixAlgebra};
pub use homotopy::{GroupPresentation, PathFrame};
pub use net::NetConnection;
pub use poset::{Graph, Poset};
pub use simplicial::{Path, Simplex1, Simplex2};

/// Crate-wide error type.
///
/// The three non-IO variants map onto the CLI exit codes: bad input data or
/// parameters (2), a cocycle that fails validation (3), and an operation
/// whose mathematical precondition does not hold (4).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadInput(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
