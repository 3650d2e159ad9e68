//! Exact computations with bound quiver algebras `kQ/I`.
//!
//! The crate covers the whole pipeline from a textual presentation to the
//! arrow-removal calculus:
//!
//! * [`qv`] parses and prints the `.qv` presentation format,
//! * [`groebner`] completes relations to a reduced Gröbner basis under the
//!   length-lexicographic order given by the declared arrow order,
//! * [`algebra`] wraps the result as a finite-dimensional algebra,
//! * [`module`], [`resolution`], [`iso`] and [`homology`] handle
//!   finite-dimensional modules, minimal projective resolutions and the
//!   derived invariants,
//! * [`removal`] decides (pre-)removability and redundancy of arrow sets and
//!   computes arrow reduced and arrow irredundant versions,
//! * [`extension`] builds and checks trivial one-arrow extensions.
//!
//! Paths compose left to right. Modules are right modules, i.e.
//! representations of the quiver; left modules are handled as right modules
//! over the opposite algebra.

pub mod algebra;
pub mod extension;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod iso;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod qv;
pub mod removal;
pub mod resolution;
pub mod tensor;

pub use algebra::Algebra;
pub use field::{Field, Scalar};
pub use groebner::GroebnerBasis;
pub use module::FdModule;
pub use quiver::{ArrowSet, Element, Path, Quiver};
pub use qv::AlgebraSpec;
pub use resolution::{PdVerdict, Resolution};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("{0}")]
    Invalid(String),
    #[error("ideal not admissible up to degree {0}")]
    NotAdmissibleUpTo(usize),
    #[error("ideal not admissible: {0}")]
    NotAdmissible(String),
    #[error("arrow set is not pre-removable: {witness}")]
    NotPreRemovable { witness: String },
    #[error("sandwich condition violated: {0}")]
    SandwichViolation(String),
    #[error("resolution too short: only {available} certified steps, {needed} needed")]
    ResolutionTooShort { available: usize, needed: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Resource limits shared by the homological routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Caps {
    /// Maximal number of syzygy steps in a resolution.
    pub resolution: usize,
    /// Maximal degree for Gröbner completion.
    pub degree: usize,
    /// Seed for randomized isomorphism search.
    pub seed: u64,
    /// Modules of larger total dimension are not resolved further.
    pub max_module_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            resolution: 64,
            degree: 64,
            seed: 0,
            max_module_dim: 2000,
        }
    }
}
