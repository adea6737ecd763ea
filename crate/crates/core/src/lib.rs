//! Exact computer-algebra kernel for semirings carrying a designated null
//! part that stands in for zero.
//!
//! The central abstraction is the [`Pair`] trait: a semiring together with a
//! tangible monoid `T` and a null sub-semigroup `A0`. Everything else —
//! polynomial roots, dagger determinants, dependence conditions, congruence
//! spectra, morphism classes — is generic over it. All arithmetic is exact
//! (table indices, machine naturals, rationals, or set descriptors); there is
//! no floating point anywhere in the crate.

pub mod cong;
pub mod hyper;
pub mod instances;
pub mod linalg;
pub mod matrix;
pub mod morph;
pub mod pairs;
pub mod phase;
pub mod poly;
pub mod puiseux;
pub mod suite;

pub use instances::AnyPair;
pub use pairs::{Caps, ClassificationReport, FinitePair, Pair, RelKind};
pub use suite::{CheckStatus, SuiteConfig, SuiteReport};

use thiserror::Error;

/// Errors surfaced by kernel operations and the descriptor loaders.
#[derive(Debug, Error)]
pub enum KernelError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("operation needs capability `{needed}` which `{instance}` lacks")]
    Undecidable { instance: String, needed: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
