//! Configurations and their islands, reducibility checking under planar and
//! projective matching semantics, and the projective-island families.

pub mod config;
pub mod families;
pub mod island;
pub mod reduce;

pub use config::{Configuration, FreeCompletion};
pub use island::Island;
pub use reduce::{check_reducibility, maximal_consistent_residual, ring_extension_oracle, ColorableSet, Verdict};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] snarklab_core::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("configuration violates clause {clause}: {msg}")]
    Clause { clause: &'static str, msg: String },
    #[error("free completion: {0}")]
    Completion(String),
    #[error("invalid island: {0}")]
    Island(String),
    #[error("ring size {0} exceeds the supported bound")]
    RingTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
