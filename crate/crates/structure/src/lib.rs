//! Structural checks on configurations and their free completions: short
//! cycles against a ring, distance-5 adjacency, and whether contractions
//! can collapse a neighborhood to `K6`.

pub mod completion;
pub mod cycles;
pub mod dist5;
pub mod lowcut;

pub use completion::{contraction_of, Completion, Direction};
pub use cycles::{cut_violation, forbidden_cycle, forbidden_cycle_one_edge, table_check, CutCase, TableHit};
pub use dist5::{check_dist5, Counting, Dist5Case, Dist5Report};
pub use lowcut::{check_configuration_safety, get_low_cut_reducable, reducable_vertices, SafetyReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Reduce(#[from] snarklab_reduce::Error),
    #[error("vertex {0} is not on the ring")]
    NotOnRing(usize),
    #[error("{0}")]
    Invalid(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("configuration is not C-reducible")]
    NotReducible,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Longest path enumerated by any check.
pub const MAX_PATH_LEN: usize = 6;
/// Most paths enumerated between one pair of vertices.
pub const MAX_PATHS: usize = 10_000;
