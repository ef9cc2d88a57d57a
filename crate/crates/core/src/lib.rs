//! Cubic multigraphs with signed rotation systems, a 3-edge-coloring oracle,
//! Kempe chains, cyclic cuts, and the ring-coloring algebra used by the
//! reducibility engines.

pub mod color;
pub mod cuts;
pub mod gen;
pub mod graph;
pub mod io;
pub mod iso;
pub mod named;
pub mod par;
pub mod ring;
pub mod surface;

pub use color::{Coloring, KempeChain};
pub use graph::{delete_and_suppress, Edge, Face, Graph, Surface, Vertex};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent graph: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error("graph has a bridge")]
    Bridge,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0} out of range")]
    Range(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
