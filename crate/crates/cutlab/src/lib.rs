//! Colorings across 4- and 5-edge cuts.
//!
//! A side `X` of a cut `F` is held as a [`Boundaried`] graph: `X` itself plus
//! the ordered list of vertices that lost a cut edge. Colorings of `X ∪ F` are
//! computed by hanging a free leaf on every boundary vertex.

mod boundary;
mod fcolor;
mod gadgets;
mod lemmas;
pub mod sweep;

pub use boundary::{order_cut_planar, Boundaried};
pub use fcolor::{coloring_graph, f_coloring_set, f_coloring_set_of, no_singleton_check, ColoringGraph, FColoring, NoSingleton};
pub use gadgets::{build_5cut_gadget, gy_variants, x_variant_crossings, x_variants, Gadget};
pub use lemmas::{verify_lx_lemmas, LemmaReport};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] snarklab_core::Error),
    #[error("cut has {0} edges, expected 4 or 5")]
    CutSize(usize),
    #[error("boundary: {0}")]
    Boundary(String),
    #[error("no projective embedding found for the pentagram gadget")]
    Embedding,
}

pub type Result<T> = std::result::Result<T, Error>;
