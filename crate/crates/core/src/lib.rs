//! Domination structures in cubic graphs: the scheme-K edge-adding
//! construction, labeling-based dominating-set candidates, the recursive
//! minimum-dominating-set cascade, and an exact oracle that checks each
//! stage.

pub mod cycles;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod pipeline;
pub mod scheme_k;

pub use error::{Error, Result};
pub use graph::{EdgeList, Graph, Remap, VertexSet};
