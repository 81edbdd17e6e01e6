//! Random graph generation, per-graph claim verification and corpus runs.

pub mod corpus;
pub mod generator;
pub mod verify;

pub use corpus::{load_corpus, run_corpus, run_entries, CorpusEntry, CorpusRun, CorpusSource, CorpusSummary};
pub use generator::{connected_cubic_catalog, random_cubic};
pub use verify::{claims, verify_graph, RunConfig};
