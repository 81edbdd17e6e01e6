//! Runs [`verify_graph`] over a collection of graphs and tallies verdicts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generator::{connected_cubic_catalog, random_cubic, CATALOG_ORDERS};
use super::verify::{verify_graph, RunConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::edgelist::parse_edge_list;
use crate::io::graph6::parse_graph6_lines;
use crate::io::report::{InputFormat, ReportDocument, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusSource {
    /// One graph6 string per line.
    Graph6File(PathBuf),
    /// Every regular file in the directory, read as an edge list, in file
    /// name order.
    EdgeListDir(PathBuf),
    /// `count` random cubic graphs cycling through the even orders in
    /// `n_min..=n_max`.
    Generator { count: usize, n_min: usize, n_max: usize, seed: u64 },
    /// The bundled catalog of all connected cubic graphs on 4 to 10
    /// vertices.
    Catalog,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub graph_id: String,
    pub format: InputFormat,
    pub graph: Graph,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_corpus(source: &CorpusSource) -> Result<Vec<CorpusEntry>> {
    let entry = |graph_id: String, format, graph| CorpusEntry { graph_id, format, graph };
    match source {
        CorpusSource::Graph6File(path) => {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(parse_graph6_lines(&read(path)?)?
                .into_iter()
                .enumerate()
                .map(|(i, g)| entry(format!("{stem}:{}", i + 1), InputFormat::Graph6, g))
                .collect())
        }
        CorpusSource::EdgeListDir(dir) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            paths.sort();
            paths
                .into_iter()
                .map(|p| {
                    let g = parse_edge_list(&read(&p)?).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
                    let id = p.file_name().unwrap().to_string_lossy().into_owned();
                    Ok(entry(id, InputFormat::Edgelist, g))
                })
                .collect()
        }
        &CorpusSource::Generator { count, n_min, n_max, seed } => {
            let orders: Vec<usize> = (n_min.max(4)..=n_max).filter(|n| n % 2 == 0).collect();
            if orders.is_empty() && count > 0 {
                return Err(Error::Input(format!("no even order >= 4 in {n_min}..={n_max}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seeds: Vec<u64> = (0..count).map(|_| rng.next_u64()).collect();
            seeds
                .into_iter()
                .enumerate()
                .map(|(i, s)| {
                    let n = orders[i % orders.len()];
                    Ok(entry(format!("random-n{n}-{i}"), InputFormat::Generated, random_cubic(n, s)?))
                })
                .collect()
        }
        CorpusSource::Catalog => Ok(CATALOG_ORDERS
            .iter()
            .flat_map(|&n| {
                let graphs = connected_cubic_catalog(n).expect("bundled order");
                graphs.into_iter().enumerate().map(move |(i, g)| (n, i, g))
            })
            .map(|(n, i, g)| entry(format!("cubic-n{n}-{}", i + 1), InputFormat::Graph6, g))
            .collect()),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    /// claim -> verdict -> number of graphs.
    pub verdicts: BTreeMap<String, BTreeMap<Verdict, usize>>,
    /// Graphs with at least one refuted claim.
    pub refuted_graphs: Vec<String>,
    /// Graphs with a refuted claim or a structure violation.
    pub failing_graphs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusRun {
    pub summary: CorpusSummary,
    pub reports: Vec<ReportDocument>,
}

impl CorpusRun {
    pub fn any_refuted(&self) -> bool {
        !self.summary.refuted_graphs.is_empty()
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if strict && self.any_refuted() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serialization")
    }
}

pub fn summarize(reports: &[ReportDocument]) -> CorpusSummary {
    let mut s = CorpusSummary { graphs: reports.len(), ..Default::default() };
    for r in reports {
        for c in &r.claims {
            *s.verdicts.entry(c.claim.clone()).or_default().entry(c.verdict).or_default() += 1;
        }
        if r.claims.iter().any(|c| c.verdict == Verdict::Refuted) {
            s.refuted_graphs.push(r.graph_id.clone());
        }
        if r.has_failure() {
            s.failing_graphs.push(r.graph_id.clone());
        }
    }
    s
}

/// Verifies every entry independently (in parallel) and keeps input order.
pub fn run_entries(entries: &[CorpusEntry], cfg: &RunConfig) -> CorpusRun {
    let reports: Vec<ReportDocument> =
        entries.par_iter().map(|e| verify_graph(&e.graph, &e.graph_id, e.format, cfg)).collect();
    CorpusRun { summary: summarize(&reports), reports }
}

pub fn run_corpus(source: &CorpusSource, cfg: &RunConfig) -> Result<CorpusRun> {
    Ok(run_entries(&load_corpus(source)?, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic() {
        let src = CorpusSource::Generator { count: 10, n_min: 8, n_max: 8, seed: 7 };
        let a = run_corpus(&src, &RunConfig::default()).unwrap();
        let b = run_corpus(&src, &RunConfig::default()).unwrap();
        assert_eq!(a.reports.len(), 10);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.reports.iter().all(|r| r.n == 8));
    }

    #[test]
    fn generator_cycles_orders() {
        let src = CorpusSource::Generator { count: 5, n_min: 3, n_max: 9, seed: 1 };
        let ns: Vec<usize> = load_corpus(&src).unwrap().iter().map(|e| e.graph.n()).collect();
        assert_eq!(ns, vec![4, 6, 8, 4, 6]);
        let bad = CorpusSource::Generator { count: 1, n_min: 5, n_max: 5, seed: 1 };
        assert!(load_corpus(&bad).is_err());
    }

    #[test]
    fn catalog_source() {
        let entries = load_corpus(&CorpusSource::Catalog).unwrap();
        assert_eq!(entries.len(), 27);
        assert_eq!(entries[0].graph_id, "cubic-n4-1");
    }

    #[test]
    fn summary_counts() {
        let entries = &load_corpus(&CorpusSource::Catalog).unwrap()[..3];
        let run = run_entries(entries, &RunConfig::default());
        assert_eq!(run.summary.graphs, 3);
        for per in run.summary.verdicts.values() {
            assert_eq!(per.values().sum::<usize>(), 3);
        }
        assert_eq!(run.exit_code(false), 0);
        assert_eq!(run.exit_code(true), if run.any_refuted() { 2 } else { 0 });
    }

    #[test]
    fn missing_source_is_io_error() {
        let src = CorpusSource::Graph6File("/nonexistent/x.g6".into());
        assert!(matches!(load_corpus(&src), Err(Error::Io(_))));
    }
}
