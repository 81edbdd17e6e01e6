//! Seeded random connected cubic graphs and the bundled small-graph catalog.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph6::parse_graph6_lines;

/// Pairings tried before giving up.
pub const MAX_ATTEMPTS: u64 = 100_000;

/// A connected simple 3-regular graph on `n` vertices drawn from the
/// configuration model. Pairings with loops, parallel edges or more than
/// one component are rejected and retried on the next substream of `seed`,
/// so the result depends only on `(n, seed)`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Input(format!("a cubic graph needs an even vertex count of at least 4, got {n}")));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        points.sort_unstable();
        points.shuffle(&mut rng);
        if let Some(g) = pairing_to_graph(n, &points) {
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::Generation(format!("no simple connected pairing for n={n} after {MAX_ATTEMPTS} attempts")))
}

fn pairing_to_graph(n: usize, points: &[usize]) -> Option<Graph> {
    let mut edges = Vec::with_capacity(points.len() / 2);
    for pair in points.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v {
            return None;
        }
        edges.push((u, v));
    }
    let before = edges.len();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != before {
        return None;
    }
    Graph::from_edges(n, edges).ok()
}

const CATALOG: [(usize, &str); 4] = [
    (4, include_str!("../../data/cubic_connected_n4.g6")),
    (6, include_str!("../../data/cubic_connected_n6.g6")),
    (8, include_str!("../../data/cubic_connected_n8.g6")),
    (10, include_str!("../../data/cubic_connected_n10.g6")),
];

/// Vertex counts covered by [`connected_cubic_catalog`].
pub const CATALOG_ORDERS: [usize; 4] = [4, 6, 8, 10];

/// Every connected cubic graph on `n` vertices up to isomorphism, for the
/// orders in [`CATALOG_ORDERS`]; `None` otherwise.
pub fn connected_cubic_catalog(n: usize) -> Option<Vec<Graph>> {
    let (_, text) = CATALOG.iter().find(|(k, _)| *k == n)?;
    Some(parse_graph6_lines(text).expect("bundled catalog parses"))
}
