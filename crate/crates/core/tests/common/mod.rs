//! Brute-force reference computations shared by the integration tests. They
//! rely only on `Graph` adjacency queries, never on library algorithms.

#![allow(dead_code)]

use domstruct::graph::{Graph, VertexSet};

fn mask_set(n: usize, mask: u64) -> VertexSet {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn closed_masks(g: &Graph) -> Vec<u64> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1 << u)).collect()
}

fn dominates_mask(closed: &[u64], n: usize, mask: u64) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let covered = (0..n).filter(|&v| mask >> v & 1 == 1).fold(0u64, |c, v| c | closed[v]);
    covered == full
}

pub fn dominates(g: &Graph, x: &VertexSet) -> bool {
    g.vertices().all(|v| x.contains(v) || g.neighbors(v).iter().any(|&u| x.contains(u)))
}

/// γ by checking every vertex subset.
pub fn sweep_gamma(g: &Graph) -> usize {
    let n = g.n();
    let closed = closed_masks(g);
    (0u64..1 << n).filter(|&m| dominates_mask(&closed, n, m)).map(|m| m.count_ones() as usize).min().unwrap_or(0)
}

/// All minimum dominating sets, sorted lexicographically.
pub fn sweep_dsets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let closed = closed_masks(g);
    let gamma = sweep_gamma(g);
    let mut out: Vec<VertexSet> = (0u64..1 << n)
        .filter(|&m| m.count_ones() as usize == gamma && dominates_mask(&closed, n, m))
        .map(|m| mask_set(n, m))
        .collect();
    out.sort_by_key(|s| s.to_vec());
    out
}

fn connected_within(g: &Graph, keep: u64) -> bool {
    let Some(start) = (0..g.n()).find(|&v| keep >> v & 1 == 1) else { return true };
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if keep >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == keep
}

pub fn is_connected(g: &Graph) -> bool {
    connected_within(g, (1u64 << g.n()) - 1)
}

/// Connected, at least 3 vertices, and no single vertex disconnects it.
pub fn is_two_connected(g: &Graph) -> bool {
    let n = g.n();
    let all = (1u64 << n) - 1;
    n >= 3 && connected_within(g, all) && (0..n).all(|v| connected_within(g, all & !(1 << v)))
}

/// Lengths of all induced cycles, found as vertex subsets whose induced
/// subgraph is connected and 2-regular.
pub fn induced_cycle_lengths(g: &Graph) -> Vec<usize> {
    let n = g.n();
    (1u64..1 << n)
        .filter(|&m| m.count_ones() >= 3)
        .filter(|&m| {
            (0..n)
                .filter(|&v| m >> v & 1 == 1)
                .all(|v| g.neighbors(v).iter().filter(|&&u| m >> u & 1 == 1).count() == 2)
                && connected_within(g, m)
        })
        .map(|m| m.count_ones() as usize)
        .collect()
}

/// Every labeled graph on `n` vertices that is connected.
pub fn connected_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|m| {
            Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p)).unwrap()
        })
        .filter(is_connected)
        .collect()
}

/// Small deterministic generator so the tests do not depend on library RNG
/// plumbing.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

/// Random connected graph: a random spanning tree plus edges kept with
/// probability `p_percent`.
pub fn random_connected(n: usize, p_percent: u64, rng: &mut Lcg) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push(((rng.next() as usize) % v, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.next() % 100 < p_percent {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Backtracking isomorphism test.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend(a, b, 0, &mut map, &mut used)
}

fn extend(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n() {
        return true;
    }
    for w in b.vertices() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
