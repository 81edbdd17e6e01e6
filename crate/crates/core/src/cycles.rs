//! Induced (chordless) cycles, the seam relation between cycles, and
//! structures: seam-connected families of induced cycles whose lengths are
//! divisible by three.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph, VertexSet};

pub const DEFAULT_CYCLE_CAP: u64 = 1_000_000;

/// Chordless cycle in canonical form: the smallest vertex first, then the
/// direction whose second vertex is smaller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CycleRepr", try_from = "CycleRepr")]
pub struct InducedCycle {
    vertices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CycleRepr {
    vertices: Vec<usize>,
    length: usize,
    residue: usize,
}

impl From<InducedCycle> for CycleRepr {
    fn from(c: InducedCycle) -> Self {
        CycleRepr { length: c.len(), residue: c.residue(), vertices: c.vertices }
    }
}

impl TryFrom<CycleRepr> for InducedCycle {
    type Error = Error;
    fn try_from(r: CycleRepr) -> Result<Self> {
        if r.vertices.len() < 3 || r.length != r.vertices.len() || r.residue != r.length % 3 {
            return Err(Error::Input("inconsistent cycle record".into()));
        }
        Ok(InducedCycle { vertices: canonical_rotation(&r.vertices) })
    }
}

fn canonical_rotation(cyc: &[usize]) -> Vec<usize> {
    let len = cyc.len();
    let (i, _) = cyc.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
    let next = cyc[(i + 1) % len];
    let prev = cyc[(i + len - 1) % len];
    if next <= prev {
        (0..len).map(|k| cyc[(i + k) % len]).collect()
    } else {
        (0..len).map(|k| cyc[(i + len - k) % len]).collect()
    }
}

impl InducedCycle {
    /// Validates that `vertices`, in cyclic order, form an induced cycle of
    /// `g` and returns it in canonical form.
    pub fn new(g: &Graph, vertices: &[usize]) -> Result<Self> {
        let len = vertices.len();
        if len < 3 {
            return Err(Error::Input(format!("cycle of length {len}")));
        }
        for &v in vertices {
            g.check_vertex(v)?;
        }
        let set: VertexSet = vertices.iter().copied().collect();
        if set.len() != len {
            return Err(Error::Input("repeated vertex in cycle".into()));
        }
        let c = InducedCycle { vertices: canonical_rotation(vertices) };
        if !c.is_induced_in(g) {
            return Err(Error::Input(format!("{:?} is not an induced cycle", c.vertices)));
        }
        Ok(c)
    }

    pub(crate) fn from_canonical(vertices: Vec<usize>) -> Self {
        debug_assert_eq!(canonical_rotation(&vertices), vertices);
        InducedCycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn residue(&self) -> usize {
        self.len() % 3
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Vertex at cyclic offset `k` (may be negative) from position `i`.
    pub fn at(&self, i: usize, k: isize) -> usize {
        let len = self.len() as isize;
        self.vertices[((i as isize + k) % len + len) as usize % self.len()]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> EdgeList {
        (0..self.len()).map(|i| (self.vertices[i], self.at(i, 1))).collect()
    }

    pub fn has_cycle_edge(&self, u: usize, v: usize) -> bool {
        match self.position(u) {
            Some(i) => self.at(i, 1) == v || self.at(i, -1) == v,
            None => false,
        }
    }

    /// Consecutive vertices adjacent in `g` and no chords.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let len = self.len();
        if len < 3 || self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for i in 0..len {
            for j in i + 1..len {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                if g.has_edge(self.vertices[i], self.vertices[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Orders by length, then lexicographically by canonical vertex list.
    pub fn length_then_lex(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.vertices).cmp(&(other.len(), &other.vertices))
    }
}

/// Calls `visit` once per induced cycle of `g` of length at most
/// `max_length`, passing vertices in canonical order. Stops early when the
/// visitor breaks.
pub fn for_each_induced_cycle<F>(g: &Graph, max_length: Option<usize>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let max_len = max_length.unwrap_or(n).min(n);
    if max_len < 3 {
        return ControlFlow::Continue(());
    }
    let mut walker = Walker { g, max_len, on_path: vec![false; n], inner_adj: vec![0; n], path: Vec::new() };
    for s in 0..n {
        walker.path.push(s);
        walker.on_path[s] = true;
        for &p1 in g.neighbors(s) {
            if p1 < s {
                continue;
            }
            walker.push(p1);
            walker.extend(&mut visit)?;
            walker.pop();
        }
        walker.on_path[s] = false;
        walker.path.pop();
    }
    ControlFlow::Continue(())
}

struct Walker<'a> {
    g: &'a Graph,
    max_len: usize,
    on_path: Vec<bool>,
    /// Number of path vertices, other than the start and the current end,
    /// adjacent to each vertex.
    inner_adj: Vec<u32>,
    path: Vec<usize>,
}

impl Walker<'_> {
    fn push(&mut self, v: usize) {
        if self.path.len() >= 2 {
            let prev = *self.path.last().unwrap();
            for &x in self.g.neighbors(prev) {
                self.inner_adj[x] += 1;
            }
        }
        self.path.push(v);
        self.on_path[v] = true;
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.on_path[v] = false;
        if self.path.len() >= 2 {
            let prev = *self.path.last().unwrap();
            for &x in self.g.neighbors(prev) {
                self.inner_adj[x] -= 1;
            }
        }
    }

    fn extend<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let s = self.path[0];
        let p1 = self.path[1];
        let last = *self.path.last().unwrap();
        let g = self.g;
        for &u in g.neighbors(last) {
            if u <= s || self.on_path[u] || self.inner_adj[u] > 0 {
                continue;
            }
            if g.has_edge(u, s) {
                // closing here; continuing past u would leave s-u as a chord
                if p1 < u {
                    self.path.push(u);
                    let r = visit(&self.path);
                    self.path.pop();
                    r?;
                }
            } else if self.path.len() + 1 < self.max_len {
                self.push(u);
                let r = self.extend(visit);
                self.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// All induced cycles up to `max_length` (default: `n`), sorted by canonical
/// vertex list. Fails once more than `cap` cycles are found.
pub fn enumerate_induced_cycles(g: &Graph, max_length: Option<usize>, cap: u64) -> Result<Vec<InducedCycle>> {
    let mut out = Vec::new();
    let mut over = false;
    let _ = for_each_induced_cycle(g, max_length, |c| {
        if out.len() as u64 >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(InducedCycle::from_canonical(c.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::Budget { what: "induced cycle", cap });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// Returns `None` when every induced cycle has length divisible by three,
/// otherwise the shortest, lexicographically smallest offender.
pub fn all_induced_cycles_mod3(g: &Graph, cap: u64) -> Result<Option<InducedCycle>> {
    let mut seen = 0u64;
    let mut best: Option<InducedCycle> = None;
    let mut over = false;
    let _ = for_each_induced_cycle(g, None, |c| {
        seen += 1;
        if seen > cap {
            over = true;
            return ControlFlow::Break(());
        }
        if c.len() % 3 != 0 {
            let cand = InducedCycle::from_canonical(c.to_vec());
            if best.as_ref().is_none_or(|b| cand.length_then_lex(b).is_lt()) {
                best = Some(cand);
            }
        }
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::Budget { what: "induced cycle", cap });
    }
    Ok(best)
}

/// How to read "the intersection is one path" when two cycles share a single
/// vertex and no edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeamRule {
    pub allow_single_vertex: bool,
}

impl Default for SeamRule {
    fn default() -> Self {
        Self { allow_single_vertex: true }
    }
}

/// True iff the common part of the two cycles (shared vertices plus edges
/// lying on both cycles) is a single nonempty path.
pub fn connecting_without_seams(c1: &InducedCycle, c2: &InducedCycle, rule: SeamRule) -> bool {
    let shared: Vec<usize> = c1.vertices.iter().copied().filter(|&v| c2.contains(v)).collect();
    if shared.is_empty() {
        return false;
    }
    let common: Vec<(usize, usize)> = c1.edges().iter().filter(|&(u, v)| c2.has_cycle_edge(u, v)).collect();
    if common.is_empty() {
        return shared.len() == 1 && rule.allow_single_vertex;
    }
    // connected and acyclic with degree <= 2 means a path
    if common.len() + 1 != shared.len() {
        return false;
    }
    let idx = |v: usize| shared.iter().position(|&x| x == v).unwrap();
    let mut deg = vec![0; shared.len()];
    let mut parent: Vec<usize> = (0..shared.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in &common {
        let (a, b) = (idx(u), idx(v));
        deg[a] += 1;
        deg[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    deg.iter().all(|&d| d <= 2)
}

/// Seam-connected family of induced cycles of length divisible by three.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub cycles: Vec<InducedCycle>,
    /// Index pairs `(i, j)`, `i < j`, of cycles connecting without seams.
    pub seam_edges: Vec<(usize, usize)>,
    /// No further residue-0 induced cycle of the host graph seam-connects to
    /// the family.
    pub maximal: bool,
}

impl Structure {
    pub fn vertex_set(&self) -> VertexSet {
        self.cycles.iter().flat_map(|c| c.vertices.iter().copied()).collect()
    }

    /// Seam neighbours of each cycle, in increasing index order.
    pub fn seam_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cycles.len()];
        for &(i, j) in &self.seam_edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Single cycle, or the seam graph over the cycles is connected.
    pub fn is_seam_connected(&self) -> bool {
        if self.cycles.is_empty() {
            return false;
        }
        let adj = self.seam_adjacency();
        let mut seen = vec![false; self.cycles.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// All structures of `g`: the connected components of the seam graph over
/// residue-0 induced cycles, ordered by their smallest cycle.
pub fn find_structures(g: &Graph, cap: u64, rule: SeamRule) -> Result<Vec<Structure>> {
    let cycles: Vec<InducedCycle> =
        enumerate_induced_cycles(g, None, cap)?.into_iter().filter(|c| c.residue() == 0).collect();
    let k = cycles.len();
    let sets: Vec<VertexSet> = cycles.iter().map(InducedCycle::vertex_set).collect();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            if !sets[i].is_disjoint(&sets[j]) && connecting_without_seams(&cycles[i], &cycles[j], rule) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            for &j in &adj[members[i]] {
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let local = |x: usize| members.binary_search(&x).unwrap();
        let mut seam_edges = Vec::new();
        for &a in &members {
            for &b in &adj[a] {
                if a < b {
                    seam_edges.push((local(a), local(b)));
                }
            }
        }
        seam_edges.sort_unstable();
        out.push(Structure { cycles: members.iter().map(|&x| cycles[x].clone()).collect(), seam_edges, maximal: true });
    }
    Ok(out)
}

/// True iff the cycles of `h` cover every vertex of `g`.
pub fn is_domination_structure(g: &Graph, h: &Structure) -> bool {
    h.vertex_set() == g.vertex_set()
}
