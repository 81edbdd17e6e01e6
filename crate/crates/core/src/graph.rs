//! Simple undirected graphs with dense vertex ids and the elementary
//! operations used by every other module.
//!
//! Graphs are immutable values. Operations that change the vertex set
//! (`delete_vertices`, `induced_subgraph`) return a [`Remap`] so results can
//! always be translated back into the coordinates of the input graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Set of vertex ids, kept sorted.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Checks every member is a vertex of a graph on `n` vertices.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, usize>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Set of unordered vertex pairs, each stored as `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeList(BTreeSet<(usize, usize)>);

impl EdgeList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the pair `{u, v}`. Loops are rejected.
    pub fn insert(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.0.insert((u.min(v), u.max(v))))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn extend_from(&mut self, other: &EdgeList) {
        self.0.extend(other.0.iter().copied());
    }
}

impl FromIterator<(usize, usize)> for EdgeList {
    /// Panics on a loop pair; use [`EdgeList::insert`] for fallible input.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut e = EdgeList::new();
        for (u, v) in iter {
            e.insert(u, v).expect("loop in edge list");
        }
        e
    }
}

/// Old-id / new-id correspondence produced when vertices are removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remap {
    /// `new_to_old[new] = old`.
    pub new_to_old: Vec<usize>,
    /// `old_to_new[old] = Some(new)` for surviving vertices.
    pub old_to_new: Vec<Option<usize>>,
}

impl Remap {
    pub fn identity(n: usize) -> Self {
        Self { new_to_old: (0..n).collect(), old_to_new: (0..n).map(Some).collect() }
    }

    pub fn to_old(&self, v: usize) -> usize {
        self.new_to_old[v]
    }

    pub fn to_new(&self, v: usize) -> Option<usize> {
        self.old_to_new.get(v).copied().flatten()
    }

    pub fn set_to_old(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.new_to_old[v]).collect()
    }

    /// Maps the surviving members of `s`; removed vertices are dropped.
    pub fn set_to_new(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.to_new(v)).collect()
    }

    /// Composes `self` (outer -> mid) with `inner` (mid -> inner ids) so that
    /// the result maps inner ids straight to outer ids.
    pub fn compose(&self, inner: &Remap) -> Remap {
        let new_to_old: Vec<usize> = inner.new_to_old.iter().map(|&m| self.new_to_old[m]).collect();
        let mut old_to_new = vec![None; self.old_to_new.len()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Remap { new_to_old, old_to_new }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub is_cubic: bool,
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n(), edges: g.edges().collect() }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from a list of pairs. Repeated pairs collapse to one
    /// edge; loops and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> EdgeList {
        self.edges().collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// `N(W)`: every vertex adjacent to some member of `w`.
    pub fn open_neighborhood(&self, w: &VertexSet) -> Result<VertexSet> {
        w.check_range(self.n())?;
        Ok(w.iter().flat_map(|v| self.adj[v].iter().copied()).collect())
    }

    /// `N[W] = N(W) ∪ W`.
    pub fn closed_neighborhood(&self, w: &VertexSet) -> Result<VertexSet> {
        let mut out = self.open_neighborhood(w)?;
        out.extend(w.iter());
        Ok(out)
    }

    pub fn is_dominating(&self, x: &VertexSet) -> Result<bool> {
        x.check_range(self.n())?;
        Ok(self.undominated(x).is_none())
    }

    /// First vertex not dominated by `x`, if any. `x` must be in range.
    pub fn undominated(&self, x: &VertexSet) -> Option<usize> {
        self.vertices().find(|&v| !x.contains(v) && !self.adj[v].iter().any(|&u| x.contains(u)))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let min = self.adj.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.adj.iter().map(Vec::len).max().unwrap_or(0);
        // the empty graph is not considered cubic
        DegreeProfile { min, max, is_cubic: self.n() > 0 && min == 3 && max == 3 }
    }

    /// Connected components ordered by their smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Articulation points, found with an iterative low-link DFS.
    pub fn cut_vertices(&self) -> VertexSet {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, parent, idx) = *top;
                if idx < self.adj[v].len() {
                    top.2 += 1;
                    let u = self.adj[v][idx];
                    if disc[u] == usize::MAX {
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, v, 0));
                    } else if u != parent {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Subgraph induced by `keep`, relabelled densely in increasing id order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Remap) {
        let n = self.n();
        let mut old_to_new = vec![None; n];
        let new_to_old: Vec<usize> = keep.iter().filter(|&v| v < n).collect();
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let adj = new_to_old.iter().map(|&old| self.adj[old].iter().filter_map(|&u| old_to_new[u]).collect()).collect();
        (Graph { adj }, Remap { new_to_old, old_to_new })
    }

    /// `G - S`, with the id remapping.
    pub fn delete_vertices(&self, s: &VertexSet) -> (Graph, Remap) {
        let keep = self.vertices().filter(|&v| !s.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Returns `G + E` and the number of requested edges that were already
    /// present.
    pub fn add_edges(&self, e: &EdgeList) -> Result<(Graph, usize)> {
        let mut adj = self.adj.clone();
        let mut duplicates = 0;
        for (u, v) in e.iter() {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if self.has_edge(u, v) {
                duplicates += 1;
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok((Graph { adj }, duplicates))
    }

    /// Vertex-disjoint union; `other`'s ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|ns| ns.iter().map(|&u| u + off).collect()));
        Graph { adj }
    }
}

/// Named graphs used throughout tests, fixtures and the CLI.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// Triangular prism: triangles 0-1-2 and 3-4-5 joined by a matching.
    pub fn prism() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    /// 3-dimensional hypercube.
    pub fn cube() -> Graph {
        let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
        Graph::from_edges(8, edges).unwrap()
    }

    /// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    /// Two triangles `{0,1,2}` and `{0,3,4}` sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn count_components_without(g: &Graph, v: usize) -> usize {
        let (h, _) = g.delete_vertices(&VertexSet::from([v]));
        h.components().len()
    }

    fn cut_vertices_by_definition(g: &Graph) -> VertexSet {
        let base = g.components().len();
        g.vertices()
            .filter(|&v| {
                // removing an isolated vertex lowers the count; that is not a cut
                count_components_without(g, v) > base
            })
            .collect()
    }

    #[test]
    fn closed_neighborhood_examples() {
        let c5 = cycle(5);
        assert_eq!(c5.closed_neighborhood(&VertexSet::from([0])).unwrap(), VertexSet::from([4, 0, 1]));
        assert!(c5.closed_neighborhood(&VertexSet::new()).unwrap().is_empty());
        assert_eq!(complete(4).closed_neighborhood(&VertexSet::from([2])).unwrap(), complete(4).vertex_set());
        assert_eq!(c5.closed_neighborhood(&VertexSet::from([7])), Err(Error::VertexOutOfRange { vertex: 7, n: 5 }));
    }

    #[test]
    fn is_dominating_examples() {
        let c5 = cycle(5);
        assert!(c5.is_dominating(&VertexSet::from([0, 2])).unwrap());
        assert!(!c5.is_dominating(&VertexSet::from([0])).unwrap());
        assert!(petersen().is_dominating(&petersen().vertex_set()).unwrap());
        assert!(c5.is_dominating(&VertexSet::from([9])).is_err());
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(bowtie().cut_vertices(), VertexSet::from([0]));
        assert!(cycle(6).cut_vertices().is_empty());
        assert_eq!(path(3).cut_vertices(), VertexSet::from([1]));
    }

    #[test]
    fn cut_vertices_match_definition_on_all_graphs_up_to_six_vertices() {
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
                let g = Graph::from_edges(n, edges).unwrap();
                assert_eq!(g.cut_vertices(), cut_vertices_by_definition(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn components_examples() {
        let two = complete(3).disjoint_union(&complete(3));
        let comps = two.components();
        assert_eq!(comps, vec![VertexSet::from([0, 1, 2]), VertexSet::from([3, 4, 5])]);
        assert_eq!(petersen().components(), vec![petersen().vertex_set()]);
        assert!(Graph::empty(0).components().is_empty());
    }

    #[test]
    fn delete_vertices_examples() {
        let (p, remap) = cycle(4).delete_vertices(&VertexSet::from([0]));
        assert_eq!(p, path(3));
        assert_eq!(remap.new_to_old, vec![1, 2, 3]);
        assert_eq!(remap.to_new(0), None);

        let g = petersen();
        let (h, remap) = g.delete_vertices(&VertexSet::new());
        assert_eq!(h, g);
        assert_eq!(remap, Remap::identity(10));

        let (e, _) = complete(4).delete_vertices(&VertexSet::from([0, 1]));
        assert_eq!(e, complete(2));
    }

    #[test]
    fn add_edges_examples() {
        let c4 = cycle(4);
        // x = 0, x1 = 3, x2 = 1, alpha = 2
        let added: EdgeList = [(3, 1), (0, 2)].into_iter().collect();
        let (k4, dup) = c4.add_edges(&added).unwrap();
        assert_eq!(k4, complete(4));
        assert_eq!(dup, 0);

        let (same, dup) = c4.add_edges(&EdgeList::new()).unwrap();
        assert_eq!((same, dup), (c4.clone(), 0));

        let tri = complete(3);
        let (t, dup) = tri.add_edges(&[(0, 1)].into_iter().collect()).unwrap();
        assert_eq!((t, dup), (tri, 1));

        let mut bad = EdgeList::new();
        assert_eq!(bad.insert(2, 2), Err(Error::SelfLoop(2)));
        assert!(c4.add_edges(&[(0, 9)].into_iter().collect()).is_err());
    }

    #[test]
    fn degree_profile_examples() {
        assert_eq!(petersen().degree_profile(), DegreeProfile { min: 3, max: 3, is_cubic: true });
        assert_eq!(cycle(6).degree_profile(), DegreeProfile { min: 2, max: 2, is_cubic: false });
        assert_eq!(complete(4).degree_profile(), DegreeProfile { min: 3, max: 3, is_cubic: true });
    }

    #[test]
    fn named_graphs_are_cubic() {
        for g in [prism(), cube(), complete_bipartite(3, 3), petersen()] {
            assert!(g.degree_profile().is_cubic);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn serde_roundtrip() {
        let g = petersen();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Graph>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub(super) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (0..=max_n).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let len = pairs.len();
                proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
                    let edges = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(&p, _)| p);
                    Graph::from_edges(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn closed_neighborhood_contains_set(g in arb_graph(9), bits in any::<u16>()) {
                let w: VertexSet = g.vertices().filter(|&v| bits >> v & 1 == 1).collect();
                let cn = g.closed_neighborhood(&w).unwrap();
                prop_assert!(w.is_subset(&cn));
                let dom = g.is_dominating(&w).unwrap();
                let every = g.vertices().all(|v| w.contains(v) || g.neighbors(v).iter().any(|&u| w.contains(u)));
                prop_assert_eq!(dom, every);
            }

            #[test]
            fn deletion_keeps_exactly_the_surviving_edges(g in arb_graph(9), bits in any::<u16>()) {
                let s: VertexSet = g.vertices().filter(|&v| bits >> v & 1 == 1).collect();
                let (h, remap) = g.delete_vertices(&s);
                let mapped: EdgeList = h.edges().map(|(u, v)| (remap.to_old(u), remap.to_old(v))).collect();
                let expected: EdgeList = g.edges().filter(|&(u, v)| !s.contains(u) && !s.contains(v)).collect();
                prop_assert_eq!(mapped, expected);
                for v in h.vertices() {
                    prop_assert_eq!(remap.to_new(remap.to_old(v)), Some(v));
                }
            }
        }
    }
}
