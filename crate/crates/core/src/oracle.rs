//! Exact minimum dominating sets.
//!
//! `min_dominating_set_exact` runs iterative deepening on the set size, from
//! `max(⌈n/(Δ+1)⌉, 1)` up to a greedy upper bound, branching on the
//! undominated vertex with the fewest remaining candidate dominators. Once
//! the optimum size is known, a second search walks vertices in id order to
//! extract the lexicographically smallest witness. All searches share one
//! node budget; exhausting it is reported in-band.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Exact γ, or the best upper bound when `budget_hit`.
    pub gamma: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

/// Search state shared by both search phases.
struct Search<'a> {
    g: &'a Graph,
    /// Closed neighbourhoods.
    closed: Vec<Vec<usize>>,
    /// How many chosen vertices dominate each vertex.
    cover: Vec<u32>,
    undominated: usize,
    chosen: Vec<usize>,
    max_closed: usize,
    nodes: u64,
    budget: u64,
}

#[derive(Debug)]
struct OutOfBudget;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let closed: Vec<Vec<usize>> = g
            .vertices()
            .map(|v| {
                let mut c = g.neighbors(v).to_vec();
                c.push(v);
                c.sort_unstable();
                c
            })
            .collect();
        let max_closed = closed.iter().map(Vec::len).max().unwrap_or(1);
        Search {
            g,
            closed,
            cover: vec![0; g.n()],
            undominated: g.n(),
            chosen: Vec::new(),
            max_closed,
            nodes: 0,
            budget,
        }
    }

    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn add(&mut self, v: usize) {
        self.chosen.push(v);
        for i in 0..self.closed[v].len() {
            let u = self.closed[v][i];
            if self.cover[u] == 0 {
                self.undominated -= 1;
            }
            self.cover[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        let last = self.chosen.pop();
        debug_assert_eq!(last, Some(v));
        for i in 0..self.closed[v].len() {
            let u = self.closed[v][i];
            self.cover[u] -= 1;
            if self.cover[u] == 0 {
                self.undominated += 1;
            }
        }
    }

    fn hopeless(&self, slots: usize) -> bool {
        self.undominated > slots * self.max_closed
    }

    /// Is there a dominating set with at most `slots` more vertices, none of
    /// them `forbidden`? Leaves the witness in `chosen` on success.
    fn decide(&mut self, slots: usize, forbidden: &mut Vec<bool>) -> std::result::Result<bool, OutOfBudget> {
        self.tick()?;
        if self.undominated == 0 {
            return Ok(true);
        }
        if slots == 0 || self.hopeless(slots) {
            return Ok(false);
        }
        // undominated vertex with the fewest allowed dominators
        let mut pick: Option<(usize, usize)> = None;
        for v in self.g.vertices() {
            if self.cover[v] > 0 {
                continue;
            }
            let options = self.closed[v].iter().filter(|&&u| !forbidden[u]).count();
            if options == 0 {
                return Ok(false);
            }
            if pick.is_none_or(|(_, best)| options < best) {
                pick = Some((v, options));
            }
        }
        let (v, _) = pick.expect("some vertex is undominated");
        let options: Vec<usize> = self.closed[v].iter().copied().filter(|&u| !forbidden[u]).collect();
        let mut banned = Vec::new();
        let mut found = false;
        for u in options {
            self.add(u);
            let ok = self.decide(slots - 1, forbidden);
            match ok {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    self.remove(u);
                    for b in banned {
                        forbidden[b] = false;
                    }
                    return Err(e);
                }
            }
            self.remove(u);
            // later branches may assume u is not in the set
            forbidden[u] = true;
            banned.push(u);
        }
        for b in banned {
            forbidden[b] = false;
        }
        Ok(found)
    }

    /// Enumerates dominating sets of exactly `size` vertices in
    /// lexicographic order, deciding vertices in id order. `last_in[u]` is
    /// the largest id in `N[u]`. `emit` returns false to stop.
    fn sweep<F>(
        &mut self,
        next: usize,
        size: usize,
        last_in: &[usize],
        emit: &mut F,
    ) -> std::result::Result<bool, OutOfBudget>
    where
        F: FnMut(&[usize]) -> bool,
    {
        self.tick()?;
        let slots = size - self.chosen.len();
        if slots == 0 {
            return Ok(if self.undominated == 0 { emit(&self.chosen) } else { true });
        }
        if next >= self.g.n() || self.hopeless(slots) || self.g.n() - next < slots {
            return Ok(true);
        }
        // include `next`
        self.add(next);
        let cont = self.sweep(next + 1, size, last_in, emit);
        self.remove(next);
        if !cont? {
            return Ok(false);
        }
        // exclude `next`: every vertex whose closed neighbourhood ends at
        // `next` must already be dominated
        let dead = self.closed[next].iter().any(|&u| last_in[u] == next && self.cover[u] == 0);
        if dead {
            return Ok(true);
        }
        self.sweep(next + 1, size, last_in, emit)
    }
}

fn last_in(g: &Graph) -> Vec<usize> {
    g.vertices().map(|v| g.neighbors(v).last().copied().unwrap_or(v).max(v)).collect()
}

/// Greedy dominating set: repeatedly take the vertex covering the most
/// undominated vertices (smallest id on ties).
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let mut dominated = vec![false; g.n()];
    let mut left = g.n();
    let mut out = VertexSet::new();
    while left > 0 {
        let gain = |v: usize| (!dominated[v]) as usize + g.neighbors(v).iter().filter(|&&u| !dominated[u]).count();
        let v = g.vertices().max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).unwrap();
        out.insert(v);
        for u in g.neighbors(v).iter().copied().chain([v]) {
            if !dominated[u] {
                dominated[u] = true;
                left -= 1;
            }
        }
    }
    out
}

pub fn min_dominating_set_exact(g: &Graph, budget: u64) -> OracleResult {
    let n = g.n();
    if n == 0 {
        return OracleResult { gamma: 0, witness: VertexSet::new(), nodes_explored: 0, budget_hit: false };
    }
    let greedy = greedy_dominating_set(g);
    let max_deg = g.degree_profile().max;
    let lower = n.div_ceil(max_deg + 1).max(1);
    let mut s = Search::new(g, budget);
    let fallback =
        |nodes| OracleResult { gamma: greedy.len(), witness: greedy.clone(), nodes_explored: nodes, budget_hit: true };

    let mut gamma = greedy.len();
    for k in lower..greedy.len() {
        let mut forbidden = vec![false; n];
        match s.decide(k, &mut forbidden) {
            Ok(true) => {
                gamma = k;
                break;
            }
            Ok(false) => {}
            Err(OutOfBudget) => return fallback(s.nodes),
        }
    }
    while let Some(&v) = s.chosen.last() {
        s.remove(v);
    }

    let last = last_in(g);
    let mut witness = None;
    let res = s.sweep(0, gamma, &last, &mut |set: &[usize]| {
        witness = Some(set.iter().copied().collect::<VertexSet>());
        false
    });
    match (res, witness) {
        (Ok(_), Some(w)) => OracleResult { gamma, witness: w, nodes_explored: s.nodes, budget_hit: false },
        (Err(OutOfBudget), _) => fallback(s.nodes),
        (Ok(_), None) => unreachable!("a dominating set of size {gamma} exists"),
    }
}

/// γ(G) without a witness search beyond what the oracle needs.
pub fn domination_number(g: &Graph, budget: u64) -> Option<usize> {
    let r = min_dominating_set_exact(g, budget);
    (!r.budget_hit).then_some(r.gamma)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsetEnumeration {
    pub gamma: usize,
    pub dsets: Vec<VertexSet>,
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

/// Every minimum dominating set of `g`, in lexicographic order.
pub fn enumerate_all_dsets(g: &Graph, budget: u64) -> DsetEnumeration {
    let first = min_dominating_set_exact(g, budget);
    if first.budget_hit {
        return DsetEnumeration {
            gamma: first.gamma,
            dsets: Vec::new(),
            nodes_explored: first.nodes_explored,
            budget_hit: true,
        };
    }
    if g.n() == 0 {
        return DsetEnumeration { gamma: 0, dsets: vec![VertexSet::new()], nodes_explored: 0, budget_hit: false };
    }
    let mut s = Search::new(g, budget.saturating_sub(first.nodes_explored));
    let last = last_in(g);
    let mut dsets = Vec::new();
    let res = s.sweep(0, first.gamma, &last, &mut |set: &[usize]| {
        dsets.push(set.iter().copied().collect());
        true
    });
    DsetEnumeration {
        gamma: first.gamma,
        budget_hit: res.is_err(),
        nodes_explored: first.nodes_explored + s.nodes,
        dsets,
    }
}

/// ⌈n/3⌉, the domination number of the path on `n ≥ 1` vertices.
pub fn gamma_path(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Input("path needs at least one vertex".into()));
    }
    Ok(n.div_ceil(3))
}

/// ⌈n/3⌉, the domination number of the cycle on `n ≥ 3` vertices.
pub fn gamma_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::Input(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Ok(n.div_ceil(3))
}

/// Positions of a minimum dominating set on a path `0..n`: `1, 4, 7, …`,
/// with the last one clamped to the final vertex.
pub fn path_witness_positions(n: usize) -> Result<Vec<usize>> {
    let k = gamma_path(n)?;
    Ok((0..k).map(|i| (3 * i + 1).min(n - 1)).collect())
}

/// Positions `0, 3, 6, …` on a cycle of length `n`.
pub fn cycle_witness_positions(n: usize) -> Result<Vec<usize>> {
    let k = gamma_cycle(n)?;
    Ok((0..k).map(|i| 3 * i).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Minimality {
    Minimal,
    /// Dropping `removable` still leaves a dominating set.
    NotMinimal {
        removable: usize,
    },
    NotDominating,
}

pub fn minimality(g: &Graph, x: &VertexSet) -> Result<Minimality> {
    if !g.is_dominating(x)? {
        return Ok(Minimality::NotDominating);
    }
    for v in x.iter() {
        let mut rest = x.clone();
        rest.remove(v);
        if g.undominated(&rest).is_none() {
            return Ok(Minimality::NotMinimal { removable: v });
        }
    }
    Ok(Minimality::Minimal)
}

pub fn is_minimal_dominating(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(minimality(g, x)? == Minimality::Minimal)
}

pub const REMARK_SUBSET_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RemarkOutcome {
    Holds,
    Refuted,
    Skipped,
}

/// Both sides of "every D ⊆ X is a minimum dominating set of G[N[D]]" ⇔
/// "X is a minimum dominating set of G", evaluated on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkCheck {
    /// `None` when not evaluated (budget or subset limit).
    pub every_subset_minimum: Option<bool>,
    /// First subset that is not a minimum dominating set of its closed
    /// neighbourhood.
    pub failing_subset: Option<VertexSet>,
    pub x_is_minimum: Option<bool>,
    pub outcome: RemarkOutcome,
    pub reason: String,
}

pub fn check_remark_r(g: &Graph, x: &VertexSet, budget: u64) -> Result<RemarkCheck> {
    if !g.is_dominating(x)? {
        return Err(Error::Input("set does not dominate the graph".into()));
    }
    let skipped = |reason: String, left, failing, right| RemarkCheck {
        every_subset_minimum: left,
        failing_subset: failing,
        x_is_minimum: right,
        outcome: RemarkOutcome::Skipped,
        reason,
    };
    let right = domination_number(g, budget).map(|gamma| x.len() == gamma);
    if x.len() > REMARK_SUBSET_LIMIT {
        return Ok(skipped(format!("|X| = {} exceeds {REMARK_SUBSET_LIMIT}", x.len()), None, None, right));
    }
    let members = x.to_vec();
    let mut left = Some(true);
    let mut failing = None;
    for mask in 0u32..(1u32 << members.len()) {
        let d: VertexSet = members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let (h, _) = g.induced_subgraph(&g.closed_neighborhood(&d)?);
        match domination_number(&h, budget) {
            Some(gamma) if gamma == d.len() => {}
            Some(_) => {
                left = Some(false);
                failing = Some(d);
                break;
            }
            None => {
                left = None;
                break;
            }
        }
    }
    let (Some(l), Some(r)) = (left, right) else {
        return Ok(skipped("oracle budget exhausted".into(), left, failing, right));
    };
    Ok(RemarkCheck {
        every_subset_minimum: Some(l),
        failing_subset: failing,
        x_is_minimum: Some(r),
        outcome: if l == r { RemarkOutcome::Holds } else { RemarkOutcome::Refuted },
        reason: format!("left side {l}, right side {r}"),
    })
}
