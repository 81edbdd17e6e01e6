//! Scheme K: turn a connected graph into one whose induced cycles all have
//! length divisible by three and which has no cut vertex, by adding edges.
//!
//! Each round applies one of three moves:
//!
//! * cut vertex `v`: join every neighbour of `v` in one component of `G - v`
//!   to every neighbour of `v` in each other component;
//! * induced cycle `… w1 w w2 α …` of length 2 mod 3: add `w1w2`, `w1α`, `wα`;
//! * induced cycle `… x1 x x2 α …` of length 1 mod 3: add `x1x2`, `xα`.
//!
//! Every move adds at least one edge, so the loop always stops; the
//! iteration cap only guards against policy bugs.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{for_each_induced_cycle, InducedCycle, DEFAULT_CYCLE_CAP};
use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    CutVertex,
    CycleMod2,
    CycleMod1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KStep {
    pub kind: StepKind,
    /// The cut vertex, or the cycle vertex whose neighbours get joined.
    pub chosen: usize,
    pub cycle: Option<InducedCycle>,
    pub added: EdgeList,
    pub k_before: usize,
    pub k_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTrace {
    pub steps: Vec<KStep>,
    pub input: Graph,
    pub output: Graph,
    /// False when the iteration cap stopped the loop.
    pub terminated: bool,
    pub iterations: usize,
}

impl KTrace {
    /// Re-applies the recorded edge additions to the input.
    pub fn replay(&self) -> Result<Graph> {
        let mut g = self.input.clone();
        for s in &self.steps {
            let (next, dup) = g.add_edges(&s.added)?;
            if dup != 0 {
                return Err(Error::Input(format!("step {} re-adds an existing edge", s.k_before)));
            }
            g = next;
        }
        Ok(g)
    }

    pub fn added_edges(&self) -> EdgeList {
        let mut all = EdgeList::new();
        for s in &self.steps {
            all.extend_from(&s.added);
        }
        all
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoicePolicy {
    /// Smallest cut vertex; else the shortest, lexicographically smallest
    /// residue-2 cycle, then residue-1; pivot = smallest vertex on the cycle.
    #[default]
    Canonical,
    /// Uniform choices from a seeded stream. Cut vertices still go first.
    Randomized { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KConfig {
    pub policy: ChoicePolicy,
    /// Defaults to `10 n^2`.
    pub max_iterations: Option<usize>,
    pub cycle_cap: u64,
}

impl Default for KConfig {
    fn default() -> Self {
        Self { policy: ChoicePolicy::Canonical, max_iterations: None, cycle_cap: DEFAULT_CYCLE_CAP }
    }
}

pub fn step_cut_vertex(g: &Graph, v: usize) -> Result<(Graph, KStep)> {
    g.check_vertex(v)?;
    if !g.cut_vertices().contains(v) {
        return Err(Error::Input(format!("vertex {v} is not a cut vertex")));
    }
    let (rest, remap) = g.delete_vertices(&VertexSet::from([v]));
    let nbrs: VertexSet = g.neighbors(v).iter().copied().collect();
    // neighbours of v grouped by the component of G - v holding them
    let groups: Vec<Vec<usize>> = rest
        .components()
        .iter()
        .map(|c| remap.set_to_old(c).intersection(&nbrs).to_vec())
        .filter(|grp| !grp.is_empty())
        .collect();
    let mut added = EdgeList::new();
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            for &v1 in a {
                for &v2 in b {
                    added.insert(v1, v2)?;
                }
            }
        }
    }
    let (out, _) = g.add_edges(&added)?;
    Ok((out, KStep { kind: StepKind::CutVertex, chosen: v, cycle: None, added, k_before: 0, k_after: 1 }))
}

fn cycle_step(g: &Graph, d: &InducedCycle, pivot: usize, residue: usize) -> Result<(Graph, KStep)> {
    if d.residue() != residue {
        return Err(Error::Input(format!(
            "cycle of length {} has residue {}, expected {residue}",
            d.len(),
            d.residue()
        )));
    }
    let i = d.position(pivot).ok_or_else(|| Error::Input(format!("vertex {pivot} is not on the cycle")))?;
    if !d.is_induced_in(g) {
        return Err(Error::Input(format!("{:?} is no longer an induced cycle", d.vertices())));
    }
    let (p1, p2, alpha) = (d.at(i, -1), d.at(i, 1), d.at(i, 2));
    let mut added = EdgeList::new();
    added.insert(p1, p2)?;
    if residue == 2 {
        added.insert(p1, alpha)?;
    }
    added.insert(pivot, alpha)?;
    let (out, dup) = g.add_edges(&added)?;
    debug_assert_eq!(dup, 0);
    let kind = if residue == 2 { StepKind::CycleMod2 } else { StepKind::CycleMod1 };
    Ok((out, KStep { kind, chosen: pivot, cycle: Some(d.clone()), added, k_before: 0, k_after: 1 }))
}

/// Adds `w1w2`, `w1α`, `wα` where `w1, w2` are the cycle neighbours of `w`
/// (`w2` following `w` in canonical order) and `α` follows `w2`.
pub fn step_cycle_mod2(g: &Graph, d2: &InducedCycle, w: usize) -> Result<(Graph, KStep)> {
    cycle_step(g, d2, w, 2)
}

/// Adds `x1x2` and `xα`, roles assigned as in [`step_cycle_mod2`].
pub fn step_cycle_mod1(g: &Graph, d1: &InducedCycle, x: usize) -> Result<(Graph, KStep)> {
    cycle_step(g, d1, x, 1)
}

enum Move {
    Cut(usize),
    Cycle(InducedCycle, usize),
}

struct Chooser {
    policy: ChoicePolicy,
    rng: Option<ChaCha8Rng>,
    cycle_cap: u64,
}

impl Chooser {
    fn next(&mut self, g: &Graph) -> Result<Option<Move>> {
        let cuts = g.cut_vertices();
        if let Some(first) = cuts.first() {
            return Ok(Some(match self.rng.as_mut() {
                Some(rng) => Move::Cut(*cuts.to_vec().choose(rng).unwrap()),
                None => Move::Cut(first),
            }));
        }
        let cap = self.cycle_cap;
        let mut seen = 0u64;
        let mut over = false;
        let mut offenders: Vec<InducedCycle> = Vec::new();
        // canonical policy only needs the best cycle per residue
        let mut best: [Option<InducedCycle>; 3] = [None, None, None];
        let keep_all = self.rng.is_some();
        let _ = for_each_induced_cycle(g, None, |c| {
            seen += 1;
            if seen > cap {
                over = true;
                return ControlFlow::Break(());
            }
            let r = c.len() % 3;
            if r != 0 {
                let cand = InducedCycle::from_canonical(c.to_vec());
                if keep_all {
                    offenders.push(cand);
                } else if best[r].as_ref().is_none_or(|b| cand.length_then_lex(b).is_lt()) {
                    best[r] = Some(cand);
                }
            }
            ControlFlow::Continue(())
        });
        if over {
            return Err(Error::Budget { what: "induced cycle", cap });
        }
        match (self.policy, self.rng.as_mut()) {
            (ChoicePolicy::Randomized { .. }, Some(rng)) => {
                let Some(c) = offenders.choose(rng).cloned() else { return Ok(None) };
                let pivot = *c.vertices().choose(rng).unwrap();
                Ok(Some(Move::Cycle(c, pivot)))
            }
            _ => {
                let c = best[2].take().or_else(|| best[1].take());
                Ok(c.map(|c| {
                    let pivot = c.vertices()[0];
                    Move::Cycle(c, pivot)
                }))
            }
        }
    }
}

/// Runs scheme K on a connected graph.
pub fn construct_k(g: &Graph, config: &KConfig) -> Result<KTrace> {
    let comps = g.components().len();
    if comps > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let n = g.n();
    let max_iterations = config.max_iterations.unwrap_or(10 * n * n);
    let mut chooser = Chooser {
        policy: config.policy,
        rng: match config.policy {
            ChoicePolicy::Canonical => None,
            ChoicePolicy::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        cycle_cap: config.cycle_cap,
    };
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut terminated = false;
    while steps.len() < max_iterations {
        let Some(mv) = chooser.next(&cur)? else {
            terminated = true;
            break;
        };
        let (next, mut step) = match mv {
            Move::Cut(v) => step_cut_vertex(&cur, v)?,
            Move::Cycle(c, p) if c.residue() == 2 => step_cycle_mod2(&cur, &c, p)?,
            Move::Cycle(c, p) => step_cycle_mod1(&cur, &c, p)?,
        };
        step.k_before = steps.len();
        step.k_after = steps.len() + 1;
        steps.push(step);
        cur = next;
    }
    if !terminated && steps.len() >= max_iterations {
        // the cap was hit exactly when nothing was left to do
        terminated = chooser.next(&cur)?.is_none();
    }
    let iterations = steps.len();
    Ok(KTrace { steps, input: g.clone(), output: cur, terminated, iterations })
}

/// Applies scheme K to every component separately and returns the union of
/// the results on the original vertex ids, plus one trace per component (in
/// component-local ids) and the component vertex sets.
pub fn construct_k_per_component(g: &Graph, config: &KConfig) -> Result<(Graph, Vec<(VertexSet, KTrace)>)> {
    let mut added = EdgeList::new();
    let mut traces = Vec::new();
    for comp in g.components() {
        let (sub, remap) = g.induced_subgraph(&comp);
        let trace = construct_k(&sub, config)?;
        for (u, v) in trace.added_edges().iter() {
            added.insert(remap.to_old(u), remap.to_old(v))?;
        }
        traces.push((comp, trace));
    }
    let (out, _) = g.add_edges(&added)?;
    Ok((out, traces))
}
