//! Evaluates every claim on a single graph and collects the verdicts into a
//! report. Claims are evaluated independently: a failing claim never stops
//! later ones, and claims whose hypotheses the graph does not meet are
//! recorded as skipped with the reason.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cycles::{all_induced_cycles_mod3, find_structures};
use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::io::graph6::to_graph6_string;
use crate::io::report::{CandidateSet, ClaimRecord, InputFormat, ReportDocument, Verdict};
use crate::labeling::{candidate_y, dominating_labelings, enumerate_labelings, is_independent};
use crate::oracle::{check_remark_r, enumerate_all_dsets, min_dominating_set_exact, RemarkOutcome};
use crate::pipeline::{
    build_g_double_prime, build_g_prime, check_subset_of_dset, combine, solve_cubic, Branch, PipelineConfig,
    SolveVerdict,
};
use crate::scheme_k::construct_k;

/// Claim identifiers, in report order.
pub mod claims {
    pub const K_TERMINATES: &str = "k_terminates";
    pub const K_TWO_CONNECTED: &str = "k_two_connected";
    pub const K_RESIDUE_ZERO_CYCLES: &str = "k_residue_zero_cycles";
    pub const K_DOMINATION_STRUCTURE: &str = "k_domination_structure";
    pub const K_SINGLE_STRUCTURE: &str = "k_single_structure";
    pub const LABELING_CONFLICT_FREE: &str = "labeling_conflict_free";
    pub const LABELING_COUNT_BOUND: &str = "labeling_count_bound";
    pub const LABELING_DOMINATES: &str = "labeling_dominates";
    pub const LABELING_ATTAINS_GAMMA: &str = "labeling_attains_gamma";
    pub const LABELING_INDEPENDENT: &str = "labeling_independent";
    pub const Y_SUBSET_OF_DSET: &str = "y_subset_of_dset";
    pub const SPLIT_RULE: &str = "split_rule";
    pub const SPLIT_PRIME_MEETS_NEIGHBOURHOOD: &str = "split_prime_meets_neighbourhood";
    pub const CASCADE_DOMINATES: &str = "cascade_dominates";
    pub const CASCADE_STRUCTURE: &str = "cascade_structure";
    pub const CASCADE_OPTIMAL: &str = "cascade_optimal";
    pub const SUBSET_DSET_REMARK: &str = "subset_dset_remark";

    pub const ALL: [&str; 17] = [
        K_TERMINATES,
        K_TWO_CONNECTED,
        K_RESIDUE_ZERO_CYCLES,
        K_DOMINATION_STRUCTURE,
        K_SINGLE_STRUCTURE,
        LABELING_CONFLICT_FREE,
        LABELING_COUNT_BOUND,
        LABELING_DOMINATES,
        LABELING_ATTAINS_GAMMA,
        LABELING_INDEPENDENT,
        Y_SUBSET_OF_DSET,
        SPLIT_RULE,
        SPLIT_PRIME_MEETS_NEIGHBOURHOOD,
        CASCADE_DOMINATES,
        CASCADE_STRUCTURE,
        CASCADE_OPTIMAL,
        SUBSET_DSET_REMARK,
    ];

    pub const SCHEME_K: [&str; 5] =
        [K_TERMINATES, K_TWO_CONNECTED, K_RESIDUE_ZERO_CYCLES, K_DOMINATION_STRUCTURE, K_SINGLE_STRUCTURE];
    pub const LABELING: [&str; 5] = [
        LABELING_CONFLICT_FREE,
        LABELING_COUNT_BOUND,
        LABELING_DOMINATES,
        LABELING_ATTAINS_GAMMA,
        LABELING_INDEPENDENT,
    ];
    pub const CASCADE: [&str; 3] = [CASCADE_DOMINATES, CASCADE_STRUCTURE, CASCADE_OPTIMAL];
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub pipeline: PipelineConfig,
    /// Claims reported as skipped without evaluation.
    pub disabled_claims: BTreeSet<String>,
    /// Exit with status 2 when any claim is refuted.
    pub strict: bool,
}

struct Claims<'a> {
    out: Vec<ClaimRecord>,
    disabled: &'a BTreeSet<String>,
}

impl Claims<'_> {
    fn enabled(&self, name: &str) -> bool {
        !self.disabled.contains(name)
    }

    fn push(&mut self, name: &str, verdict: Verdict, details: impl Into<String>) {
        let rec = if self.enabled(name) {
            ClaimRecord::new(name, verdict, details)
        } else {
            ClaimRecord::new(name, Verdict::Skipped, "disabled by configuration")
        };
        self.out.push(rec);
    }

    fn skip_all(&mut self, names: &[&str], reason: &str) {
        for name in names {
            self.push(name, Verdict::Skipped, reason);
        }
    }
}

fn holds(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Refuted
    }
}

fn budget_or_skip(e: &Error) -> Verdict {
    if matches!(e, Error::Budget { .. }) {
        Verdict::BudgetExceeded
    } else {
        Verdict::Skipped
    }
}

struct Timer {
    on: bool,
    doc_runtimes: std::collections::BTreeMap<String, f64>,
}

impl Timer {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            *self.doc_runtimes.entry(phase.to_string()).or_default() += t.elapsed().as_secs_f64() * 1e3;
        }
        out
    }
}

/// Evaluates all claims on `g`.
pub fn verify_graph(g: &Graph, graph_id: &str, format: InputFormat, cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new(graph_id, format, g.n(), g.m());
    let mut c = Claims { out: Vec::new(), disabled: &cfg.disabled_claims };
    let mut timer = Timer { on: cfg.pipeline.timings, doc_runtimes: Default::default() };
    let p = &cfg.pipeline;
    let budget = p.oracle_budget;

    if g.n() == 0 || !g.is_connected() {
        let reason = if g.n() == 0 { "empty graph" } else { "graph is disconnected" };
        c.skip_all(&claims::ALL, reason);
        doc.claims = c.out;
        return doc;
    }

    let oracle = timer.time("oracle", || min_dominating_set_exact(g, budget));
    let gamma = (!oracle.budget_hit).then_some(oracle.gamma);
    doc.oracle_gamma = gamma;
    if gamma.is_some() {
        doc.candidate_sets.push(CandidateSet::new("oracle_dset", oracle.witness.clone()));
    }

    // scheme K
    let trace = timer.time("k", || construct_k(g, &p.k));
    let mut structure = None;
    match &trace {
        Err(e) => {
            for name in claims::SCHEME_K {
                c.push(name, budget_or_skip(e), format!("scheme K failed: {e}"));
            }
        }
        Ok(t) if !t.terminated => {
            c.push(claims::K_TERMINATES, Verdict::BudgetExceeded, format!("stopped after {} iterations", t.iterations));
            for name in &claims::SCHEME_K[1..] {
                c.push(name, Verdict::BudgetExceeded, "scheme K did not terminate");
            }
        }
        Ok(t) => {
            let kg = &t.output;
            c.push(
                claims::K_TERMINATES,
                Verdict::Holds,
                format!("{} steps, {} added edges", t.steps.len(), t.added_edges().len()),
            );
            let cuts = kg.cut_vertices();
            c.push(
                claims::K_TWO_CONNECTED,
                holds(cuts.is_empty()),
                if cuts.is_empty() { String::new() } else { format!("cut vertices {:?}", cuts.to_vec()) },
            );
            match timer.time("k", || all_induced_cycles_mod3(kg, p.k.cycle_cap)) {
                Ok(None) => c.push(claims::K_RESIDUE_ZERO_CYCLES, Verdict::Holds, ""),
                Ok(Some(bad)) => c.push(
                    claims::K_RESIDUE_ZERO_CYCLES,
                    Verdict::Refuted,
                    format!("induced cycle {:?} of length {}", bad.vertices(), bad.len()),
                ),
                Err(e) => c.push(claims::K_RESIDUE_ZERO_CYCLES, budget_or_skip(&e), e.to_string()),
            }
            match timer.time("k", || find_structures(kg, p.k.cycle_cap, p.seam_rule)) {
                Ok(all) => {
                    structure = all.iter().find(|s| s.vertex_set() == kg.vertex_set()).cloned();
                    c.push(
                        claims::K_DOMINATION_STRUCTURE,
                        holds(structure.is_some()),
                        if structure.is_some() { String::new() } else { "no structure covers every vertex".into() },
                    );
                    c.push(claims::K_SINGLE_STRUCTURE, holds(all.len() == 1), format!("{} structures", all.len()));
                }
                Err(e) => {
                    c.push(claims::K_DOMINATION_STRUCTURE, budget_or_skip(&e), e.to_string());
                    c.push(claims::K_SINGLE_STRUCTURE, budget_or_skip(&e), e.to_string());
                }
            }
        }
    }

    // labelings
    let min_deg_ok = g.degree_profile().min >= 3;
    let mut ys: Vec<VertexSet> = Vec::new();
    match (&trace, &structure) {
        _ if !min_deg_ok => c.skip_all(&claims::LABELING, "requires minimum degree 3"),
        (Ok(t), Some(h)) => {
            let kg = &t.output;
            match timer.time("labeling", || enumerate_labelings(kg, h)) {
                Ok(set) => {
                    c.push(
                        claims::LABELING_CONFLICT_FREE,
                        holds(set.conflicted_attempts == 0),
                        format!(
                            "{} of {} attempts conflicted, seam rule fired {} times",
                            set.conflicted_attempts, set.raw_attempts, set.seam_rule_firings
                        ),
                    );
                    let count = set.consistent_count();
                    c.push(
                        claims::LABELING_COUNT_BOUND,
                        holds(count <= g.n()),
                        format!("{count} distinct consistent labelings, |V| = {}", g.n()),
                    );
                    let (dom, verdict) = dominating_labelings(kg, &set);
                    c.push(claims::LABELING_DOMINATES, verdict, format!("{} of {count} dominate K(G)", dom.len()));
                    let cy = timer.time("labeling", || candidate_y(kg, &set, budget));
                    let details = match (cy.gamma, cy.candidates.first()) {
                        (Some(gm), Some(y)) => format!("smallest labeling {}, gamma(K(G)) = {gm}", y.len()),
                        (Some(gm), None) => format!("no dominating labeling, gamma(K(G)) = {gm}"),
                        (None, _) => format!("oracle budget exhausted, best bound {}", cy.gamma_bound),
                    };
                    c.push(claims::LABELING_ATTAINS_GAMMA, cy.verdict, details);
                    let dependent: Vec<&VertexSet> = cy.candidates.iter().filter(|y| !is_independent(kg, y)).collect();
                    let verdict = if cy.candidates.is_empty() { Verdict::Skipped } else { holds(dependent.is_empty()) };
                    c.push(
                        claims::LABELING_INDEPENDENT,
                        verdict,
                        match dependent.first() {
                            Some(y) => format!("candidate {:?} spans an edge of K(G)", y.to_vec()),
                            None if cy.candidates.is_empty() => "no candidates".into(),
                            None => String::new(),
                        },
                    );
                    ys = cy.candidates;
                }
                Err(e) => c.skip_all(&claims::LABELING, &format!("labeling failed: {e}")),
            }
        }
        _ => c.skip_all(&claims::LABELING, "no domination structure of K(G)"),
    }
    for y in &ys {
        doc.candidate_sets.push(CandidateSet::new("labeling_y", y.clone()));
    }

    // subset and split claims
    if !min_deg_ok {
        c.skip_all(
            &[claims::Y_SUBSET_OF_DSET, claims::SPLIT_RULE, claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD],
            "requires minimum degree 3",
        );
    } else {
        let sub = timer.time("subset", || check_subset_of_dset(g, &ys, budget));
        let details = match (&sub.witness, sub.verdict) {
            (Some((y, x)), _) => format!("{:?} lies in {:?}", y.to_vec(), x.to_vec()),
            (None, Verdict::Refuted) => {
                let listing: Vec<Vec<usize>> = sub.dsets.iter().map(VertexSet::to_vec).collect();
                format!("{}; minimum dominating sets {listing:?}", sub.reason)
            }
            _ => sub.reason.clone(),
        };
        c.push(claims::Y_SUBSET_OF_DSET, sub.verdict, details);
        match &sub.witness {
            Some((y, _)) => timer.time("split", || split_claims(&mut c, g, y, gamma, budget)),
            None => c.skip_all(
                &[claims::SPLIT_RULE, claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD],
                "no candidate lies in a minimum dominating set",
            ),
        }
    }

    // cascade
    let mut remark_x = (gamma.is_some()).then(|| oracle.witness.clone());
    if !g.degree_profile().is_cubic {
        c.skip_all(&claims::CASCADE, "requires cubic input");
    } else {
        match timer.time("cascade", || solve_cubic(g, &PipelineConfig { timings: false, ..*p })) {
            Ok(r) => {
                c.push(
                    claims::CASCADE_DOMINATES,
                    holds(r.dominates),
                    format!("candidate of size {}", r.candidate.len()),
                );
                c.push(
                    claims::CASCADE_STRUCTURE,
                    if r.structure_ok { Verdict::Holds } else { Verdict::StructureViolation },
                    r.flags.join("; "),
                );
                let (verdict, details) = match r.oracle_gamma {
                    None => (Verdict::Skipped, "oracle budget exhausted".to_string()),
                    Some(gm) => (
                        holds(r.dominates && r.candidate.len() == gm),
                        format!("{:?}: |X| = {}, gamma = {gm}", r.verdict, r.candidate.len()),
                    ),
                };
                c.push(claims::CASCADE_OPTIMAL, verdict, details);
                if r.verdict != SolveVerdict::NotDominating {
                    remark_x = Some(r.candidate.clone());
                }
                doc.candidate_sets.push(CandidateSet::new("cascade_candidate", r.candidate));
            }
            Err(e) => c.skip_all(&claims::CASCADE, &format!("cascade failed: {e}")),
        }
    }

    // the subset characterisation of minimum dominating sets
    match remark_x {
        None => c.push(claims::SUBSET_DSET_REMARK, Verdict::Skipped, "oracle budget exhausted"),
        Some(x) => match timer.time("remark", || check_remark_r(g, &x, budget)) {
            Ok(r) => {
                let verdict = match r.outcome {
                    RemarkOutcome::Holds => Verdict::Holds,
                    RemarkOutcome::Refuted => Verdict::Refuted,
                    RemarkOutcome::Skipped => Verdict::Skipped,
                };
                let details = match (&r.failing_subset, r.x_is_minimum) {
                    (Some(d), Some(m)) => {
                        format!("X = {:?}, subset {:?} not minimum locally, X minimum: {m}", x.to_vec(), d.to_vec())
                    }
                    (None, Some(m)) => format!("X = {:?}, X minimum: {m}", x.to_vec()),
                    _ => r.reason,
                };
                c.push(claims::SUBSET_DSET_REMARK, verdict, details);
            }
            Err(e) => c.push(claims::SUBSET_DSET_REMARK, Verdict::Skipped, e.to_string()),
        },
    }

    doc.claims = c.out;
    doc.runtimes = timer.doc_runtimes;
    if doc.has_failure() {
        doc.counterexample = Some(to_graph6_string(g));
    }
    doc
}

/// The size-comparison rule on `G'` and `G''` for a `y` that lies in a
/// minimum dominating set.
fn split_claims(c: &mut Claims, g: &Graph, y: &VertexSet, gamma: Option<usize>, budget: u64) {
    let names = [claims::SPLIT_RULE, claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD];
    let (Ok((g1, r1)), Ok((g2, r2))) = (build_g_prime(g, y), build_g_double_prime(g, y)) else {
        c.skip_all(&names, "could not build G' and G''");
        return;
    };
    let (z1, z2) = (min_dominating_set_exact(&g1, budget), min_dominating_set_exact(&g2, budget));
    let Some(gamma) = gamma.filter(|_| !z1.budget_hit && !z2.budget_hit) else {
        c.skip_all(&names, "oracle budget exhausted");
        return;
    };
    let (z1s, z2s) = (r1.set_to_old(&z1.witness), r2.set_to_old(&z2.witness));
    let (x, branch) = combine(y, &z1s, &z2s);
    let ok = g.undominated(&x).is_none() && x.len() == gamma;
    c.push(
        claims::SPLIT_RULE,
        holds(ok),
        format!("|Z1| = {}, |Z2| = {}, {branch:?} gives {} vs gamma {gamma}", z1s.len(), z2s.len(), x.len()),
    );
    if branch != Branch::Prime {
        c.push(claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD, Verdict::Skipped, "|Z1| >= |Z2|");
        return;
    }
    let all = enumerate_all_dsets(&g1, budget);
    if all.budget_hit {
        c.push(claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD, Verdict::Skipped, "oracle budget exhausted");
        return;
    }
    let nbrs = g.open_neighborhood(y).expect("y is in range");
    let missing = all.dsets.iter().map(|z| r1.set_to_old(z)).find(|z| z.is_disjoint(&nbrs));
    c.push(
        claims::SPLIT_PRIME_MEETS_NEIGHBOURHOOD,
        holds(missing.is_none()),
        match missing {
            Some(z) => format!("minimum dominating set {:?} of G' avoids N(Y)", z.to_vec()),
            None => format!("all {} minimum dominating sets of G' meet N(Y)", all.dsets.len()),
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn verdict(doc: &ReportDocument, name: &str) -> Verdict {
        doc.claim(name).unwrap_or_else(|| panic!("missing {name}")).verdict
    }

    #[test]
    fn every_claim_is_reported_once_in_order() {
        for g in [complete(4), cycle(5), petersen(), complete(4).disjoint_union(&complete(3))] {
            let doc = verify_graph(&g, "g", InputFormat::Generated, &RunConfig::default());
            let names: Vec<&str> = doc.claims.iter().map(|c| c.claim.as_str()).collect();
            assert_eq!(names, claims::ALL.to_vec());
            doc.validate().unwrap();
        }
    }

    #[test]
    fn k4_all_applicable_claims_hold() {
        let doc = verify_graph(&complete(4), "k4", InputFormat::Generated, &RunConfig::default());
        for c in &doc.claims {
            assert!(
                matches!(c.verdict, Verdict::Holds | Verdict::Skipped),
                "{}: {:?} {}",
                c.claim,
                c.verdict,
                c.details
            );
        }
        for name in [claims::K_TWO_CONNECTED, claims::LABELING_ATTAINS_GAMMA, claims::CASCADE_OPTIMAL] {
            assert_eq!(verdict(&doc, name), Verdict::Holds);
        }
        assert_eq!(doc.oracle_gamma, Some(1));
        assert!(doc.counterexample.is_none());
        assert!(doc.runtimes.is_empty());
    }

    #[test]
    fn c5_runs_scheme_k_claims_only() {
        let doc = verify_graph(&cycle(5), "c5", InputFormat::Generated, &RunConfig::default());
        for name in claims::SCHEME_K {
            assert_ne!(verdict(&doc, name), Verdict::Skipped, "{name}");
        }
        for name in claims::LABELING.iter().chain(&claims::CASCADE) {
            assert_eq!(verdict(&doc, name), Verdict::Skipped, "{name}");
        }
    }

    #[test]
    fn disconnected_graphs_are_skipped() {
        let g = complete(4).disjoint_union(&complete(4));
        let doc = verify_graph(&g, "two", InputFormat::Generated, &RunConfig::default());
        assert!(doc.claims.iter().all(|c| c.verdict == Verdict::Skipped));
    }

    #[test]
    fn disabled_claims_are_skipped() {
        let cfg = RunConfig { disabled_claims: [claims::CASCADE_OPTIMAL.to_string()].into(), ..Default::default() };
        let doc = verify_graph(&complete(4), "k4", InputFormat::Generated, &cfg);
        assert_eq!(verdict(&doc, claims::CASCADE_OPTIMAL), Verdict::Skipped);
    }

    #[test]
    fn timings_only_on_request() {
        let mut cfg = RunConfig::default();
        cfg.pipeline.timings = true;
        let doc = verify_graph(&petersen(), "p", InputFormat::Generated, &cfg);
        assert!(doc.runtimes.contains_key("cascade"));
        assert_eq!(doc.oracle_gamma, Some(3));
        assert_ne!(verdict(&doc, claims::CASCADE_OPTIMAL), Verdict::Skipped);
    }

    #[test]
    fn failures_carry_a_counterexample() {
        for g in [petersen(), cube(), prism(), complete_bipartite(3, 3)] {
            let doc = verify_graph(&g, "g", InputFormat::Generated, &RunConfig::default());
            assert_eq!(doc.counterexample.is_some(), doc.has_failure());
            if let Some(g6) = &doc.counterexample {
                assert_eq!(crate::io::parse_graph6(g6.as_bytes()).unwrap(), g);
            }
        }
    }
}
