//! JSON verdict reports, schema version 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub const SCHEMA_VERSION: &str = "1";

/// JSON Schema for [`ReportDocument`].
pub const REPORT_SCHEMA_V1: &str = include_str!("../../schema/report-v1.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Refuted,
    Skipped,
    StructureViolation,
    BudgetExceeded,
}

impl Verdict {
    pub const ALL: [Verdict; 5] =
        [Verdict::Holds, Verdict::Refuted, Verdict::Skipped, Verdict::StructureViolation, Verdict::BudgetExceeded];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Refuted => "REFUTED",
            Verdict::Skipped => "SKIPPED",
            Verdict::StructureViolation => "STRUCTURE_VIOLATION",
            Verdict::BudgetExceeded => "BUDGET_EXCEEDED",
        }
    }

    /// Whether the verdict obliges the report to carry a counterexample.
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Refuted | Verdict::StructureViolation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Graph6,
    Edgelist,
    Generated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub verdict: Verdict,
    pub details: String,
}

impl ClaimRecord {
    pub fn new(claim: &str, verdict: Verdict, details: impl Into<String>) -> Self {
        Self { claim: claim.to_string(), verdict, details: details.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub role: String,
    pub members: VertexSet,
    pub size: usize,
}

impl CandidateSet {
    pub fn new(role: &str, members: VertexSet) -> Self {
        Self { role: role.to_string(), size: members.len(), members }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub graph_id: String,
    pub input_format: InputFormat,
    pub n: usize,
    pub m: usize,
    pub claims: Vec<ClaimRecord>,
    pub candidate_sets: Vec<CandidateSet>,
    pub oracle_gamma: Option<usize>,
    /// Wall-clock milliseconds per phase; empty unless timing was requested.
    pub runtimes: BTreeMap<String, f64>,
    pub counterexample: Option<String>,
}

impl ReportDocument {
    pub fn new(graph_id: impl Into<String>, input_format: InputFormat, n: usize, m: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            graph_id: graph_id.into(),
            input_format,
            n,
            m,
            claims: Vec::new(),
            candidate_sets: Vec::new(),
            oracle_gamma: None,
            runtimes: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.claim == name)
    }

    pub fn has_failure(&self) -> bool {
        self.claims.iter().any(|c| c.verdict.is_failure())
    }

    /// Checks the document-level rules the JSON schema cannot express.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Input(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema_version {:?}", self.schema_version));
        }
        if self.counterexample.is_some() && !self.has_failure() {
            return bad("counterexample present without a failing claim".into());
        }
        for c in &self.candidate_sets {
            if c.size != c.members.len() {
                return bad(format!("candidate set {:?} size mismatch", c.role));
            }
            if c.members.check_range(self.n).is_err() {
                return bad(format!("candidate set {:?} out of range", c.role));
            }
        }
        Ok(())
    }
}

pub fn write_report(doc: &ReportDocument) -> String {
    serde_json::to_string_pretty(doc).expect("report serialization")
}

pub fn read_report(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("report json: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> jsonschema::Validator {
        let v: serde_json::Value = serde_json::from_str(REPORT_SCHEMA_V1).unwrap();
        jsonschema::validator_for(&v).unwrap()
    }

    #[test]
    fn minimal_document() {
        let doc = ReportDocument::new("g0", InputFormat::Graph6, 0, 0);
        let json = write_report(&doc);
        assert!(json.contains("\"claims\": []"));
        assert!(json.contains("\"schema_version\": \"1\""));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(schema().is_valid(&v));
        assert_eq!(read_report(&json).unwrap(), doc);
    }

    #[test]
    fn refuted_document_carries_counterexample() {
        let mut doc = ReportDocument::new("k4", InputFormat::Generated, 4, 6);
        doc.claims.push(ClaimRecord::new("some_claim", Verdict::Refuted, "why"));
        doc.candidate_sets.push(CandidateSet::new("Y", VertexSet::from([0])));
        doc.counterexample = Some("C~".into());
        doc.oracle_gamma = Some(1);
        doc.runtimes.insert("oracle".into(), 0.5);
        doc.validate().unwrap();
        let json = write_report(&doc);
        assert!(json.contains("\"counterexample\": \"C~\""));
        assert!(json.contains("\"REFUTED\""));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(schema().is_valid(&v));
        assert_eq!(read_report(&json).unwrap(), doc);
    }

    #[test]
    fn field_order_is_stable() {
        let json = write_report(&ReportDocument::new("x", InputFormat::Edgelist, 1, 0));
        let keys: Vec<usize> = [
            "schema_version",
            "graph_id",
            "input_format",
            "n",
            "m",
            "claims",
            "candidate_sets",
            "oracle_gamma",
            "runtimes",
            "counterexample",
        ]
        .iter()
        .map(|k| json.find(&format!("\"{k}\"")).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validation_rules() {
        let mut doc = ReportDocument::new("x", InputFormat::Graph6, 3, 0);
        doc.counterexample = Some("Bw".into());
        assert!(doc.validate().is_err());
        doc.counterexample = None;
        doc.candidate_sets.push(CandidateSet { role: "Y".into(), members: VertexSet::from([5]), size: 1 });
        assert!(doc.validate().is_err());

        let mut bad: serde_json::Value = serde_json::from_str(&write_report(&doc)).unwrap();
        bad["claims"] = serde_json::json!([{ "claim": "c", "verdict": "MAYBE", "details": "" }]);
        assert!(!schema().is_valid(&bad));
    }
}
