//! Graph interchange formats and the verdict report.

pub mod dot;
pub mod edgelist;
pub mod graph6;
pub mod report;

pub use dot::{write_dot, DotAnnotations};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6_string, write_graph6};
pub use report::{read_report, write_report, CandidateSet, ClaimRecord, InputFormat, ReportDocument, Verdict};
