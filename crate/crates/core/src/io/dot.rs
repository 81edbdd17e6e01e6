use std::fmt::Write;

use crate::graph::{EdgeList, Graph, VertexSet};

/// Highlights for DOT output. Edges in `added` are drawn red and dashed;
/// vertices in `labeled` are filled.
#[derive(Clone, Debug, Default)]
pub struct DotAnnotations {
    pub name: Option<String>,
    pub added: EdgeList,
    pub labeled: VertexSet,
}

pub fn write_dot(g: &Graph, ann: &DotAnnotations) -> String {
    let mut out = String::new();
    let name = ann.name.as_deref().unwrap_or("G");
    writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    for v in g.vertices() {
        if ann.labeled.contains(v) {
            writeln!(out, "  {v} [style=filled, fillcolor=gold, labeled=true];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        if ann.added.contains(u, v) {
            writeln!(out, "  {u} -- {v} [color=red, style=dashed, origin=added];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
