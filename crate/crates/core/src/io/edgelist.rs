//! Whitespace-separated edge lists, one `u v` pair per line.
//!
//! An optional first line `n m` declares the vertex and edge counts. It is
//! recognised as a header only when exactly `m` pair lines follow and every
//! id is below `n`; otherwise it is read as an ordinary edge. Lines starting
//! with `#` and blank lines are ignored.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = |reason: String| Error::EdgeList { line: lineno, reason };
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| bad(format!("missing {what}")))?;
        tok.parse::<usize>().map_err(|_| bad(format!("malformed token {tok:?}")))
    };
    let u = next("first id")?;
    let v = next("second id")?;
    if let Some(extra) = it.next() {
        return Err(bad(format!("unexpected token {extra:?}")));
    }
    Ok((u, v))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push((i + 1, parse_pair(line, i + 1)?));
    }

    let mut declared_n = None;
    if let Some(&(_, (n, m))) = rows.first() {
        let rest = &rows[1..];
        // a lone "k k" line is a loop, not the header of an empty graph
        let lone_loop = n == m && rest.is_empty();
        if !lone_loop && rest.len() == m && rest.iter().all(|&(_, (u, v))| u < n && v < n) {
            declared_n = Some(n);
            rows.remove(0);
        }
    }

    for &(line, (u, v)) in &rows {
        if u == v {
            return Err(Error::EdgeList { line, reason: format!("loop at vertex {u}") });
        }
    }
    let n = declared_n.unwrap_or_else(|| rows.iter().map(|&(_, (u, v))| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, rows.into_iter().map(|(_, p)| p))
}

pub fn write_edge_list(g: &Graph) -> String {
    if g.n() == 0 {
        return String::new();
    }
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
