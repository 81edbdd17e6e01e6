//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column-major order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &[u8] = b">>graph6<<";
const MAX_N: u64 = 68_719_476_735;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 record. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if text.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = text.len();
    while end > start && text[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let body = &text[start..end];
    let at = |i: usize| start + i;

    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(at(i), format!("byte {b} outside 63..=126")));
        }
    }
    if body.is_empty() {
        return Err(err(at(0), "missing size header"));
    }

    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as u64, 1)
    } else if body.len() >= 2 && body[1] != 126 {
        if body.len() < 4 {
            return Err(err(at(body.len()), "truncated 18-bit size header"));
        }
        (read_bits(&body[1..4]), 4)
    } else {
        if body.len() < 8 {
            return Err(err(at(body.len()), "truncated 36-bit size header"));
        }
        (read_bits(&body[2..8]), 8)
    };
    let n = usize::try_from(n).map_err(|_| err(at(0), "vertex count does not fit in memory"))?;

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[pos..];
    if data.len() < need {
        return Err(err(at(body.len()), format!("truncated: expected {need} data bytes, found {}", data.len())));
    }
    if data.len() > need {
        return Err(err(at(pos + need), "trailing bytes after edge data"));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            pos += need - 1;
            return Err(err(at(pos), "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn read_bits(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as u64)
}

fn push_bits(out: &mut Vec<u8>, value: u64, groups: u32) {
    for i in (0..groups).rev() {
        out.push(((value >> (6 * i)) & 63) as u8 + 63);
    }
}

/// Encodes `g` without header or trailing newline.
pub fn write_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n() as u64;
    assert!(n <= MAX_N, "graph6 cannot encode {n} vertices");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_bits(&mut out, n, 3);
    } else {
        out.push(126);
        out.push(126);
        push_bits(&mut out, n, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..g.n() {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

pub fn to_graph6_string(g: &Graph) -> String {
    String::from_utf8(write_graph6(g)).expect("graph6 is ascii")
}

/// Parses every non-empty line of a graph6 file.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim().as_bytes()).map_err(|e| match e {
                Error::Graph6 { offset, reason } => {
                    Error::Graph6 { offset, reason: format!("line {}: {reason}", i + 1) }
                }
                other => other,
            })
        })
        .collect()
}
