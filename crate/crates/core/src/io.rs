// SPDX-License-Identifier: Apache-2.0

//! graph6 and edge-list JSON readers and writers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn perr(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        msg: msg.into(),
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes a graph6 string; surrounding whitespace and the optional header
/// are accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let lead = s.len() - s.trim_start().len();
    let mut body = s.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(perr(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let val = |i: usize| (bytes[i] - 63) as usize;
    if bytes.is_empty() {
        return Err(perr(base, "empty graph6 string"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (val(0), 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(perr(base + bytes.len(), "truncated size field"));
        }
        ((2..8).fold(0, |acc, i| (acc << 6) | val(i)), 8)
    } else {
        if bytes.len() < 4 {
            return Err(perr(base + bytes.len(), "truncated size field"));
        }
        ((1..4).fold(0, |acc, i| (acc << 6) | val(i)), 4)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(perr(
            base + pos.min(bytes.len()),
            format!("expected {need} adjacency bytes, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(pos + k / 6);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct EdgeList {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Edge-list JSON, edges sorted with `u < v` (no trailing newline).
pub fn to_json(g: &Graph) -> String {
    let doc = EdgeList {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("serialisable")
}

/// Byte offset of a 1-based line/column pair.
pub fn offset_of(s: &str, line: usize, column: usize) -> usize {
    let mut off = 0;
    for (i, l) in s.split_inclusive('\n').enumerate() {
        if i + 1 == line {
            return off + column.saturating_sub(1).min(l.len());
        }
        off += l.len();
    }
    s.len()
}

/// Offset of the `idx`-th inner array of the `edges` member, best effort.
fn edge_offset(s: &str, idx: usize) -> usize {
    let Some(key) = s.find("\"edges\"") else {
        return 0;
    };
    s[key..]
        .match_indices('[')
        .nth(idx + 1)
        .map(|(i, _)| key + i)
        .unwrap_or(key)
}

pub fn from_json(s: &str) -> Result<Graph> {
    let doc: EdgeList = serde_json::from_str(s)
        .map_err(|e| perr(offset_of(s, e.line(), e.column()), e.to_string()))?;
    let mut g = Graph::empty(doc.n);
    for (i, [u, v]) in doc.edges.into_iter().enumerate() {
        g.try_add_edge(u, v)
            .map_err(|e| perr(edge_offset(s, i), format!("edge {i}: {e}")))?;
    }
    Ok(g)
}

/// Reads either format: JSON when the first non-space byte is `{`.
pub fn parse_graph(s: &str) -> Result<Graph> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_graph6(s)
    }
}
