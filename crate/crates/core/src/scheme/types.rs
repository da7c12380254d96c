// SPDX-License-Identifier: Apache-2.0

//! Hyperedge types, vertex profiles and small matching helpers.
//!
//! Subsets of a working set `W` are encoded as bitmasks over the sorted
//! members of `W`; bit `i` stands for `W[i]`. Subsets are ordered by the
//! integer value of their mask.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Hyperedge, SchemeEntry};
use crate::graph::{Graph, VertexSet};

/// Mask of `N(v) ∩ w` in `g`.
pub fn subset_mask(g: &Graph, v: usize, w: &[usize]) -> usize {
    w.iter()
        .enumerate()
        .filter(|&(_, &x)| g.has_edge(v, x))
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// `(j, |S|, S ∩ W, count of non-sink members per W-neighbourhood mask)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeType {
    pub j: usize,
    pub size: usize,
    pub inter: VertexSet,
    pub counts: Vec<usize>,
}

pub fn edge_type(entry: &SchemeEntry, e: &Hyperedge, w: &[usize]) -> EdgeType {
    let mut counts = vec![0; 1 << w.len()];
    for &x in e.s.iter().filter(|&&x| x != e.sink) {
        counts[subset_mask(&entry.g, x, w)] += 1;
    }
    EdgeType {
        j: e.j,
        size: e.s.len(),
        inter: e.s.iter().copied().filter(|x| w.binary_search(x).is_ok()).collect(),
        counts,
    }
}

/// What a ball looks like from `W`: the types of hyperedges sunk inside it
/// and the W-neighbourhood masks of its single-vertex members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BallSignature {
    pub edge_types: BTreeSet<EdgeType>,
    pub vertex_masks: BTreeSet<usize>,
}

pub fn ball_signature(entry: &SchemeEntry, ball: &[usize], w: &[usize]) -> BallSignature {
    let mut inside = vec![false; entry.n()];
    for &v in ball {
        inside[v] = true;
    }
    BallSignature {
        edge_types: entry
            .hyperedges
            .iter()
            .filter(|e| inside[e.sink])
            .map(|e| edge_type(entry, e, w))
            .collect(),
        vertex_masks: ball
            .iter()
            .filter(|&&v| entry.model[v].len() == 1)
            .map(|&v| subset_mask(&entry.g, v, w))
            .collect(),
    }
}

/// Per-vertex profile: W-neighbourhood mask plus, for every hyperedge type,
/// 0 if the vertex is in no hyperedge of that type, 1 if it sinks one, and
/// 2 if it is only a non-sink member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub w_mask: usize,
    pub flags: Vec<u8>,
}

pub fn profiles(entry: &SchemeEntry, vertices: &[usize], w: &[usize]) -> Vec<Profile> {
    let typed: Vec<EdgeType> = entry.hyperedges.iter().map(|e| edge_type(entry, e, w)).collect();
    let kinds: Vec<&EdgeType> = typed.iter().collect::<BTreeSet<_>>().into_iter().collect();
    vertices
        .iter()
        .map(|&v| {
            let mut flags = vec![0u8; kinds.len()];
            for (e, ty) in entry.hyperedges.iter().zip(&typed) {
                let slot = kinds.binary_search(&ty).expect("type listed");
                if e.sink == v {
                    flags[slot] = 1;
                } else if flags[slot] == 0 && e.s.contains(&v) {
                    flags[slot] = 2;
                }
            }
            Profile {
                w_mask: subset_mask(&entry.g, v, w),
                flags,
            }
        })
        .collect()
}

/// Matches every member of `left` to a distinct member of `right`.
pub fn saturating_matching(
    left: &[usize],
    right: &[usize],
    adj: impl Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    fn augment(
        i: usize,
        left: &[usize],
        right: &[usize],
        adj: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for r in 0..right.len() {
            if seen[r] || !adj(left[i], right[r]) {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, left, right, adj, seen, owner)) {
                owner[r] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(i, left, right, &adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(r, o)| o.map(|i| (left[i], right[r])))
        .collect();
    out.sort_unstable();
    Some(out)
}

/// Pairs `from` with `to` so that paired vertices carry the same key; `None`
/// when the key multisets differ.
pub fn keyed_bijection<K: Ord + Clone>(
    from: &[usize],
    to: &[usize],
    key: impl Fn(usize) -> K,
) -> Option<Vec<(usize, usize)>> {
    if from.len() != to.len() {
        return None;
    }
    let mut a: Vec<(K, usize)> = from.iter().map(|&v| (key(v), v)).collect();
    let mut b: Vec<(K, usize)> = to.iter().map(|&v| (key(v), v)).collect();
    a.sort();
    b.sort();
    let mut out = Vec::with_capacity(a.len());
    for ((ka, va), (kb, vb)) in a.into_iter().zip(b) {
        if ka != kb {
            return None;
        }
        out.push((va, vb));
    }
    out.sort_unstable();
    Some(out)
}
