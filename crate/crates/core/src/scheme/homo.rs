// SPDX-License-Identifier: Apache-2.0

//! Best-effort search for a homogeneous triple `(X, Z, W)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{ball_within, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homogeneous {
    pub x: VertexSet,
    pub z: VertexSet,
    pub w: VertexSet,
}

impl Homogeneous {
    pub fn x_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.x {
            m[v] = true;
        }
        m
    }

    /// Closed `(l-1)`-ball of `z` inside `G[X]`.
    pub fn ball(&self, g: &Graph, z: usize, l: usize) -> VertexSet {
        ball_within(g, &[z], l.saturating_sub(1), &self.x_mask(g.n()))
    }
}

/// Checks the four defining conditions; returns a description of the first
/// one that fails.
pub fn verify_homogeneous(g: &Graph, h: &Homogeneous, l: usize, d: usize, r: usize) -> Result<(), String> {
    let n = g.n();
    if h.x.iter().chain(&h.z).chain(&h.w).any(|&v| v >= n) {
        return Err("vertex out of range".into());
    }
    let xm = h.x_mask(n);
    if let Some(&z) = h.z.iter().find(|&&z| !xm[z]) {
        return Err(format!("z = {z} is not in X"));
    }
    if let Some(&w) = h.w.iter().find(|&&w| xm[w]) {
        return Err(format!("w = {w} lies in X"));
    }
    if h.w.len() + 1 > r {
        return Err(format!("|W| = {} exceeds r - 1 = {}", h.w.len(), r.saturating_sub(1)));
    }
    if let Some(&x) = h.x.iter().find(|&&x| g.degree(x) > d) {
        return Err(format!("vertex {x} of X has degree {} > d", g.degree(x)));
    }
    for (i, &a) in h.z.iter().enumerate() {
        let dist = g.distances_within(&[a], &xm);
        for &b in &h.z[i + 1..] {
            if matches!(dist[b], Some(x) if x + 1 < 2 * l) {
                return Err(format!("z = {a} and z = {b} are closer than 2l - 1 in G[X]"));
            }
        }
        let ball = h.ball(g, a, l);
        let outside: VertexSet = g.set_neighbors(&ball).into_iter().filter(|&v| !xm[v]).collect();
        if outside != h.w {
            return Err(format!("ball of z = {a} has outside neighbourhood {outside:?}, not W"));
        }
    }
    Ok(())
}

/// Looks for `t` centres whose `(l-1)`-balls in `G[X]` share the same
/// outside neighbourhood `W`, with `X` the vertices of degree at most `d`.
///
/// Candidate sets `W` are tried by size, then lexicographically. Within one
/// `W`, centres whose ball has no neighbour in `X` are packed first, then the
/// rest, each by id. `None` means this strategy found nothing; it does not
/// mean no triple exists.
pub fn find_homogeneous(g: &Graph, t: usize, l: usize, d: usize, r: usize) -> Option<Homogeneous> {
    if t == 0 || l == 0 || r == 0 {
        return None;
    }
    let n = g.n();
    let x: VertexSet = (0..n).filter(|&v| g.degree(v) <= d).collect();
    let mut xm = vec![false; n];
    for &v in &x {
        xm[v] = true;
    }
    // centre -> (outside neighbourhood, whether the ball is closed in X)
    let mut groups: BTreeMap<(usize, VertexSet), Vec<(bool, usize)>> = BTreeMap::new();
    for &z in &x {
        let ball = ball_within(g, &[z], l - 1, &xm);
        let nb = g.set_neighbors(&ball);
        let w: VertexSet = nb.iter().copied().filter(|&v| !xm[v]).collect();
        if w.len() + 1 > r {
            continue;
        }
        let full = w.len() == nb.len();
        groups.entry((w.len(), w)).or_default().push((!full, z));
    }
    for ((_, w), mut cands) in groups {
        if cands.len() < t {
            continue;
        }
        cands.sort_unstable();
        let mut blocked = vec![false; n];
        let mut chosen = Vec::new();
        for (_, z) in cands {
            if blocked[z] {
                continue;
            }
            chosen.push(z);
            for v in ball_within(g, &[z], 2 * l - 2, &xm) {
                blocked[v] = true;
            }
            if chosen.len() == t {
                break;
            }
        }
        if chosen.len() < t {
            continue;
        }
        chosen.sort_unstable();
        let h = Homogeneous {
            x: x.clone(),
            z: chosen,
            w,
        };
        if verify_homogeneous(g, &h, l, d, r).is_ok() {
            return Some(h);
        }
    }
    None
}
