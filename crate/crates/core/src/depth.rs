// SPDX-License-Identifier: Apache-2.0

//! Exact tree-depth and connected tree-depth for small graphs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{closure, Graph, RootedTree};

pub const EXACT_DEPTH_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct DepthReport {
    pub td: usize,
    pub ctd: usize,
    /// Tree whose closure contains the input; height equals `ctd`.
    pub witness: RootedTree,
    /// Input vertex to witness-tree vertex.
    pub embedding: Vec<usize>,
}

impl DepthReport {
    /// Checks that the embedding is injective and maps edges to ancestor pairs.
    pub fn verify(&self, g: &Graph) -> bool {
        let t = &self.witness;
        if self.embedding.len() != g.n() || t.height() != self.ctd {
            return false;
        }
        let mut used = vec![false; t.n()];
        for &x in &self.embedding {
            if x >= t.n() || used[x] {
                return false;
            }
            used[x] = true;
        }
        let cl = closure(t);
        g.edges()
            .iter()
            .all(|&(u, v)| cl.has_edge(self.embedding[u], self.embedding[v]))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            td: usize,
            ctd: usize,
            parent: Vec<Option<usize>>,
            embedding: &'a [usize],
        }
        serde_json::to_string(&Doc {
            td: self.td,
            ctd: self.ctd,
            parent: self.witness.parents().to_vec(),
            embedding: &self.embedding,
        })
        .expect("serialisable")
    }
}

struct Solver {
    adj: Vec<u32>,
    memo: HashMap<u32, (u8, u8)>,
}

impl Solver {
    fn components(&self, mask: u32) -> Vec<u32> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let mut grown = comp;
                let mut m = comp;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    grown |= self.adj[v] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Height of the best rooted forest containing `mask`.
    fn forest(&mut self, mask: u32) -> u8 {
        self.components(mask)
            .into_iter()
            .map(|c| self.connected(c).0)
            .max()
            .unwrap_or(0)
    }

    /// (depth, root) for a connected `mask`.
    fn connected(&mut self, mask: u32) -> (u8, u8) {
        if mask.count_ones() == 1 {
            return (1, mask.trailing_zeros() as u8);
        }
        if let Some(&r) = self.memo.get(&mask) {
            return r;
        }
        let n = mask.count_ones() as u8;
        let mut best = (n + 1, 0u8);
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            let d = 1 + self.forest(mask & !(1 << v));
            if d < best.0 {
                best = (d, v as u8);
            }
            if best.0 == 2 {
                break;
            }
        }
        self.memo.insert(mask, best);
        best
    }

    fn build(&mut self, mask: u32, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        let (_, root) = self.connected(mask);
        let root = root as usize;
        out[root] = parent;
        for c in self.components(mask & !(1 << root)) {
            self.build(c, Some(root), out);
        }
    }
}

/// Exact connected tree-depth and tree-depth, with a witness tree on the
/// input's own vertex set.
pub fn connected_tree_depth(g: &Graph) -> Result<DepthReport> {
    connected_tree_depth_with_limit(g, EXACT_DEPTH_LIMIT)
}

pub fn connected_tree_depth_with_limit(g: &Graph, limit: usize) -> Result<DepthReport> {
    let limit = limit.min(31);
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what: "tree-depth",
            size: g.n(),
            limit,
        });
    }
    if g.n() == 0 {
        return Ok(DepthReport {
            td: 0,
            ctd: 0,
            witness: RootedTree::new(vec![])?,
            embedding: vec![],
        });
    }
    let adj = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut s = Solver {
        adj,
        memo: HashMap::new(),
    };
    let full = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    let mut comps: Vec<(u8, u32)> = s
        .components(full)
        .into_iter()
        .map(|c| (s.connected(c).0, c))
        .collect();
    // deepest component first; the others hang below its root
    comps.sort_by_key(|&(d, c)| (std::cmp::Reverse(d), c));
    let td = comps[0].0 as usize;
    let ties = comps.iter().filter(|&&(d, _)| d as usize == td).count();
    let ctd = if ties == 1 { td } else { td + 1 };
    let mut parent = vec![None; g.n()];
    s.build(comps[0].1, None, &mut parent);
    let top = s.connected(comps[0].1).1 as usize;
    for &(_, c) in &comps[1..] {
        s.build(c, Some(top), &mut parent);
    }
    let witness = RootedTree::new(parent)?;
    debug_assert_eq!(witness.height(), ctd);
    Ok(DepthReport {
        td,
        ctd,
        witness,
        embedding: (0..g.n()).collect(),
    })
}

/// `ctd(H) - 1`: the defective chromatic number of the H-minor-free class.
pub fn omega_delta_excluded(pattern: &Graph) -> Result<usize> {
    if pattern.n() == 0 {
        return Err(Error::Precondition("pattern must be nonempty".into()));
    }
    Ok(connected_tree_depth(pattern)?.ctd - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusteredBounds {
    pub lower: usize,
    pub general_upper: usize,
    pub conditional_upper: usize,
    pub conditional_label: &'static str,
}

/// Clustered-colouring bounds for the H-minor-free class, in terms of the
/// connected tree-depth of `H`.
pub fn clustered_bounds(pattern: &Graph) -> Result<ClusteredBounds> {
    if pattern.n() == 0 {
        return Err(Error::Precondition("pattern must be nonempty".into()));
    }
    let t = connected_tree_depth(pattern)?.ctd;
    Ok(ClusteredBounds {
        lower: t - 1,
        general_upper: 3 * t - 3,
        conditional_upper: 2 * t - 2,
        conditional_label: "applies when H is planar",
    })
}
