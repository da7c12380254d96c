// SPDX-License-Identifier: Apache-2.0

//! Simple undirected graphs with dense vertex ids, rooted trees and closures.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Default cap on generated graph sizes.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

/// Sorted, duplicate-free list of vertex ids.
pub type VertexSet = Vec<usize>;

pub fn normalize(mut s: Vec<usize>) -> VertexSet {
    s.sort_unstable();
    s.dedup();
    s
}

/// Simple undirected graph on `0..n`.
///
/// Labels are opaque per-vertex tags; they default to the vertex id and are
/// ignored by equality.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: (0..n).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for id in [u, v] {
            if id >= n {
                return Err(Error::OutOfRange { id, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds `uv`; ignores duplicates. Panics on loops or bad ids.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if let Ok(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(pos);
            let pos = self.adj[v].binary_search(&u).unwrap();
            self.adj[v].remove(pos);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn check_set(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&v| v >= self.n()) {
            Some(&id) => Err(Error::OutOfRange { id, n: self.n() }),
            None => Ok(()),
        }
    }

    /// Induced subgraph on `s`; vertex `i` of the result is `s[i]`.
    pub fn induced(&self, s: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(s.len());
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = s.iter().map(|&v| self.labels[v]).collect();
        g
    }

    /// Graph minus the vertices in `s`, relabelled densely in increasing order.
    pub fn remove_vertices(&self, s: &[usize]) -> Graph {
        let mut gone = vec![false; self.n()];
        for &v in s {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// BFS distances from `sources`, restricted to vertices where `allowed` is true.
    pub fn distances_within(&self, sources: &[usize], allowed: &[bool]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if allowed[s] && dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if allowed[w] && dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        self.distances_within(&[source], &vec![true; self.n()])
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Checks that `s` induces a connected subgraph. On failure returns a
    /// member unreachable from `s[0]` inside `s`.
    pub fn connected_within(&self, s: &[usize]) -> std::result::Result<(), (usize, usize)> {
        if s.is_empty() {
            return Ok(());
        }
        let mut allowed = vec![false; self.n()];
        for &v in s {
            allowed[v] = true;
        }
        let dist = self.distances_within(&s[..1], &allowed);
        match s.iter().find(|&&v| dist[v].is_none()) {
            Some(&b) => Err((s[0], b)),
            None => Ok(()),
        }
    }

    /// Open neighbourhood of a set: vertices outside `s` adjacent to it.
    pub fn set_neighbors(&self, s: &[usize]) -> VertexSet {
        let mut inside = vec![false; self.n()];
        for &v in s {
            inside[v] = true;
        }
        let mut out = Vec::new();
        for &v in s {
            for &w in &self.adj[v] {
                if !inside[w] {
                    out.push(w);
                }
            }
        }
        normalize(out)
    }

    /// Clique number by exhaustive search; intended for small graphs.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, cand: Vec<usize>, size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            if cand.is_empty() {
                *best = size;
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                if size + cand.len() - i <= *best {
                    return;
                }
                let next: Vec<usize> = cand[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(v, w))
                    .collect();
                grow(g, next, size + 1, best);
            }
        }
        let mut best = 0;
        grow(self, (0..self.n()).collect(), 0, &mut best);
        best
    }
}

// ---- standard families ----

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(0, n - 1);
    }
    g
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

// ---- rooted trees ----

/// Rooted tree given by a parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
    height: usize,
}

impl RootedTree {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Ok(RootedTree {
                parent,
                root: 0,
                height: 0,
            });
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        }
        let mut depth = vec![0usize; n];
        depth[roots[0]] = 1;
        for v in 0..n {
            // walk up until a known depth, detecting cycles by step count
            let mut chain = Vec::new();
            let mut u = v;
            while depth[u] == 0 {
                chain.push(u);
                match parent[u] {
                    Some(p) if p < n => u = p,
                    Some(p) => return Err(Error::OutOfRange { id: p, n }),
                    None => unreachable!(),
                }
                if chain.len() > n {
                    return Err(Error::InvalidTree("parent links form a cycle".into()));
                }
            }
            let mut d = depth[u];
            for &w in chain.iter().rev() {
                d += 1;
                depth[w] = d;
            }
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        Ok(RootedTree {
            parent,
            root: roots[0],
            height,
        })
    }

    /// Balanced `k`-ary tree of height `h` in heap order (root 0).
    pub fn balanced(h: usize, k: usize, budget: usize) -> Result<Self> {
        let n = ct_size(h, k);
        if n > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: "balanced tree",
                size: n,
                limit: budget,
            });
        }
        let n = n as usize;
        let parent = (0..n)
            .map(|v| if v == 0 { None } else { Some((v - 1) / k.max(1)) })
            .collect();
        RootedTree::new(parent)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// 1-based depth (the root has depth 1).
    pub fn depth(&self, v: usize) -> usize {
        let mut d = 1;
        let mut u = v;
        while let Some(p) = self.parent[u] {
            d += 1;
            u = p;
        }
        d
    }

    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut u = v;
        while let Some(p) = self.parent[u] {
            out.push(p);
            u = p;
        }
        out
    }

    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        self.ancestors(v).contains(&a)
    }
}

/// Ancestor-descendant comparability graph of `tree`.
pub fn closure(tree: &RootedTree) -> Graph {
    let mut g = Graph::empty(tree.n());
    for v in 0..tree.n() {
        for a in tree.ancestors(v) {
            g.add_edge(a, v);
        }
    }
    g
}

/// Vertex count of the balanced `k`-ary tree of height `h`, saturating.
pub fn ct_size(h: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..h {
        total = total.saturating_add(level);
        level = level.saturating_mul(k as u128);
    }
    total
}

pub fn ct(h: usize, k: usize) -> Result<Graph> {
    ct_with_budget(h, k, DEFAULT_VERTEX_BUDGET)
}

/// Closure of the balanced `k`-ary tree of height `h`.
pub fn ct_with_budget(h: usize, k: usize, budget: usize) -> Result<Graph> {
    if h == 0 || k == 0 {
        return Err(Error::Precondition("ct needs h >= 1 and k >= 1".into()));
    }
    Ok(closure(&RootedTree::balanced(h, k, budget)?))
}

fn check_budget(what: &'static str, size: u128, budget: usize) -> Result<()> {
    if size > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            size,
            limit: budget,
        })
    } else {
        Ok(())
    }
}

/// `g ∨ h`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph, budget: usize) -> Result<Graph> {
    check_budget("join", g.n() as u128 + h.n() as u128, budget)?;
    let off = g.n();
    let mut out = Graph::empty(g.n() + h.n());
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + off, v + off);
    }
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, v + off);
        }
    }
    Ok(out)
}

/// `count` disjoint copies of `g`; copy `c` occupies ids `c*n..(c+1)*n`.
pub fn disjoint_copies(count: usize, g: &Graph, budget: usize) -> Result<Graph> {
    check_budget("disjoint copies", count as u128 * g.n() as u128, budget)?;
    let n = g.n();
    let mut out = Graph::empty(count * n);
    for c in 0..count {
        for (u, v) in g.edges() {
            out.add_edge(c * n + u, c * n + v);
        }
    }
    Ok(out)
}

// ---- metric primitives ----

/// Closed `l`-neighbourhood of `s`.
pub fn ball(g: &Graph, s: &[usize], l: usize) -> VertexSet {
    ball_within(g, s, l, &vec![true; g.n()])
}

/// Closed `l`-neighbourhood of `s` inside the subgraph induced by `allowed`.
pub fn ball_within(g: &Graph, s: &[usize], l: usize, allowed: &[bool]) -> VertexSet {
    let dist = g.distances_within(s, allowed);
    (0..g.n())
        .filter(|&v| matches!(dist[v], Some(d) if d <= l))
        .collect()
}

/// Lexicographically least geodesic with exactly `len` edges starting at `v`.
pub fn geodesic_from(g: &Graph, v: usize, len: usize) -> Option<Vec<usize>> {
    geodesic_within(g, v, len, &vec![true; g.n()])
}

/// As [`geodesic_from`], inside the subgraph induced by `allowed`.
pub fn geodesic_within(g: &Graph, v: usize, len: usize, allowed: &[bool]) -> Option<Vec<usize>> {
    let dist = g.distances_within(&[v], allowed);
    // reach[u]: some vertex at distance `len` is reachable along increasing distances
    let mut order: Vec<usize> = (0..g.n()).filter(|&u| dist[u].is_some()).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(dist[u]));
    let mut reach = vec![false; g.n()];
    for &u in &order {
        let du = dist[u].unwrap();
        reach[u] = du == len
            || (du < len
                && g.neighbors(u)
                    .iter()
                    .any(|&w| dist[w] == Some(du + 1) && reach[w]));
    }
    if dist[v].is_none() || !reach[v] {
        return None;
    }
    let mut p = vec![v];
    while p.len() <= len {
        let u = *p.last().unwrap();
        let du = dist[u].unwrap();
        let next = g
            .neighbors(u)
            .iter()
            .copied()
            .find(|&w| dist[w] == Some(du + 1) && reach[w])?;
        p.push(next);
    }
    Some(p)
}

/// Result of contracting a connected set.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    /// Id of the merged vertex in `graph`.
    pub vertex: usize,
    /// Old id to new id.
    pub old_to_new: Vec<usize>,
}

/// Contracts the connected set `s` into one vertex, appended last.
///
/// Surviving vertices keep their relative order; each output vertex is
/// labelled with the input id it came from (the least member of `s` for the
/// merged vertex).
pub fn contract_set(g: &Graph, s: &[usize]) -> Result<Contraction> {
    let s = normalize(s.to_vec());
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    g.check_set(&s)?;
    g.connected_within(&s)
        .map_err(|(a, b)| Error::NotConnected { a, b })?;
    let mut in_s = vec![false; g.n()];
    for &v in &s {
        in_s[v] = true;
    }
    let mut old_to_new = vec![0; g.n()];
    let mut labels = Vec::new();
    let mut next = 0;
    for v in 0..g.n() {
        if !in_s[v] {
            old_to_new[v] = next;
            labels.push(v);
            next += 1;
        }
    }
    let vertex = next;
    for &v in &s {
        old_to_new[v] = vertex;
    }
    labels.push(s[0]);
    let mut out = Graph::empty(vertex + 1);
    for (u, v) in g.edges() {
        let (a, b) = (old_to_new[u], old_to_new[v]);
        if a != b {
            out.add_edge(a, b);
        }
    }
    Ok(Contraction {
        graph: out.with_labels(labels),
        vertex,
        old_to_new,
    })
}

/// Isomorphism test by backtracking with degree pruning; for modest sizes.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // BFS order of `a` keeps each new vertex attached to mapped ones
    let mut order = Vec::new();
    let mut seen = vec![false; a.n()];
    for s in 0..a.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in a.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    fn go(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        for cand in 0..b.n() {
            if used[cand] || a.degree(u) != b.degree(cand) {
                continue;
            }
            let ok = order[..i]
                .iter()
                .all(|&p| a.has_edge(u, p) == b.has_edge(cand, map[p]));
            if !ok {
                continue;
            }
            map[u] = cand;
            used[cand] = true;
            if go(a, b, order, i + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    go(a, b, &order, 0, &mut map, &mut used)
}
