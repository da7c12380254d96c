// SPDX-License-Identifier: Apache-2.0

//! Independent brute-force oracles shared by the integration tests. None of
//! them calls into the library beyond building `Graph` values.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use defcol::Graph;

/// Upper-triangle edge bit of `(u, v)` on `n` vertices.
pub fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    // rows 0..a contribute n-1, n-2, ...
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn mask_of(g: &Graph) -> u64 {
    g.edges().iter().fold(0, |m, &(u, v)| m | 1 << pair_bit(g.n(), u, v))
}

pub fn adjacency(n: usize, mask: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (i, (u, v)) in pairs(n).into_iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

pub fn connected_mask(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return false;
    }
    let start = set & set.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] & set;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == set
}

/// Largest clique by plain branching on the lowest candidate.
pub fn brute_clique(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 64);
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    fn go(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & adj[v], size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(&adj, all, 0, &mut best);
    best
}

/// For every edge mask on `n <= 6` vertices, the least height of a rooted
/// tree on those vertices whose ancestor relation covers every edge.
pub fn tree_embedding_heights(n: usize) -> Vec<u8> {
    let m = n * (n - 1) / 2;
    let mut best = vec![u8::MAX; 1 << m];
    // parent[v] in 0..n, or n for the root
    let mut parent = vec![0usize; n];
    loop {
        if let Some((closure, height)) = closure_of(&parent, n) {
            let slot = &mut best[closure as usize];
            *slot = (*slot).min(height);
        }
        let mut i = 0;
        while i < n {
            parent[i] += 1;
            if parent[i] <= n {
                break;
            }
            parent[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    // supersets: a tree covering more edges also covers fewer
    for bit in 0..m {
        for mask in 0..1usize << m {
            if mask >> bit & 1 == 0 {
                let up = best[mask | 1 << bit];
                if up < best[mask] {
                    best[mask] = up;
                }
            }
        }
    }
    best
}

/// Ancestor-pair mask and height of a parent array, if it is one rooted tree.
fn closure_of(parent: &[usize], n: usize) -> Option<(u64, u8)> {
    if parent.iter().filter(|&&p| p == n).count() != 1 {
        return None;
    }
    let mut mask = 0u64;
    let mut height = 0u8;
    for v in 0..n {
        let mut depth = 1u8;
        let mut x = v;
        while parent[x] != n {
            let p = parent[x];
            if p == v || depth as usize > n {
                return None;
            }
            mask |= 1 << pair_bit(n, v, p);
            depth += 1;
            x = p;
        }
        height = height.max(depth);
    }
    Some((mask, height))
}

/// Canonical edge mask: least mask over vertex orders that list vertices by
/// nondecreasing degree.
pub fn canonical(n: usize, mask: u64) -> u64 {
    let adj = adjacency(n, mask);
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        n: usize,
        order: &[usize],
        deg: &[u32],
        adj: &[u32],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut u64,
    ) {
        if i == n {
            let mut m = 0u64;
            for a in 0..n {
                for b in a + 1..n {
                    if adj[perm[a]] >> perm[b] & 1 == 1 {
                        m |= 1 << pair_bit(n, a, b);
                    }
                }
            }
            *best = (*best).min(m);
            return;
        }
        for v in 0..n {
            if !used[v] && deg[v] == deg[order[i]] {
                used[v] = true;
                perm[i] = v;
                go(i + 1, n, order, deg, adj, perm, used, best);
                used[v] = false;
            }
        }
    }
    go(0, n, &order, &deg, &adj, &mut perm, &mut used, &mut best);
    best
}

/// One representative per isomorphism class on exactly `n` vertices.
pub fn graph_classes(n: usize) -> Vec<u64> {
    if n <= 1 {
        return vec![0];
    }
    let smaller = graph_classes(n - 1);
    let mut seen = BTreeSet::new();
    for m in smaller {
        // old pair (u, v) keeps its relative place in the bigger triangle
        let mut base = 0u64;
        for (i, (u, v)) in pairs(n - 1).into_iter().enumerate() {
            if m >> i & 1 == 1 {
                base |= 1 << pair_bit(n, u, v);
            }
        }
        for nb in 0..1u64 << (n - 1) {
            let mut g = base;
            for u in 0..n - 1 {
                if nb >> u & 1 == 1 {
                    g |= 1 << pair_bit(n, u, n - 1);
                }
            }
            seen.insert(canonical(n, g));
        }
    }
    seen.into_iter().collect()
}

/// Minors of a host with at most `max_p` vertices, as `(vertex count,
/// canonical mask)`, by enumerating labelings into connected blocks plus a
/// deleted part and taking every spanning subgraph of each quotient.
pub fn minors_by_partition(n: usize, mask: u64, max_p: usize) -> HashSet<(usize, u64)> {
    let adj = adjacency(n, mask);
    let mut quotients = HashSet::new();
    let mut label = vec![0usize; n];
    fn go(v: usize, used: usize, n: usize, max_p: usize, adj: &[u32], label: &mut Vec<usize>, out: &mut HashSet<(usize, u64)>) {
        if v == n {
            let mut blocks = vec![0u32; used];
            for (x, &l) in label.iter().enumerate() {
                if l > 0 {
                    blocks[l - 1] |= 1 << x;
                }
            }
            if blocks.iter().all(|&b| connected_mask(adj, b)) {
                let mut q = 0u64;
                for a in 0..used {
                    for b in a + 1..used {
                        let touch = (0..n).any(|x| blocks[a] >> x & 1 == 1 && adj[x] & blocks[b] != 0);
                        if touch {
                            q |= 1 << pair_bit(used, a, b);
                        }
                    }
                }
                out.insert((used, q));
            }
            return;
        }
        for l in 0..=(used + 1).min(max_p) {
            label[v] = l;
            go(v + 1, used.max(l), n, max_p, adj, label, out);
        }
    }
    go(0, 0, n, max_p, &adj, &mut label, &mut quotients);
    let mut out = HashSet::new();
    for (p, q) in quotients {
        let bits: Vec<usize> = (0..64).filter(|&i| q >> i & 1 == 1).collect();
        for sub in 0..1u64 << bits.len() {
            let m = bits.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).fold(0u64, |m, (_, &b)| m | 1 << b);
            out.insert((p, canonical(p, m)));
        }
    }
    out
}
