// SPDX-License-Identifier: Apache-2.0

//! Splitting a long geodesic into windows that see the same colour classes.

use serde::Serialize;

use super::constants::n_rec;
use crate::error::{Error, Result};
use crate::graph::{ball_within, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicSplit {
    /// Subpath of the input path, in path order.
    pub q: Vec<usize>,
    /// Colours seen near every part; sorted, nonempty.
    pub colors: Vec<usize>,
    /// `k` consecutive parts of `q` with equal vertex counts.
    pub parts: Vec<Vec<usize>>,
}

fn pre(msg: String) -> Error {
    Error::Precondition(msg)
}

/// Finds a subpath `Q` of the geodesic `p` and a colour set `S` such that no
/// colour outside `S` occurs within `|S| l` of `Q`, and `Q` splits into `k`
/// equal parts each within `(|S|-1) l` of every colour in `S`.
///
/// `f[v]` is the colour of `v` in `1..=t`. Requires every vertex of `g` to
/// be within `n(t, k, l)` of `v_star`, and `p` to be a geodesic starting at
/// `v_star` on `n(t, k, l) - t l` vertices.
pub fn geodesic_split(
    g: &Graph,
    v_star: usize,
    f: &[usize],
    p: &[usize],
    t: usize,
    k: usize,
    l: usize,
) -> Result<GeodesicSplit> {
    if t == 0 || k == 0 || l == 0 {
        return Err(pre("t, k and l must be positive".into()));
    }
    let n = n_rec(t, k, l).ok_or_else(|| pre(format!("n({t},{k},{l}) overflows")))?;
    let n = usize::try_from(n).map_err(|_| pre(format!("n({t},{k},{l}) overflows")))?;
    if v_star >= g.n() {
        return Err(Error::OutOfRange { id: v_star, n: g.n() });
    }
    if f.len() != g.n() {
        return Err(pre(format!("colour map has {} entries for {} vertices", f.len(), g.n())));
    }
    if let Some(v) = (0..g.n()).find(|&v| f[v] == 0 || f[v] > t) {
        return Err(pre(format!("colour {} of vertex {v} outside [1, {t}]", f[v])));
    }
    let dist = g.distances(v_star);
    if let Some(v) = (0..g.n()).find(|&v| !matches!(dist[v], Some(d) if d <= n)) {
        return Err(pre(format!("vertex {v} is farther than {n} from {v_star}")));
    }
    let want = n - t * l;
    if p.len() != want {
        return Err(pre(format!("path has {} vertices, need {want}", p.len())));
    }
    if p[0] != v_star {
        return Err(pre(format!("path starts at {}, not {v_star}", p[0])));
    }
    for (i, &v) in p.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::OutOfRange { id: v, n: g.n() });
        }
        if dist[v] != Some(i) {
            return Err(pre(format!("path is not a geodesic at position {i} (vertex {v})")));
        }
    }
    let colors: Vec<usize> = (1..=t).collect();
    let out = split(g, &vec![true; g.n()], f, p, colors, k, l);
    check(g, f, t, k, l, &out)?;
    Ok(out)
}

fn split(g: &Graph, allowed: &[bool], f: &[usize], path: &[usize], colors: Vec<usize>, k: usize, l: usize) -> GeodesicSplit {
    let t = colors.len();
    if t == 1 {
        return GeodesicSplit {
            q: path[..k].to_vec(),
            colors,
            parts: path[..k].iter().map(|&v| vec![v]).collect(),
        };
    }
    // window length n(t-1, k, l) - (t-1) l
    let m = n_rec(t - 1, k, l).expect("smaller than n(t, k, l)") as usize - (t - 1) * l;
    for start in 0..=path.len() - m {
        let window = &path[start..start + m];
        let near = ball_within(g, window, (t - 1) * l, allowed);
        let present: std::collections::BTreeSet<usize> = near.iter().map(|&u| f[u]).collect();
        if let Some(&missing) = colors.iter().find(|c| !present.contains(c)) {
            let mut inner = vec![false; g.n()];
            for &u in &near {
                inner[u] = true;
            }
            let rest = colors.into_iter().filter(|&c| c != missing).collect();
            return split(g, &inner, f, window, rest, k, l);
        }
    }
    let q = path[..k * m].to_vec();
    let parts = q.chunks(m).map(<[usize]>::to_vec).collect();
    GeodesicSplit { q, colors, parts }
}

/// Re-checks both conclusions in `g`.
fn check(g: &Graph, f: &[usize], t: usize, k: usize, l: usize, s: &GeodesicSplit) -> Result<()> {
    let all = vec![true; g.n()];
    let fail = |m: String| Err(pre(format!("geodesic split post-check failed: {m}")));
    if s.colors.is_empty() || s.parts.len() != k {
        return fail("wrong number of parts or empty colour set".into());
    }
    let len = s.parts[0].len();
    if s.parts.iter().any(|p| p.len() != len) || s.parts.concat() != s.q {
        return fail("parts do not split Q evenly".into());
    }
    let size = s.colors.len();
    for &u in &ball_within(g, &s.q, size * l, &all) {
        if !s.colors.contains(&f[u]) {
            return fail(format!("colour {} at vertex {u} near Q", f[u]));
        }
    }
    for (i, part) in s.parts.iter().enumerate() {
        let near = ball_within(g, part, (size - 1) * l, &all);
        for &c in &s.colors {
            if !near.iter().any(|&u| f[u] == c) {
                return fail(format!("part {i} misses colour {c}"));
            }
        }
    }
    debug_assert!(s.colors.iter().all(|&c| c >= 1 && c <= t));
    Ok(())
}
