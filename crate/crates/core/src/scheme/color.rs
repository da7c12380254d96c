// SPDX-License-Identifier: Apache-2.0

//! Backward greedy colouring driven by a scheme.

use super::{SchemeEntry, SchemeParams};
use crate::defect::{verify_coloring, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Colours the original graph with `h - 1` colours.
///
/// Vertices still present on their own in the last entry get colour 1.
/// Walking back, a vertex that is on its own in entry `i` but not in entry
/// `i + 1` takes the least colour unused by its neighbours in `U` of entry
/// `i + 1`. The result is checked at defect `2N + d` before it is returned.
pub fn color_from_scheme(scheme: &[SchemeEntry], params: &SchemeParams, original: &Graph) -> Result<Coloring> {
    params.validate()?;
    let first = scheme.first().ok_or(Error::EmptySet)?;
    if first.n() != original.n() {
        return Err(Error::Precondition(format!(
            "first entry has {} vertices, the graph has {}",
            first.n(),
            original.n()
        )));
    }
    let n = original.n();
    let palette = params.h - 1;
    let singles = |e: &SchemeEntry| -> Vec<bool> {
        let mut m = vec![false; n];
        for v in 0..e.n() {
            if let Some(x) = e.original(v) {
                if x < n {
                    m[x] = true;
                }
            }
        }
        m
    };
    let mut color = vec![0usize; n];
    let mut later = singles(scheme.last().expect("nonempty"));
    for x in 0..n {
        if later[x] {
            color[x] = 1;
        }
    }
    for i in (0..scheme.len() - 1).rev() {
        let next = &scheme[i + 1];
        let mut in_u = vec![false; n];
        if let Some(meta) = &next.step_meta {
            for &u in &meta.u {
                if let Some(x) = next.model.get(u).and_then(|_| next.original(u)) {
                    in_u[x] = true;
                }
            }
        }
        let now = singles(&scheme[i]);
        for x in (0..n).filter(|&x| now[x] && !later[x]) {
            let mut used = vec![false; palette + 1];
            for &y in original.neighbors(x).iter().filter(|&&y| in_u[y]) {
                if color[y] <= palette {
                    used[color[y]] = true;
                }
            }
            color[x] = (1..=palette).find(|&c| !used[c]).ok_or(Error::EmptyPalette { vertex: x })?;
        }
        later = now;
    }
    if let Some(x) = color.iter().position(|&c| c == 0) {
        return Err(Error::Precondition(format!("vertex {x} is never on its own in any entry")));
    }
    let out = Coloring { k: palette, colors: color };
    let bound = params.d_star();
    if let Some(v) = verify_coloring(original, &out, bound)? {
        let degree = original.neighbors(v).iter().filter(|&&y| out.colors[y] == out.colors[v]).count();
        return Err(Error::DefectExceeded { vertex: v, degree, bound });
    }
    Ok(out)
}
