// SPDX-License-Identifier: Apache-2.0

//! Drives the two steps until the graph is small, certifying as it goes.

use super::certify::certify_entry;
use super::homo::find_homogeneous;
use super::steps::{contract_step, del_step};
use super::{SchemeEntry, SchemeParams};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Builds a scheme for `g`, ending with the first entry on at most `N`
/// vertices. Every new entry is certified against its predecessor; the
/// build stops with [`Error::CertFailed`] at the first unclean pair.
///
/// `params.t` is the starting number of centres. When the deletion step
/// finds no bucket of `k + h` alike balls, larger centre counts are tried
/// while the search still finds a structure.
pub fn build_scheme(g: &Graph, params: &SchemeParams) -> Result<Vec<SchemeEntry>> {
    params.validate()?;
    let mut scheme = vec![SchemeEntry::initial(g)];
    loop {
        let cur = scheme.last().expect("nonempty");
        if cur.n() <= params.n {
            return Ok(scheme);
        }
        let failure = || Error::SearchFailure {
            steps: scheme.len() - 1,
            vertices: cur.n(),
        };
        let mut t = params.t;
        let next = loop {
            let homo = find_homogeneous(&cur.g, t, params.l0, params.d, params.r).ok_or_else(failure)?;
            let xm = homo.x_mask(cur.n());
            let closed = homo
                .z
                .iter()
                .all(|&z| cur.g.set_neighbors(&homo.ball(&cur.g, z, params.l0)).iter().all(|v| !xm[*v]));
            if !closed {
                break contract_step(cur, &homo, params, g)?;
            }
            match del_step(cur, &homo, params, g) {
                Err(Error::BucketTooSmall { .. }) => t += 1,
                other => break other?,
            }
        };
        let report = certify_entry(cur, &next, params, g);
        if !report.is_clean() {
            return Err(Error::CertFailed {
                step: scheme.len(),
                summary: report.summary(),
            });
        }
        scheme.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use crate::scheme::instances::star_of_balls;

    #[test]
    fn small_graph_is_frozen() {
        let p = SchemeParams { h: 3, k: 2, r: 2, d: 2, n: 10, l0: 1, t: 1 };
        let s = build_scheme(&path(5), &p).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn star_of_balls_takes_one_step() {
        let g = star_of_balls(1, 9, 2);
        let p = SchemeParams { h: 3, k: 2, r: 2, d: 2, n: 12, l0: 2, t: 5 };
        let s = build_scheme(&g, &p).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].n(), 10);
    }
}
