// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the criterion benches.

use defcol::graph::ct;
use defcol::scheme::instances::{caterpillar, star_of_balls};
use defcol::scheme::SchemeParams;
use defcol::Graph;

/// `ct(h, k)`, panicking on budget errors (bench sizes are tiny).
pub fn ct_graph(h: usize, k: usize) -> Graph {
    ct(h, k).expect("bench size within budget")
}

/// Windmill instance with its building parameters.
pub fn windmill(pieces: usize) -> (Graph, SchemeParams) {
    let p = SchemeParams { h: 3, k: 2, r: 2, d: 2, n: 12, l0: 2, t: 5 };
    (star_of_balls(1, pieces, 2), p)
}

pub fn caterpillar_instance(spine: usize, leaves: usize) -> (Graph, SchemeParams) {
    let p = SchemeParams { h: 3, k: 2, r: 2, d: 2, n: 12, l0: 1, t: 5 };
    (caterpillar(spine, leaves), p)
}
