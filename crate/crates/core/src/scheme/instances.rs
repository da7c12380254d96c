// SPDX-License-Identifier: Apache-2.0

//! Small graph families on which the scheme builder makes progress.

use crate::graph::{path, Graph};

/// `apices` hub vertices (ids `0..apices`) and `pieces` disjoint cliques of
/// `piece_size` vertices; every piece vertex is adjacent to every hub.
pub fn star_of_balls(apices: usize, pieces: usize, piece_size: usize) -> Graph {
    let n = apices + pieces * piece_size;
    let mut g = Graph::empty(n);
    for p in 0..pieces {
        let base = apices + p * piece_size;
        for a in base..base + piece_size {
            for hub in 0..apices {
                g.add_edge(hub, a);
            }
            for b in a + 1..base + piece_size {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Spine path `0..spine` with `leaves` pendant vertices on every spine vertex;
/// leaves of spine vertex `s` are `spine + s * leaves ..`.
pub fn caterpillar(spine: usize, leaves: usize) -> Graph {
    let mut g = Graph::empty(spine * (1 + leaves));
    for s in 0..spine {
        if s + 1 < spine {
            g.add_edge(s, s + 1);
        }
        for i in 0..leaves {
            g.add_edge(s, spine + s * leaves + i);
        }
    }
    g
}

pub fn long_path(n: usize) -> Graph {
    path(n)
}
