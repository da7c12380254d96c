// SPDX-License-Identifier: Apache-2.0

//! Exact decision procedure for colourings with bounded defect.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Total colouring with 1-based colours in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn used_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub feasible: bool,
    pub coloring: Option<Coloring>,
    /// Per colour, the largest degree inside that colour class.
    pub max_class_degree: Vec<usize>,
}

fn check_total(g: &Graph, c: &Coloring) -> Result<()> {
    if c.colors.len() != g.n() {
        return Err(Error::PartialColoring {
            colors: c.colors.len(),
            n: g.n(),
        });
    }
    for (v, &col) in c.colors.iter().enumerate() {
        if col == 0 || col > c.k {
            return Err(Error::ColorOutOfRange {
                vertex: v,
                color: col,
                k: c.k,
            });
        }
    }
    Ok(())
}

/// Same-colour degree of every vertex.
pub fn class_degrees(g: &Graph, c: &Coloring) -> Result<Vec<usize>> {
    check_total(g, c)?;
    Ok((0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| c.colors[w] == c.colors[v])
                .count()
        })
        .collect())
}

/// `None` when every colour class has maximum degree at most `d`; otherwise
/// the least vertex with more than `d` same-coloured neighbours.
pub fn verify_coloring(g: &Graph, c: &Coloring, d: usize) -> Result<Option<usize>> {
    Ok(class_degrees(g, c)?.into_iter().position(|x| x > d))
}

/// Defect of `c`: the largest same-colour degree.
pub fn defect_of(g: &Graph, c: &Coloring) -> Result<usize> {
    Ok(class_degrees(g, c)?.into_iter().max().unwrap_or(0))
}

fn max_class_degree(g: &Graph, c: &Coloring) -> Vec<usize> {
    let deg = class_degrees(g, c).expect("total colouring");
    let mut out = vec![0; c.k];
    for (&col, &dv) in c.colors.iter().zip(&deg) {
        out[col - 1] = out[col - 1].max(dv);
    }
    out
}

pub fn decide_defective(g: &Graph, k: usize, d: usize) -> Result<DefectReport> {
    decide_defective_with_budget(g, k, d, DEFAULT_NODE_BUDGET)
}

/// Branch-and-prune over vertices in descending-degree order. Infeasible is
/// only reported after the search space is exhausted.
pub fn decide_defective_with_budget(g: &Graph, k: usize, d: usize, budget: u64) -> Result<DefectReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut st = State {
        g,
        k,
        d,
        order,
        color: vec![0; n],
        same: vec![0; n],
        nodes: 0,
        budget,
    };
    if st.go(0, 0)? {
        let c = Coloring {
            k,
            colors: st.color,
        };
        let mcd = max_class_degree(g, &c);
        Ok(DefectReport {
            feasible: true,
            coloring: Some(c),
            max_class_degree: mcd,
        })
    } else {
        Ok(DefectReport {
            feasible: false,
            coloring: None,
            max_class_degree: vec![],
        })
    }
}

struct State<'a> {
    g: &'a Graph,
    k: usize,
    d: usize,
    order: Vec<usize>,
    color: Vec<usize>,
    same: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn go(&mut self, i: usize, used: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget { limit: self.budget });
        }
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        // colours are interchangeable: never open more than one new colour
        let top = (used + 1).min(self.k);
        for c in 1..=top {
            let hits: Vec<usize> = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.color[w] == c)
                .collect();
            if hits.len() > self.d || hits.iter().any(|&w| self.same[w] + 1 > self.d) {
                continue;
            }
            self.color[v] = c;
            self.same[v] = hits.len();
            for &w in &hits {
                self.same[w] += 1;
            }
            if self.go(i + 1, used.max(c))? {
                return Ok(true);
            }
            for &w in &hits {
                self.same[w] -= 1;
            }
            self.same[v] = 0;
            self.color[v] = 0;
        }
        Ok(false)
    }
}

/// Least `d` admitting a `k`-colouring with defect `d`.
pub fn min_defect(g: &Graph, k: usize) -> Result<usize> {
    let (mut lo, mut hi) = (0, g.max_degree());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decide_defective(g, k, mid)?.feasible {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Colours the closure of `tree` by depth; levels are independent sets.
pub fn level_coloring(tree: &RootedTree) -> Coloring {
    Coloring {
        k: tree.height(),
        colors: (0..tree.n()).map(|v| tree.depth(v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{closure, ct, cycle, star};

    #[test]
    fn verify_examples() {
        let c4 = cycle(4);
        let c = Coloring {
            k: 2,
            colors: vec![1, 2, 1, 2],
        };
        assert_eq!(verify_coloring(&c4, &c, 0).unwrap(), None);
        let s = star(5);
        let ones = Coloring {
            k: 1,
            colors: vec![1; 6],
        };
        assert_eq!(verify_coloring(&s, &ones, 4).unwrap(), Some(0));
        let short = Coloring {
            k: 1,
            colors: vec![1; 3],
        };
        assert!(matches!(
            verify_coloring(&s, &short, 4),
            Err(Error::PartialColoring { .. })
        ));
    }

    #[test]
    fn decide_examples() {
        let g = ct(3, 2).unwrap();
        assert!(!decide_defective(&g, 2, 1).unwrap().feasible);
        let r = decide_defective(&g, 2, 2).unwrap();
        assert!(r.feasible);
        assert_eq!(verify_coloring(&g, r.coloring.as_ref().unwrap(), 2).unwrap(), None);
        // root alone, both K_{1,2} copies share the other colour
        let exhibited = Coloring {
            k: 2,
            colors: vec![1, 2, 2, 2, 2, 2, 2],
        };
        assert_eq!(verify_coloring(&g, &exhibited, 2).unwrap(), None);
        assert!(decide_defective(&star(5), 1, 5).unwrap().feasible);
        assert!(!decide_defective(&star(5), 1, 4).unwrap().feasible);
    }

    #[test]
    fn min_defect_examples() {
        assert_eq!(min_defect(&ct(2, 3).unwrap(), 1).unwrap(), 3);
        assert_eq!(min_defect(&cycle(5), 2).unwrap(), 1);
        assert_eq!(min_defect(&ct(3, 2).unwrap(), 2).unwrap(), 2);
    }

    #[test]
    fn level_colorings() {
        let t = RootedTree::balanced(3, 2, 100).unwrap();
        let c = level_coloring(&t);
        assert_eq!(c.used_colors(), 3);
        assert_eq!(verify_coloring(&closure(&t), &c, 0).unwrap(), None);
        let single = RootedTree::new(vec![None]).unwrap();
        assert_eq!(level_coloring(&single).used_colors(), 1);
    }

    #[test]
    fn budget_is_an_error() {
        let g = ct(3, 3).unwrap();
        assert!(matches!(
            decide_defective_with_budget(&g, 2, 2, 5),
            Err(Error::SearchBudget { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let c = Coloring {
            k: 2,
            colors: vec![1, 2],
        };
        assert_eq!(c.to_json(), r#"{"k":2,"colors":[1,2]}"#);
        assert_eq!(Coloring::from_json(&c.to_json()).unwrap(), c);
    }
}
