// SPDX-License-Identifier: Apache-2.0

//! Minor containment with explicit branch-set models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ct, normalize, Graph, VertexSet};

pub const EXACT_PATTERN_LIMIT: usize = 8;
pub const EXACT_HOST_LIMIT: usize = 14;

/// Branch set per pattern vertex, indexed by pattern id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    /// `{"pattern_vertex": [host ids...]}`.
    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, &VertexSet> = self
            .branch_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i.to_string(), s))
            .collect();
        serde_json::to_string(&map).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let map: BTreeMap<String, Vec<usize>> = serde_json::from_str(s)?;
        let mut sets: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (k, v) in map {
            let idx: usize = k.parse().map_err(|_| Error::Parse {
                offset: 0,
                msg: format!("pattern vertex key {k:?} is not an integer"),
            })?;
            sets.insert(idx, normalize(v));
        }
        let n = sets.keys().next_back().map_or(0, |&m| m + 1);
        let mut branch_sets = vec![Vec::new(); n];
        for (i, s) in sets {
            branch_sets[i] = s;
        }
        Ok(MinorModel { branch_sets })
    }
}

/// First violated clause of the model definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", content = "witness", rename_all = "snake_case")]
pub enum ModelViolation {
    /// Model size differs from the pattern order: `[model, pattern]`.
    Count(Vec<usize>),
    /// Pattern vertex with an empty branch set.
    Empty(Vec<usize>),
    /// `[pattern a, pattern b, shared host vertex]`.
    Disjointness(Vec<usize>),
    /// `[pattern vertex, host u, host v]` with u, v separated inside the set.
    Connectivity(Vec<usize>),
    /// Pattern edge `[a, b]` with no host edge between the branch sets.
    Edge(Vec<usize>),
}

pub fn verify_model(
    host: &Graph,
    pattern: &Graph,
    model: &MinorModel,
) -> Result<std::result::Result<(), ModelViolation>> {
    for s in &model.branch_sets {
        host.check_set(s)?;
    }
    if model.branch_sets.len() != pattern.n() {
        return Ok(Err(ModelViolation::Count(vec![
            model.branch_sets.len(),
            pattern.n(),
        ])));
    }
    let mut owner = vec![usize::MAX; host.n()];
    for (a, s) in model.branch_sets.iter().enumerate() {
        if s.is_empty() {
            return Ok(Err(ModelViolation::Empty(vec![a])));
        }
        for &v in s {
            if owner[v] != usize::MAX {
                return Ok(Err(ModelViolation::Disjointness(vec![owner[v], a, v])));
            }
            owner[v] = a;
        }
    }
    for (a, s) in model.branch_sets.iter().enumerate() {
        if let Err((u, v)) = host.connected_within(s) {
            return Ok(Err(ModelViolation::Connectivity(vec![a, u, v])));
        }
    }
    for (a, b) in pattern.edges() {
        let touch = model.branch_sets[a]
            .iter()
            .any(|&u| host.neighbors(u).iter().any(|&w| owner[w] == b));
        if !touch {
            return Ok(Err(ModelViolation::Edge(vec![a, b])));
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorOutcome {
    Present(MinorModel),
    Absent,
    /// Heuristic mode gave up; says nothing about absence.
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub enum MinorMode {
    Exhaustive,
    Heuristic { seed: u64, restarts: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct MinorOptions {
    pub mode: MinorMode,
    pub max_pattern: usize,
    pub max_host: usize,
    /// Search-node cap for exhaustive mode.
    pub node_budget: u64,
}

impl Default for MinorOptions {
    fn default() -> Self {
        MinorOptions {
            mode: MinorMode::Exhaustive,
            max_pattern: EXACT_PATTERN_LIMIT,
            max_host: EXACT_HOST_LIMIT,
            node_budget: 200_000_000,
        }
    }
}

/// Exhaustive minor test within the default size limits.
pub fn has_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    match has_minor_with(host, pattern, &MinorOptions::default())? {
        MinorOutcome::Present(m) => Ok(Some(m)),
        _ => Ok(None),
    }
}

pub fn has_minor_with(host: &Graph, pattern: &Graph, opts: &MinorOptions) -> Result<MinorOutcome> {
    if pattern.n() == 0 {
        return Ok(MinorOutcome::Present(MinorModel::default()));
    }
    match opts.mode {
        MinorMode::Exhaustive => {
            if pattern.n() > opts.max_pattern {
                return Err(Error::SizeLimit {
                    what: "minor pattern",
                    size: pattern.n(),
                    limit: opts.max_pattern,
                });
            }
            if host.n() > opts.max_host {
                return Err(Error::SizeLimit {
                    what: "minor host",
                    size: host.n(),
                    limit: opts.max_host,
                });
            }
            exhaustive(host, pattern, opts.node_budget)
        }
        MinorMode::Heuristic { seed, restarts } => Ok(heuristic(host, pattern, seed, restarts)),
    }
}

pub fn has_ct_minor(host: &Graph, h: usize, k: usize) -> Result<Option<MinorModel>> {
    has_minor(host, &ct(h, k)?)
}

// ---- exhaustive search ----

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    /// Placed pattern neighbour used to seed each pattern vertex, if any.
    anchor: Vec<Option<usize>>,
    owner: Vec<usize>,
    sets: Vec<VertexSet>,
    nodes: u64,
    budget: u64,
}

const FREE: usize = usize::MAX;

impl<'a> Search<'a> {
    fn free_count(&self) -> usize {
        self.owner.iter().filter(|&&o| o == FREE).count()
    }

    fn adjacent_to_set(&self, v: usize, a: usize) -> bool {
        self.host.neighbors(v).iter().any(|&w| self.owner[w] == a)
    }

    /// Every unplaced pattern vertex with placed neighbours needs a free
    /// component touching all their branch sets.
    fn lookahead(&self, placed: usize) -> bool {
        let n = self.host.n();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if self.owner[s] != FREE || comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut c = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < c.len() {
                let u = c[i];
                i += 1;
                for &w in self.host.neighbors(u) {
                    if self.owner[w] == FREE && comp[w] == usize::MAX {
                        comp[w] = id;
                        c.push(w);
                    }
                }
            }
            comps.push(c);
        }
        for &b in &self.order[placed..] {
            let needs: Vec<usize> = self
                .pattern
                .neighbors(b)
                .iter()
                .copied()
                .filter(|&a| !self.sets[a].is_empty())
                .collect();
            if needs.is_empty() {
                continue;
            }
            let ok = comps.iter().any(|c| {
                needs
                    .iter()
                    .all(|&a| c.iter().any(|&v| self.adjacent_to_set(v, a)))
            });
            if !ok {
                return false;
            }
        }
        true
    }

    fn place(&mut self, idx: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget { limit: self.budget });
        }
        if idx == self.order.len() {
            return Ok(true);
        }
        let remaining = self.order.len() - idx;
        if self.free_count() < remaining || !self.lookahead(idx) {
            return Ok(false);
        }
        let a = self.order[idx];
        let seeds: Vec<usize> = (0..self.host.n())
            .filter(|&v| self.owner[v] == FREE)
            .filter(|&v| match self.anchor[a] {
                Some(p) => self.adjacent_to_set(v, p),
                None => true,
            })
            .collect();
        let max_size = self.free_count() - (remaining - 1);
        let mut banned = vec![false; self.host.n()];
        for &s in &seeds {
            let mut current = vec![s];
            if self.grow(idx, a, &mut current, &mut banned, max_size)? {
                return Ok(true);
            }
            banned[s] = true;
        }
        Ok(false)
    }

    /// Enumerates connected free sets containing `current` (each once) and
    /// recurses on every set that meets the pattern-edge requirements.
    fn grow(
        &mut self,
        idx: usize,
        a: usize,
        current: &mut Vec<usize>,
        banned: &mut [bool],
        max_size: usize,
    ) -> Result<bool> {
        // try the current set
        let required: Vec<usize> = self
            .pattern
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&b| !self.sets[b].is_empty())
            .collect();
        let meets = required
            .iter()
            .all(|&b| current.iter().any(|&v| self.adjacent_to_set(v, b)));
        if meets {
            for &v in current.iter() {
                self.owner[v] = a;
            }
            self.sets[a] = normalize(current.clone());
            if self.place(idx + 1)? {
                return Ok(true);
            }
            for &v in current.iter() {
                self.owner[v] = FREE;
            }
            self.sets[a].clear();
        }
        if current.len() >= max_size {
            return Ok(false);
        }
        // extend by the least admissible frontier vertex; then ban it and retry
        let mut in_cur = vec![false; self.host.n()];
        for &v in current.iter() {
            in_cur[v] = true;
        }
        let mut frontier: Vec<usize> = current
            .iter()
            .flat_map(|&v| self.host.neighbors(v).iter().copied())
            .filter(|&w| !in_cur[w] && !banned[w] && self.owner[w] == FREE)
            .collect();
        frontier = normalize(frontier);
        let mut newly_banned = Vec::new();
        let mut found = false;
        for &w in &frontier {
            current.push(w);
            let r = self.grow(idx, a, current, banned, max_size);
            current.pop();
            match r {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    for &x in &newly_banned {
                        banned[x] = false;
                    }
                    return Err(e);
                }
            }
            banned[w] = true;
            newly_banned.push(w);
        }
        for &x in &newly_banned {
            banned[x] = false;
        }
        Ok(found)
    }
}

fn exhaustive(host: &Graph, pattern: &Graph, budget: u64) -> Result<MinorOutcome> {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(MinorOutcome::Absent);
    }
    // pattern order: BFS per component, highest degree first
    let mut order = Vec::new();
    let mut anchor = vec![None; pattern.n()];
    let mut seen = vec![false; pattern.n()];
    let mut starts: Vec<usize> = (0..pattern.n()).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            let mut nb: Vec<usize> = pattern.neighbors(u).to_vec();
            nb.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
            for w in nb {
                if !seen[w] {
                    seen[w] = true;
                    anchor[w] = Some(u);
                    q.push_back(w);
                }
            }
        }
    }
    let mut s = Search {
        host,
        pattern,
        order,
        anchor,
        owner: vec![FREE; host.n()],
        sets: vec![Vec::new(); pattern.n()],
        nodes: 0,
        budget,
    };
    if s.place(0)? {
        Ok(MinorOutcome::Present(MinorModel {
            branch_sets: s.sets,
        }))
    } else {
        Ok(MinorOutcome::Absent)
    }
}

// ---- heuristic search ----

fn heuristic(host: &Graph, pattern: &Graph, seed: u64, restarts: usize) -> MinorOutcome {
    if pattern.n() > host.n() {
        return MinorOutcome::Unknown;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..restarts.max(1) {
        if let Some(m) = greedy_attempt(host, pattern, &mut rng) {
            if matches!(verify_model(host, pattern, &m), Ok(Ok(()))) {
                return MinorOutcome::Present(m);
            }
        }
    }
    MinorOutcome::Unknown
}

/// Places pattern vertices one by one, joining each new branch set to its
/// placed neighbours by shortest paths through free vertices.
fn greedy_attempt(host: &Graph, pattern: &Graph, rng: &mut ChaCha8Rng) -> Option<MinorModel> {
    let n = host.n();
    let mut owner = vec![FREE; n];
    let mut sets: Vec<VertexSet> = vec![Vec::new(); pattern.n()];
    let mut order: Vec<usize> = (0..pattern.n()).collect();
    order.shuffle(rng);
    order.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    for a in order {
        let placed_nb: Vec<usize> = pattern
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&b| !sets[b].is_empty())
            .collect();
        let free: Vec<usize> = (0..n).filter(|&v| owner[v] == FREE).collect();
        if free.is_empty() {
            return None;
        }
        // prefer free vertices with many free neighbours
        let start = if placed_nb.is_empty() {
            *free
                .iter()
                .max_by_key(|&&v| {
                    (
                        host.neighbors(v).iter().filter(|&&w| owner[w] == FREE).count(),
                        rng.gen::<u16>(),
                    )
                })
                .unwrap()
        } else {
            let b = placed_nb[0];
            let cands: Vec<usize> = free
                .iter()
                .copied()
                .filter(|&v| host.neighbors(v).iter().any(|&w| owner[w] == b))
                .collect();
            *cands.choose(rng)?
        };
        owner[start] = a;
        let mut set = vec![start];
        for &b in &placed_nb {
            if set
                .iter()
                .any(|&v| host.neighbors(v).iter().any(|&w| owner[w] == b))
            {
                continue;
            }
            // BFS through free vertices from the current set to a vertex adjacent to b
            let mut prev = vec![usize::MAX; n];
            let mut q = std::collections::VecDeque::new();
            for &v in &set {
                prev[v] = v;
                q.push_back(v);
            }
            let mut hit = None;
            while let Some(u) = q.pop_front() {
                if owner[u] != a && host.neighbors(u).iter().any(|&w| owner[w] == b) {
                    hit = Some(u);
                    break;
                }
                for &w in host.neighbors(u) {
                    if prev[w] == usize::MAX && owner[w] == FREE {
                        prev[w] = u;
                        q.push_back(w);
                    }
                }
            }
            let mut u = hit?;
            while owner[u] != a {
                owner[u] = a;
                set.push(u);
                u = prev[u];
            }
        }
        sets[a] = normalize(set);
    }
    Some(MinorModel { branch_sets: sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path, star};

    #[test]
    fn verify_examples() {
        let m = MinorModel {
            branch_sets: vec![vec![0, 1], vec![2], vec![3]],
        };
        assert_eq!(verify_model(&cycle(4), &complete(3), &m).unwrap(), Ok(()));
        let bad = MinorModel {
            branch_sets: vec![vec![0, 1], vec![1], vec![3]],
        };
        assert_eq!(
            verify_model(&cycle(4), &complete(3), &bad).unwrap(),
            Err(ModelViolation::Disjointness(vec![0, 1, 1]))
        );
        let far = MinorModel {
            branch_sets: vec![vec![0, 2]],
        };
        assert!(matches!(
            verify_model(&cycle(4), &complete(1), &far).unwrap(),
            Err(ModelViolation::Connectivity(_))
        ));
        let oob = MinorModel {
            branch_sets: vec![vec![9]],
        };
        assert!(verify_model(&cycle(4), &complete(1), &oob).is_err());
    }

    #[test]
    fn known_minors() {
        let m = has_minor(&complete_bipartite(3, 3), &complete(4)).unwrap().unwrap();
        assert_eq!(
            verify_model(&complete_bipartite(3, 3), &complete(4), &m).unwrap(),
            Ok(())
        );
        assert!(has_minor(&star(5), &complete(3)).unwrap().is_none());
        assert!(has_ct_minor(&path(10), 3, 2).unwrap().is_none());
        assert!(has_ct_minor(&complete(5), 2, 4).unwrap().is_some());
        let g = ct(3, 2).unwrap();
        assert!(has_ct_minor(&g, 3, 2).unwrap().is_some());
        assert_eq!(
            has_minor(&path(3), &Graph::empty(0)).unwrap(),
            Some(MinorModel::default())
        );
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            has_minor(&path(15), &path(2)),
            Err(Error::SizeLimit { .. })
        ));
        let opts = MinorOptions {
            mode: MinorMode::Heuristic {
                seed: 0,
                restarts: 20,
            },
            ..Default::default()
        };
        match has_minor_with(&complete(20), &complete(9), &opts).unwrap() {
            MinorOutcome::Present(m) => {
                assert_eq!(verify_model(&complete(20), &complete(9), &m).unwrap(), Ok(()))
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            has_minor_with(&path(20), &complete(3), &opts).unwrap(),
            MinorOutcome::Unknown
        );
    }

    #[test]
    fn model_json() {
        let m = MinorModel {
            branch_sets: vec![vec![0, 1], vec![2]],
        };
        let s = m.to_json();
        assert_eq!(s, r#"{"0":[0,1],"1":[2]}"#);
        assert_eq!(MinorModel::from_json(&s).unwrap(), m);
    }
}
