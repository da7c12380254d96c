// SPDX-License-Identifier: Apache-2.0

//! Checks the twelve scheme conditions on a pair of consecutive entries.
//!
//! Problems are verdicts, never errors. Each failing condition carries the
//! vertices involved and a short description, so the failure can be replayed
//! by hand. Vertex ids in witnesses are ids of the later entry unless the
//! clause name says `prev`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::types::keyed_bijection;
use super::{SchemeEntry, SchemeParams};
use crate::graph::{ct_size, disjoint_copies, normalize, Graph, VertexSet, DEFAULT_VERTEX_BUDGET};
use crate::minor::{has_minor_with, MinorOptions, MinorOutcome, EXACT_HOST_LIMIT, EXACT_PATTERN_LIMIT};

/// Choice-function combinations tried per hyperedge before giving up.
const CHOICE_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub vertices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub condition: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub conditions: Vec<ConditionVerdict>,
}

impl CertReport {
    pub fn verdict(&self, condition: &str) -> Option<&Verdict> {
        self.conditions.iter().find(|c| c.condition == condition).map(|c| &c.verdict)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| c.verdict.is_fail())
            .map(|c| c.condition.as_str())
            .collect()
    }

    /// No condition fails; skipped ones are allowed.
    pub fn is_clean(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .conditions
            .iter()
            .filter_map(|c| match &c.verdict {
                Verdict::Fail(w) => Some(format!("{} ({}: {} at {:?})", c.condition, w.clause, w.detail, w.vertices)),
                _ => None,
            })
            .collect();
        if parts.is_empty() {
            "clean".into()
        } else {
            parts.join("; ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeCert {
    pub initial: Verdict,
    pub pairs: Vec<CertReport>,
}

impl SchemeCert {
    pub fn is_clean(&self) -> bool {
        !self.initial.is_fail() && self.pairs.iter().all(CertReport::is_clean)
    }
}

type Check = std::result::Result<Option<String>, Witness>;

fn fail<T>(clause: &str, vertices: Vec<usize>, detail: impl Into<String>) -> std::result::Result<T, Witness> {
    Err(Witness {
        clause: clause.into(),
        vertices,
        detail: detail.into(),
    })
}

fn verdict(c: Check) -> Verdict {
    match c {
        Ok(None) => Verdict::Pass,
        Ok(Some(reason)) => Verdict::Skipped { reason },
        Err(w) => Verdict::Fail(w),
    }
}

/// Ids in range, sorted sets, consistent lengths.
fn well_formed(e: &SchemeEntry, on: usize) -> std::result::Result<(), Witness> {
    let n = e.n();
    if e.model.len() != n {
        return fail("shape", vec![], format!("{} models for {n} vertices", e.model.len()));
    }
    let sorted = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
    for (v, m) in e.model.iter().enumerate() {
        if !sorted(m) || m.iter().any(|&x| x >= on) {
            return fail("shape", vec![v], "model is unsorted or names a vertex outside the graph");
        }
    }
    if let Some(&(a, b)) = e.arcs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return fail("shape", vec![a, b], "arc endpoint out of range");
    }
    for (i, q) in e.hyperedges.iter().enumerate() {
        if !sorted(&q.s) || q.s.iter().any(|&x| x >= n) || q.sink >= n {
            return fail("shape", q.s.clone(), format!("hyperedge {i} is unsorted or out of range"));
        }
    }
    for fam in e.witnesses.iter().chain(&e.witness_links) {
        if fam.iter().flatten().any(|&x| x >= on) {
            return fail("shape", vec![], "witness set names a vertex outside the graph");
        }
    }
    if let Some(m) = &e.step_meta {
        if m.q >= n || m.u.iter().chain(&m.u_plus).any(|&x| x >= n) {
            return fail("shape", vec![m.q], "step record names a vertex out of range");
        }
    }
    Ok(())
}

/// Checks the first entry: the graph itself with singleton models and
/// nothing else.
pub fn certify_initial(entry: &SchemeEntry, original: &Graph) -> Verdict {
    let c = (|| -> Check {
        well_formed(entry, original.n())?;
        if entry.g != *original {
            return fail("initial", vec![], "first graph differs from the input graph");
        }
        if let Some(v) = (0..entry.n()).find(|&v| entry.model[v] != [v]) {
            return fail("initial", vec![v], "model is not the vertex itself");
        }
        if !entry.arcs.is_empty() || !entry.hyperedges.is_empty() {
            return fail("initial", vec![], "first entry has arcs or hyperedges");
        }
        if entry.witnesses.iter().chain(&entry.witness_links).any(|f| !f.is_empty()) {
            return fail("initial", vec![], "first entry has witness sets");
        }
        Ok(None)
    })();
    verdict(c)
}

struct Ctx<'a> {
    prev: &'a SchemeEntry,
    next: &'a SchemeEntry,
    p: &'a SchemeParams,
    g: &'a Graph,
    /// Next vertex whose model contains the prev model.
    up: Vec<Option<usize>>,
    /// Prev model meets several next models, or only partly one.
    partial: Vec<bool>,
    /// Prev model is disjoint from every next model.
    gone: Vec<bool>,
    /// Next vertex with exactly the same model, and back.
    same_next: Vec<Option<usize>>,
    same_prev: Vec<Option<usize>>,
    next_special: Vec<bool>,
    prev_sinks: Vec<bool>,
}

impl<'a> Ctx<'a> {
    fn new(prev: &'a SchemeEntry, next: &'a SchemeEntry, p: &'a SchemeParams, g: &'a Graph) -> Self {
        let owner = next.owner_of_original(g.n());
        let mut up = vec![None; prev.n()];
        let mut partial = vec![false; prev.n()];
        let mut gone = vec![false; prev.n()];
        for v in 0..prev.n() {
            let owners: BTreeSet<Option<usize>> = prev.model[v].iter().map(|&x| owner[x]).collect();
            match owners.iter().collect::<Vec<_>>().as_slice() {
                [None] => gone[v] = true,
                [Some(x)] => up[v] = Some(*x),
                _ => partial[v] = true,
            }
        }
        let by_model = next.index_by_model();
        let same_next: Vec<Option<usize>> = prev.model.iter().map(|m| by_model.get(m).copied()).collect();
        let mut same_prev = vec![None; next.n()];
        for (v, s) in same_next.iter().enumerate() {
            if let Some(x) = s {
                same_prev[*x] = Some(v);
            }
        }
        Ctx {
            prev,
            next,
            p,
            g,
            up,
            partial,
            gone,
            same_next,
            same_prev,
            next_special: next.special(),
            prev_sinks: prev.sinks(),
        }
    }

    /// Next singleton vertex that also exists, unchanged, in prev.
    fn stable(&self, x: usize) -> Option<usize> {
        self.same_prev[x].filter(|_| self.next.model[x].len() == 1)
    }

    /// Original neighbours of a model, outside the model.
    fn model_nbrs(&self, m: &[usize]) -> BTreeSet<usize> {
        let inside: HashSet<usize> = m.iter().copied().collect();
        m.iter()
            .flat_map(|&x| self.g.neighbors(x).iter().copied())
            .filter(|y| !inside.contains(y))
            .collect()
    }
}

fn d1(c: &Ctx) -> Check {
    let mut seen = vec![usize::MAX; c.g.n()];
    for (v, m) in c.next.model.iter().enumerate() {
        if m.is_empty() {
            return fail("D1", vec![v], "empty model");
        }
        for &x in m {
            if seen[x] != usize::MAX {
                return fail("D1", vec![seen[x], v], format!("models share original vertex {x}"));
            }
            seen[x] = v;
        }
        if let Err((a, b)) = c.g.connected_within(m) {
            return fail("D1", vec![v], format!("model splits between {a} and {b}"));
        }
    }
    Ok(None)
}

fn d2(c: &Ctx) -> Check {
    let mut images = HashSet::new();
    for (a, b) in c.prev.g.edges() {
        if let (Some(x), Some(y)) = (c.up[a], c.up[b]) {
            images.insert((x.min(y), x.max(y)));
        }
    }
    for (x, y) in c.next.g.edges() {
        if !images.contains(&(x, y)) {
            return fail("D2a", vec![x, y], "edge has no preimage in the previous graph");
        }
    }
    let owner = c.next.owner_of_original(c.g.n());
    for (a, b) in c.g.edges() {
        if let (Some(x), Some(y)) = (owner[a], owner[b]) {
            let singles = c.next.model[x].len() == 1 && c.next.model[y].len() == 1;
            if x != y && singles && !c.next.g.has_edge(x, y) {
                return fail("D2b", vec![x, y], "single-vertex models adjacent in the graph but not here");
            }
        }
    }
    Ok(None)
}

fn d3(c: &Ctx) -> Check {
    if c.prev.n() <= c.p.n && c.prev.same_tuple(c.next) {
        return Ok(None);
    }
    if c.next.n() >= c.prev.n() {
        return fail(
            "D3",
            vec![],
            format!("neither frozen nor shrinking: {} -> {} vertices", c.prev.n(), c.next.n()),
        );
    }
    if let Some(v) = (0..c.prev.n()).find(|&v| c.partial[v]) {
        return fail("D3 prev", vec![v], "previous model is split or partly kept");
    }
    let owner = c.prev.owner_of_original(c.g.n());
    for x in 0..c.next.n() {
        if c.same_prev[x].is_some() {
            continue;
        }
        let parts: Vec<usize> = (0..c.prev.n()).filter(|&v| c.up[v] == Some(x)).collect();
        if c.next.model[x].iter().any(|&o| owner[o].is_none_or(|v| c.up[v] != Some(x))) {
            return fail("D3", vec![x], "new model is not a union of previous models");
        }
        if c.prev.g.connected_within(&parts).is_err() {
            return fail("D3", vec![x], "merged previous vertices are not connected");
        }
    }
    Ok(None)
}

fn d4(c: &Ctx) -> Check {
    let next = c.next;
    let arcs: HashSet<(usize, usize)> = next.arcs.iter().copied().collect();
    for &(a, b) in &next.arcs {
        if a == b || !next.g.has_edge(a, b) {
            return fail("D4 orientation", vec![a, b], "arc is not an oriented edge");
        }
        if arcs.contains(&(b, a)) {
            return fail("D4 2-cycle", vec![a, b], "arcs in both directions");
        }
    }
    for &(a, b) in &next.arcs {
        if let Some(&(_, c3)) = next.arcs.iter().find(|&&(x, _)| x == b) {
            return fail("D4 2-path", vec![a, b, c3], "directed path of length 2");
        }
    }
    for &(a, b) in &c.prev.arcs {
        if let (Some(x), Some(y)) = (c.up[a], c.up[b]) {
            if x != y && next.g.has_edge(x, y) && !arcs.contains(&(x, y)) {
                return fail("D4 carry", vec![x, y], format!("previous arc ({a}, {b}) is not carried over"));
            }
        }
        if let Some(x) = c.up[a] {
            if next.model[x].len() != 1 {
                return fail("D4 tail", vec![x], format!("tail {a} of a previous arc was merged"));
            }
        }
    }
    Ok(None)
}

fn d5(c: &Ctx) -> Check {
    let next = c.next;
    for (i, e) in next.hyperedges.iter().enumerate() {
        if e.s.len() > c.p.r + 1 {
            return fail("D5 size", e.s.clone(), format!("hyperedge {i} has {} > r + 1 members", e.s.len()));
        }
        if e.j == 0 || e.j + 2 > c.p.h {
            return fail("D5 label", e.s.clone(), format!("hyperedge {i} has label {} outside [1, h-2]", e.j));
        }
        let sinks: Vec<usize> = e
            .s
            .iter()
            .copied()
            .filter(|&v| e.s.iter().all(|&u| u == v || next.has_arc(u, v)))
            .collect();
        if sinks != [e.sink] {
            return fail("D5 sink", e.s.clone(), format!("hyperedge {i}: vertices receiving all arcs are {sinks:?}, stored sink {}", e.sink));
        }
    }
    Ok(None)
}

fn d6(c: &Ctx) -> Check {
    for x in (0..c.next.n()).filter(|&x| c.next_special[x]) {
        let count = c.up.iter().filter(|&&u| u == Some(x)).count();
        if count > c.p.n {
            return fail("D6a", vec![x], format!("{count} > N previous vertices merged"));
        }
    }
    for (a, b) in c.next.g.edges() {
        if c.next_special[a] && c.next_special[b] {
            return fail("D6b", vec![a, b], "two special vertices are adjacent");
        }
    }
    Ok(None)
}

fn edge_set(e: &SchemeEntry) -> HashSet<(&VertexSet, usize)> {
    e.hyperedges.iter().map(|q| (&q.s, q.j)).collect()
}

fn d7(c: &Ctx) -> Check {
    let have = edge_set(c.next);
    for e in &c.prev.hyperedges {
        let Some(w) = c.up[e.sink] else { continue };
        let rest: Option<Vec<usize>> = e.s.iter().filter(|&&x| x != e.sink).map(|&x| c.same_next[x]).collect();
        let Some(rest) = rest else { continue };
        let mut s: Vec<usize> = rest.into_iter().filter(|&x| c.next.g.has_edge(w, x)).collect();
        s.push(w);
        let s = normalize(s);
        if !have.contains(&(&s, e.j)) {
            return fail("D7", s, format!("successor of a previous hyperedge with label {} is missing", e.j));
        }
    }
    Ok(None)
}

fn cartesian_count(sets: &[Vec<usize>]) -> u64 {
    sets.iter().fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64))
}

/// Calls `f` with every choice of one member per set.
fn for_each_choice(sets: &[Vec<usize>], f: &mut dyn FnMut(&[usize]) -> std::result::Result<(), Witness>) -> std::result::Result<(), Witness> {
    let mut idx = vec![0usize; sets.len()];
    loop {
        let pick: Vec<usize> = sets.iter().zip(&idx).map(|(s, &i)| s[i]).collect();
        f(&pick)?;
        let mut pos = 0;
        loop {
            if pos == sets.len() {
                return Ok(());
            }
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn d8(c: &Ctx) -> Check {
    let (prev, next, d) = (c.prev, c.next, c.p.d);
    if prev.g == next.g {
        return Ok(None);
    }
    let Some(meta) = &next.step_meta else {
        return fail("D8", vec![], "changed graph without a step record");
    };
    let q = meta.q;
    if meta.u.iter().any(|x| meta.u_plus.binary_search(x).is_err()) {
        return fail("D8", meta.u.clone(), "U is not inside U+");
    }
    let mut plus_prev = Vec::new();
    for &x in &meta.u_plus {
        match c.stable(x) {
            Some(v) => plus_prev.push(v),
            None => return fail("D8", vec![x], "U+ member is not an unchanged single vertex"),
        }
    }
    let plus_prev = normalize(plus_prev);
    let in_plus_prev = |v: usize| plus_prev.binary_search(&v).is_ok();
    let in_u_next = |x: usize| meta.u.binary_search(&x).is_ok();
    let u_orig: BTreeSet<usize> = meta.u.iter().map(|&x| next.model[x][0]).collect();
    let into_q = |v: usize| c.up[v] == Some(q);

    // a
    for v in 0..prev.n() {
        if prev.model[v].len() == 1 && c.same_next[v].is_none() && prev.g.degree(v) > d {
            return fail("D8a prev", vec![v], "removed single vertex has degree above d");
        }
    }
    // b
    let expect: Vec<usize> = meta.u_plus.iter().copied().filter(|&x| next.g.degree(x) > d).collect();
    if expect != meta.u {
        return fail("D8b", meta.u.clone(), format!("U should be {expect:?}"));
    }
    // c
    if meta.u_plus.binary_search(&q).is_ok() {
        return fail("D8c", vec![q], "q lies in U+");
    }
    if let Some(&x) = next.g.neighbors(q).iter().find(|&&x| next.g.degree(x) > d && !in_u_next(x)) {
        return fail("D8c", vec![q, x], "high-degree neighbour of q outside U");
    }
    // d
    for e in prev.hyperedges.iter().filter(|e| into_q(e.sink)) {
        if let Some(&x) = e.s.iter().find(|&&x| x != e.sink && prev.g.degree(x) > d && !in_plus_prev(x)) {
            return fail("D8d prev", vec![x], "high-degree member of a hyperedge merged into q is outside U+");
        }
    }
    // e
    for vq in (0..prev.n()).filter(|&v| into_q(v)) {
        for &v in prev.g.neighbors(vq) {
            let Some(x) = c.same_next[v].filter(|_| prev.model[v].len() == 1) else { continue };
            if in_plus_prev(v) || prev.g.degree(v) > d {
                continue;
            }
            if let Some(&y) = next
                .g
                .neighbors(x)
                .iter()
                .find(|&&y| next.model[y].len() == 1 && next.g.degree(y) > d && !in_u_next(y))
            {
                return fail("D8e", vec![x, y], "high-degree neighbour of a low-degree vertex next to q is outside U");
            }
        }
    }
    // f
    let mut s: Vec<usize> = next.g.neighbors(q).iter().copied().filter(|&x| in_u_next(x)).collect();
    s.push(q);
    let s = normalize(s);
    if !next.hyperedges.iter().any(|e| e.s == s && e.j == 1 && e.sink == q) {
        return fail("D8f", s, "missing label-1 hyperedge with sink q");
    }
    let key_plus = |v: usize| -> Vec<usize> { prev.g.neighbors(v).iter().copied().filter(|&x| in_plus_prev(x)).collect() };
    let key_u = |m: &[usize]| -> Vec<usize> { c.model_nbrs(m).into_iter().filter(|o| u_orig.contains(o)).collect() };

    if next.covered() == prev.covered() {
        if c.same_prev[q].is_some() {
            return fail("D8ga", vec![q], "q is a vertex of the previous graph");
        }
        if let Some(v) = (0..prev.n()).find(|&v| c.same_next[v].is_none() && !into_q(v)) {
            return fail("D8gb prev", vec![v], "previous model neither kept nor merged into q");
        }
        for (a, b) in prev.g.edges() {
            let (Some(x), Some(y)) = (c.up[a], c.up[b]) else {
                return fail("D8gc prev", vec![a, b], "edge end has no image");
            };
            if x == y || next.g.has_edge(x, y) {
                continue;
            }
            if x != q && y != q {
                return fail("D8gc", vec![x, y], "dropped edge avoids q");
            }
            let other = if x == q { y } else { x };
            let ok = c.stable(other).is_some_and(|v| {
                (v == a || v == b) && !in_plus_prev(v) && prev.g.degree(v) <= d && !c.prev_sinks[v]
            });
            if !ok {
                return fail("D8gc", vec![q, other], "dropped edge at q ends at an unsuitable vertex");
            }
        }
        for e in prev.hyperedges.iter().filter(|e| into_q(e.sink)) {
            let trace: Vec<usize> = e.s.iter().copied().filter(|&x| in_plus_prev(x)).collect();
            let dom: Vec<usize> = e.s.iter().copied().filter(|&x| x != e.sink && !in_plus_prev(x)).collect();
            let found = prev.hyperedges.iter().any(|f| {
                f.j == e.j
                    && !in_plus_prev(f.sink)
                    && f.s.iter().all(|&x| in_plus_prev(x) || into_q(x))
                    && f.s.iter().copied().filter(|&x| in_plus_prev(x)).collect::<Vec<_>>() == trace
                    && {
                        let cod: Vec<usize> = f.s.iter().copied().filter(|&x| x != f.sink && !in_plus_prev(x)).collect();
                        keyed_bijection(&dom, &cod, key_plus).is_some()
                    }
            });
            if !found {
                return fail("D8gd prev", e.s.clone(), "no matching hyperedge inside q");
            }
        }
    } else {
        if let Some(v) = (0..prev.n()).find(|&v| c.same_next[v].is_none() && !into_q(v) && !c.gone[v]) {
            return fail("D8ha prev", vec![v], "previous model neither kept, merged into q, nor removed");
        }
        for v in (0..prev.n()).filter(|&v| c.gone[v]) {
            for &x in prev.g.neighbors(v) {
                let ok = c.gone[x] || (in_plus_prev(x) && c.same_next[x].is_some_and(|y| next.g.has_edge(y, q)));
                if !ok {
                    return fail("D8hb prev", vec![v, x], "removed vertex has a neighbour outside U+ near q");
                }
            }
        }
        for &x in next.g.neighbors(q) {
            if next.model[x].len() != 1 || c.same_prev[x].is_some_and(|v| prev.is_head(v)) {
                return fail("D8hc", vec![q, x], "neighbour of q is merged or was a head");
            }
        }
        for (a, b) in prev.g.edges() {
            if let (Some(x), Some(y)) = (c.up[a], c.up[b]) {
                if x != y && !next.g.has_edge(x, y) {
                    return fail("D8hd", vec![x, y], "edge between distinct images was dropped");
                }
            }
        }
        let lost = c.same_next.iter().filter(|s| s.is_none()).count();
        if lost > c.p.n {
            return fail("D8he", vec![], format!("{lost} > N previous vertices disappear"));
        }
        let q_singles: Vec<usize> = next.model[q]
            .iter()
            .copied()
            .filter(|&o| c.prev.model.iter().any(|m| m.as_slice() == [o]))
            .collect();
        for v in (0..prev.n()).filter(|&v| c.gone[v] && prev.model[v].len() == 1) {
            let kx = key_u(&prev.model[v]);
            if !q_singles.iter().any(|&o| key_u(&[o]) == kx) {
                return fail("D8hf prev", vec![v], "no vertex inside q sees the same part of U");
            }
        }
        for e in prev.hyperedges.iter().filter(|e| c.gone[e.sink]) {
            let kept = |s: &[usize], sink: usize| -> Vec<usize> {
                s.iter().copied().filter(|&x| x != sink && c.same_next[x].is_some()).collect()
            };
            let dom: Vec<usize> = e.s.iter().copied().filter(|&x| x != e.sink && c.same_next[x].is_none()).collect();
            let found = prev.hyperedges.iter().any(|f| {
                f.j == e.j
                    && f.s.len() == e.s.len()
                    && into_q(f.sink)
                    && kept(&f.s, f.sink) == kept(&e.s, e.sink)
                    && {
                        let cod: Vec<usize> = f.s.iter().copied().filter(|&x| x != f.sink && into_q(x)).collect();
                        keyed_bijection(&dom, &cod, |x| key_u(&prev.model[x])).is_some()
                    }
            });
            if !found {
                return fail("D8hg prev", e.s.clone(), "no stand-in hyperedge with sink inside q");
            }
        }
    }

    // i
    let have: HashSet<(&VertexSet, usize, usize)> = next.hyperedges.iter().map(|e| (&e.s, e.j, e.sink)).collect();
    let mut skipped = None;
    for e in &prev.hyperedges {
        if !into_q(e.sink) || !e.s.iter().any(|&v| v != e.sink && into_q(v)) {
            continue;
        }
        let trace: Vec<usize> = e.s.iter().filter(|&&x| in_plus_prev(x)).map(|&x| c.same_next[x].expect("stable")).collect();
        let rest: Vec<usize> = e.s.iter().copied().filter(|&x| x != e.sink && !in_plus_prev(x)).collect();
        let choices = |xs: &[usize]| -> Vec<Vec<usize>> {
            xs.iter()
                .map(|&x| {
                    let k = key_u(&prev.model[x]);
                    meta.u.iter().copied().filter(|&y| k.contains(&next.model[y][0])).collect::<Vec<_>>()
                })
                .filter(|z| !z.is_empty())
                .collect()
        };
        let check = |sets: &[Vec<usize>], j: usize, clause: &str| -> Check {
            if cartesian_count(sets) > CHOICE_BUDGET {
                return Ok(Some(format!("{clause}: more than {CHOICE_BUDGET} choice functions")));
            }
            for_each_choice(sets, &mut |pick| {
                let mut s: Vec<usize> = trace.iter().chain(pick).copied().collect();
                s.push(q);
                let s = normalize(s);
                if have.contains(&(&s, j, q)) {
                    Ok(())
                } else {
                    fail(clause, s, format!("missing hyperedge with label {j} and sink q"))
                }
            })?;
            Ok(None)
        };
        if let Some(r) = check(&choices(&rest), e.j, "D8ia")? {
            skipped = Some(r);
        }
        for &u in &rest {
            let others: Vec<usize> = rest.iter().copied().filter(|&x| x != u).collect();
            let sets = choices(&others);
            if trace.is_empty() && sets.is_empty() {
                continue;
            }
            if let Some(r) = check(&sets, e.j + 1, "D8ib")? {
                skipped = Some(r);
            }
        }
    }
    Ok(skipped)
}

fn d9(c: &Ctx) -> Check {
    let e = c.next;
    if e.witnesses.len() != e.hyperedges.len() || e.witness_links.len() != e.hyperedges.len() {
        return fail(
            "D9",
            vec![],
            format!(
                "{} hyperedges, {} witness families, {} link families",
                e.hyperedges.len(),
                e.witnesses.len(),
                e.witness_links.len()
            ),
        );
    }
    Ok(None)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn touching(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let bs: HashSet<usize> = b.iter().copied().collect();
    a.iter().any(|&x| g.neighbors(x).iter().any(|y| bs.contains(y)))
}

fn pairwise_disjoint(fam: &[VertexSet]) -> Option<(usize, usize)> {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, a) in fam.iter().enumerate() {
        for &x in a {
            if let Some(&j) = owner.get(&x) {
                return Some((j, i));
            }
            owner.insert(x, i);
        }
    }
    None
}

fn d10(c: &Ctx) -> Check {
    let (e, g) = (c.next, c.g);
    let covered = e.covered();
    let free = |x: &usize| !covered.contains(x);
    let mut skipped = None;
    for (i, q) in e.hyperedges.iter().enumerate() {
        let (Some(fam), Some(links)) = (e.witnesses.get(i), e.witness_links.get(i)) else {
            return Ok(Some("witness families missing".into()));
        };
        let sink_model = &e.model[q.sink];
        for (a_idx, a) in fam.iter().enumerate() {
            if a.is_empty() || g.connected_within(a).is_err() {
                return fail("D10 A", vec![i, a_idx], "witness member is empty or disconnected");
            }
            if a.iter().any(|x| sink_model.binary_search(x).is_err() && !free(x)) {
                return fail("D10 A", vec![i, a_idx], "witness member leaves the sink model and uncovered part");
            }
        }
        if let Some((a, b)) = pairwise_disjoint(fam) {
            return fail("D10 A", vec![i, a, b], "witness members overlap");
        }
        if links.len() + 1 != q.s.len() {
            return fail("D10 A'", vec![i], format!("{} link members for {} vertices", links.len(), q.s.len()));
        }
        if let Some((a, b)) = pairwise_disjoint(links) {
            return fail("D10 A'", vec![i, a, b], "link members overlap");
        }
        let members: BTreeSet<usize> = q.s.iter().flat_map(|&v| e.model[v].iter().copied()).collect();
        let non_sink: BTreeSet<usize> = q
            .s
            .iter()
            .filter(|&&v| v != q.sink)
            .flat_map(|&v| e.model[v].iter().copied())
            .collect();
        for (l_idx, l) in links.iter().enumerate() {
            if l.is_empty() || g.connected_within(l).is_err() {
                return fail("D10 A'", vec![i, l_idx], "link member is empty or disconnected");
            }
            if l.iter().any(|x| !members.contains(x) && !free(x)) {
                return fail("D10 A'", vec![i, l_idx], "link member leaves the hyperedge models and uncovered part");
            }
            if !l.iter().any(|x| non_sink.contains(x)) {
                return fail("D10 A'", vec![i, l_idx], "link member misses every non-sink vertex");
            }
            for (a_idx, a) in fam.iter().enumerate() {
                if !disjoint(l, a) {
                    return fail("D10 A'", vec![i, l_idx, a_idx], "link member meets a witness member");
                }
                if !touching(g, l, a) {
                    return fail("D10 A'", vec![i, l_idx, a_idx], "link member not adjacent to a witness member");
                }
            }
        }
        // minor clause, on the graph whose vertices are the witness members
        if q.j == 0 || q.j >= c.p.k + c.p.h {
            skipped = Some(format!("hyperedge {i}: label {} leaves no copies to check", q.j));
            continue;
        }
        let copies = c.p.k + c.p.h - q.j;
        let need = copies as u128 * ct_size(q.j, c.p.k);
        if (fam.len() as u128) < need {
            return fail("D10 minor", vec![i], format!("{} witness members, the minor needs {need}", fam.len()));
        }
        if q.j == 1 {
            continue;
        }
        if fam.len() > EXACT_HOST_LIMIT || need > EXACT_PATTERN_LIMIT as u128 {
            skipped = Some(format!("hyperedge {i}: minor clause beyond exhaustive limits"));
            continue;
        }
        let mut quotient = Graph::empty(fam.len());
        for a in 0..fam.len() {
            for b in a + 1..fam.len() {
                if touching(g, &fam[a], &fam[b]) {
                    quotient.add_edge(a, b);
                }
            }
        }
        let pattern = match crate::graph::ct(q.j, c.p.k).and_then(|b| disjoint_copies(copies, &b, DEFAULT_VERTEX_BUDGET)) {
            Ok(p) => p,
            Err(err) => {
                skipped = Some(format!("hyperedge {i}: {err}"));
                continue;
            }
        };
        match has_minor_with(&quotient, &pattern, &MinorOptions::default()) {
            Ok(MinorOutcome::Present(_)) => {}
            Ok(MinorOutcome::Absent) => {
                return fail("D10 minor", vec![i], format!("witness members carry no {copies}-fold CT_{{{},{}}}", q.j, c.p.k));
            }
            Ok(MinorOutcome::Unknown) => skipped = Some(format!("hyperedge {i}: minor search inconclusive")),
            Err(err) => skipped = Some(format!("hyperedge {i}: {err}")),
        }
    }
    Ok(skipped)
}

fn d11(c: &Ctx) -> Check {
    let e = c.next;
    let m = e.hyperedges.len().min(e.witnesses.len()).min(e.witness_links.len());
    for a in 0..m {
        for b in a + 1..m {
            let (qa, qb) = (&e.hyperedges[a], &e.hyperedges[b]);
            if qa.sink == qb.sink {
                continue;
            }
            for x in &e.witnesses[a] {
                if e.witnesses[b].iter().any(|y| !disjoint(x, y)) {
                    return fail("D11 A", vec![a, b], "witness members of different sinks overlap");
                }
            }
            for (p, r) in [(a, b), (b, a)] {
                for x in &e.witnesses[p] {
                    if e.witness_links[r].iter().any(|y| !disjoint(x, y)) {
                        return fail("D11 A/A'", vec![p, r], "witness member meets a link member of another sink");
                    }
                }
            }
            let models = |s: &[usize]| -> BTreeSet<usize> { s.iter().flat_map(|&v| e.model[v].iter().copied()).collect() };
            let (ma, mb) = (models(&qa.s), models(&qb.s));
            for x in &e.witness_links[a] {
                for y in &e.witness_links[b] {
                    let bad = x.iter().any(|o| y.binary_search(o).is_ok() && !(ma.contains(o) && mb.contains(o)));
                    if bad {
                        return fail("D11 A'", vec![a, b], "link members overlap outside both hyperedges");
                    }
                }
            }
        }
    }
    Ok(None)
}

fn d12(c: &Ctx) -> Check {
    for x in (0..c.next.n()).filter(|&x| c.next_special[x]) {
        if c.next.g.degree(x) > c.p.r {
            return fail("D12", vec![x], format!("special vertex has degree {} > r", c.next.g.degree(x)));
        }
    }
    Ok(None)
}

pub const CONDITIONS: [&str; 12] = ["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12"];

/// Verdicts for all twelve conditions on `prev -> next`.
pub fn certify_entry(prev: &SchemeEntry, next: &SchemeEntry, params: &SchemeParams, original: &Graph) -> CertReport {
    let shape = well_formed(prev, original.n())
        .map_err(|mut w| {
            w.clause = "shape prev".into();
            w
        })
        .and_then(|_| well_formed(next, original.n()));
    let conditions = match shape {
        Err(w) => CONDITIONS
            .iter()
            .enumerate()
            .map(|(i, name)| ConditionVerdict {
                condition: (*name).into(),
                verdict: if i == 0 {
                    Verdict::Fail(w.clone())
                } else {
                    Verdict::Skipped {
                        reason: "malformed entry".into(),
                    }
                },
            })
            .collect(),
        Ok(()) => {
            let c = Ctx::new(prev, next, params, original);
            let checks: [fn(&Ctx) -> Check; 12] = [d1, d2, d3, d4, d5, d6, d7, d8, d9, d10, d11, d12];
            CONDITIONS
                .iter()
                .zip(checks)
                .map(|(name, f)| ConditionVerdict {
                    condition: (*name).into(),
                    verdict: verdict(f(&c)),
                })
                .collect()
        }
    };
    CertReport { conditions }
}

pub fn certify_scheme(scheme: &[SchemeEntry], params: &SchemeParams, original: &Graph) -> SchemeCert {
    let initial = match scheme.first() {
        Some(e) => certify_initial(e, original),
        None => Verdict::Fail(Witness {
            clause: "initial".into(),
            vertices: vec![],
            detail: "empty scheme".into(),
        }),
    };
    let pairs = scheme.windows(2).map(|w| certify_entry(&w[0], &w[1], params, original)).collect();
    SchemeCert { initial, pairs }
}
