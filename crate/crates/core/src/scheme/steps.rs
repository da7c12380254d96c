// SPDX-License-Identifier: Apache-2.0

//! The two ways of extending a scheme by one entry.
//!
//! Both steps merge a region of the current graph into a new vertex `v*`
//! (appended last), possibly delete further vertices, point an arc from
//! every vertex of `U+` at `v*`, and rebuild the hyperedges in four groups:
//! survivors, label-preserving edges at `v*`, label-raising edges at `v*`,
//! and the edge `{v*} ∪ U` with label 1.

use std::collections::{BTreeMap, HashSet};

use super::constants::n_rec;
use super::geodesic::geodesic_split;
use super::homo::{verify_homogeneous, Homogeneous};
use super::types::{ball_signature, keyed_bijection, profiles, saturating_matching, subset_mask};
use super::{Hyperedge, SchemeEntry, SchemeParams, StepMeta};
use crate::error::{Error, Result};
use crate::graph::{ball_within, ct, disjoint_copies, geodesic_within, normalize, Graph, VertexSet};
use crate::minor::{has_minor_with, MinorOptions, MinorOutcome};

fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn mask(n: usize, s: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in s {
        m[v] = true;
    }
    m
}

fn model_union(entry: &SchemeEntry, vs: &[usize]) -> VertexSet {
    normalize(vs.iter().flat_map(|&v| entry.model[v].iter().copied()).collect())
}

/// Next graph, models and arcs, before hyperedges are installed.
struct Skeleton {
    /// Current id to next id; merged vertices map to `v_star`.
    up: Vec<Option<usize>>,
    merged: Vec<bool>,
    v_star: usize,
    /// `v*` stands for exactly one current vertex.
    single_merge: bool,
    next: SchemeEntry,
    /// `U+` and `U`, in current ids.
    u_plus: VertexSet,
    u: VertexSet,
}

impl Skeleton {
    /// Next id of `v` when it survives with the same model.
    fn kept(&self, v: usize) -> Option<usize> {
        self.up[v].filter(|&x| x != self.v_star || self.single_merge)
    }
}

fn skeleton(prev: &SchemeEntry, merge: &[usize], removed: &[usize], cut: &[usize], u_plus: VertexSet, d: usize) -> Skeleton {
    let n = prev.n();
    let merged = mask(n, merge);
    let gone = mask(n, removed);
    let cut = mask(n, cut);
    let mut up = vec![None; n];
    let mut model = Vec::new();
    for v in 0..n {
        if !merged[v] && !gone[v] {
            up[v] = Some(model.len());
            model.push(prev.model[v].clone());
        }
    }
    let v_star = model.len();
    for &v in merge {
        up[v] = Some(v_star);
    }
    model.push(model_union(prev, merge));
    let mut g = Graph::empty(v_star + 1);
    for (a, b) in prev.g.edges() {
        if let (Some(x), Some(y)) = (up[a], up[b]) {
            let severed = (x == v_star && cut[b]) || (y == v_star && cut[a]);
            if x != y && !severed {
                g.add_edge(x, y);
            }
        }
    }
    // an arc survives whenever its image is still an edge
    let mut arcs: Vec<(usize, usize)> = prev
        .arcs
        .iter()
        .filter_map(|&(a, b)| match (up[a], up[b]) {
            (Some(x), Some(y)) if x != y && g.has_edge(x, y) => Some((x, y)),
            _ => None,
        })
        .collect();
    arcs.extend(u_plus.iter().map(|&w| (up[w].expect("U+ survives"), v_star)));
    arcs.sort_unstable();
    arcs.dedup();
    let u: VertexSet = u_plus
        .iter()
        .copied()
        .filter(|&w| g.degree(up[w].expect("U+ survives")) > d)
        .collect();
    Skeleton {
        up,
        merged,
        v_star,
        single_merge: merge.len() == 1,
        next: SchemeEntry {
            g,
            model,
            arcs,
            hyperedges: vec![],
            witnesses: vec![],
            witness_links: vec![],
            step_meta: None,
        },
        u_plus,
        u,
    }
}

/// Where witness regions for the rebuilt hyperedges come from.
struct Plan {
    /// Region holding the stand-in for label-preserving edges; `None` uses
    /// the source hyperedge itself.
    first_region: Option<Vec<bool>>,
    /// Regions for the label-raising edges, used in order.
    regions: Vec<Vec<bool>>,
    /// Witness family of the label-1 edge at `v*`.
    closing: Vec<VertexSet>,
}

/// Hyperedge of `prev` with the same label, sink in `region`, non-`U+` part
/// inside `region`, same trace on `U+`, plus a bijection between non-sink,
/// non-`U+` members that preserves neighbourhoods in `U+`.
fn find_analogue(prev: &SchemeEntry, idx: usize, region: &[bool], u_plus: &[usize]) -> Option<(usize, Vec<(usize, usize)>)> {
    let e = &prev.hyperedges[idx];
    let in_plus = |x: &usize| u_plus.binary_search(x).is_ok();
    let trace: VertexSet = e.s.iter().copied().filter(in_plus).collect();
    let dom: Vec<usize> = e.s.iter().copied().filter(|x| *x != e.sink && !in_plus(x)).collect();
    prev.hyperedges.iter().enumerate().find_map(|(c, f)| {
        if f.j != e.j || !region[f.sink] || f.s.iter().any(|x| !in_plus(x) && !region[*x]) {
            return None;
        }
        if f.s.iter().copied().filter(in_plus).collect::<VertexSet>() != trace {
            return None;
        }
        let cod: Vec<usize> = f.s.iter().copied().filter(|x| *x != f.sink && !in_plus(x)).collect();
        keyed_bijection(&dom, &cod, |v| subset_mask(&prev.g, v, u_plus)).map(|b| (c, b))
    })
}

/// Member of the link family of hyperedge `idx` that meets the model of `v`.
fn link_of(prev: &SchemeEntry, idx: usize, v: usize) -> Result<&VertexSet> {
    let m = &prev.model[v];
    prev.witness_links[idx]
        .iter()
        .find(|a| a.iter().any(|x| m.binary_search(x).is_ok()))
        .ok_or_else(|| pre(format!("hyperedge {idx} has no link member through vertex {v}")))
}

/// Splits a witness family into one `CT_{j,k}` block and `k` further blocks,
/// returned as member indices.
fn split_family(original: &Graph, fam: &[VertexSet], j: usize, k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if j == 1 {
        if fam.len() < k + 1 {
            return Err(pre(format!("witness family has {} members, need {}", fam.len(), k + 1)));
        }
        return Ok((vec![0], (1..=k).collect()));
    }
    let mut owner = vec![usize::MAX; original.n()];
    for (i, a) in fam.iter().enumerate() {
        for &x in a {
            owner[x] = i;
        }
    }
    let mut quotient = Graph::empty(fam.len());
    for (a, b) in original.edges() {
        let (p, q) = (owner[a], owner[b]);
        if p != usize::MAX && q != usize::MAX && p != q {
            quotient.add_edge(p, q);
        }
    }
    let block = ct(j, k)?;
    let pattern = disjoint_copies(k + 1, &block, crate::graph::DEFAULT_VERTEX_BUDGET)?;
    match has_minor_with(&quotient, &pattern, &MinorOptions::default())? {
        MinorOutcome::Present(m) => {
            let p = block.n();
            let collect = |r: std::ops::Range<usize>| -> Vec<usize> {
                normalize(m.branch_sets[r].iter().flatten().copied().collect())
            };
            Ok((collect(0..p), collect(p..(k + 1) * p)))
        }
        _ => Err(pre(format!("witness family holds no {}-fold CT_{{{j},{k}}}", k + 1))),
    }
}

fn install(prev: &SchemeEntry, original: &Graph, params: &SchemeParams, sk: &mut Skeleton, plan: &Plan) -> Result<()> {
    let v_star = sk.v_star;
    let mut seen: HashSet<(VertexSet, usize)> = HashSet::new();
    let mut out: Vec<(Hyperedge, Vec<VertexSet>, Vec<VertexSet>)> = Vec::new();

    for (idx, e) in prev.hyperedges.iter().enumerate() {
        let mapped: Option<Vec<usize>> = e.s.iter().map(|&x| sk.kept(x)).collect();
        if let Some(s) = mapped {
            let s = normalize(s);
            if seen.insert((s.clone(), e.j)) {
                let sink = sk.kept(e.sink).expect("kept");
                out.push((Hyperedge { s, j: e.j, sink }, prev.witnesses[idx].clone(), prev.witness_links[idx].clone()));
            }
        }
    }

    let in_plus = |x: &usize| sk.u_plus.binary_search(x).is_ok();
    for (idx, e) in prev.hyperedges.iter().enumerate() {
        if !sk.merged[e.sink] {
            continue;
        }
        let trace: Vec<usize> = e.s.iter().copied().filter(in_plus).collect();
        let free: Vec<usize> = sk.u.iter().copied().filter(|x| !e.s.contains(x)).collect();
        let inside: Vec<usize> = e.s.iter().copied().filter(|&x| x != e.sink && sk.merged[x]).collect();
        let label = |t: &[usize]| -> VertexSet {
            let mut s: Vec<usize> = trace.iter().chain(t).map(|&x| sk.up[x].expect("kept")).collect();
            s.push(v_star);
            normalize(s)
        };
        for bits in 0..1usize << free.len() {
            let t: Vec<usize> = (0..free.len()).filter(|i| bits >> i & 1 == 1).map(|i| free[i]).collect();
            let Some(m) = saturating_matching(&t, &inside, |a, b| prev.g.has_edge(a, b)) else {
                continue;
            };
            let s = label(&t);
            if seen.insert((s.clone(), e.j)) {
                let (a, links) = keep_label_witness(prev, idx, &trace, &m, sk, plan)?;
                out.push((Hyperedge { s, j: e.j, sink: v_star }, a, links));
            }
        }
        for &uq in &inside {
            let rest: Vec<usize> = inside.iter().copied().filter(|&x| x != uq).collect();
            for bits in 0..1usize << free.len() {
                let t: Vec<usize> = (0..free.len()).filter(|i| bits >> i & 1 == 1).map(|i| free[i]).collect();
                if trace.is_empty() && t.is_empty() {
                    continue;
                }
                let Some(m) = saturating_matching(&t, &rest, |a, b| prev.g.has_edge(a, b)) else {
                    continue;
                };
                let s = label(&t);
                if seen.insert((s.clone(), e.j + 1)) {
                    let (a, links) = raise_label_witness(prev, original, params, idx, uq, &trace, &m, sk, plan)?;
                    out.push((Hyperedge { s, j: e.j + 1, sink: v_star }, a, links));
                }
            }
        }
    }

    let s = label_closing(sk);
    if seen.insert((s.clone(), 1)) {
        let links = sk.u.iter().map(|&u| prev.model[u].clone()).collect();
        out.push((Hyperedge { s, j: 1, sink: v_star }, plan.closing.clone(), links));
    }

    for (e, a, links) in out {
        sk.next.hyperedges.push(e);
        sk.next.witnesses.push(a);
        sk.next.witness_links.push(links);
    }
    Ok(())
}

fn label_closing(sk: &Skeleton) -> VertexSet {
    let mut s: Vec<usize> = sk.u.iter().map(|&u| sk.up[u].expect("kept")).collect();
    s.push(sk.v_star);
    normalize(s)
}

fn keep_label_witness(
    prev: &SchemeEntry,
    idx: usize,
    trace: &[usize],
    matching: &[(usize, usize)],
    sk: &Skeleton,
    plan: &Plan,
) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    let (src, iota) = match &plan.first_region {
        None => {
            let e = &prev.hyperedges[idx];
            let ident = e.s.iter().filter(|&&x| x != e.sink).map(|&x| (x, x)).collect();
            (idx, ident)
        }
        Some(region) => find_analogue(prev, idx, region, &sk.u_plus)
            .ok_or_else(|| pre(format!("no stand-in for hyperedge {idx} in the first region")))?,
    };
    let image = |x: usize| iota.iter().find(|p| p.0 == x).map(|p| p.1).expect("mapped");
    let mut links = Vec::new();
    for &v in trace {
        links.push(link_of(prev, src, v)?.clone());
    }
    for &(t, x) in matching {
        let mut a = link_of(prev, src, image(x))?.clone();
        a.extend(prev.model[t].iter().copied());
        links.push(normalize(a));
    }
    Ok((prev.witnesses[src].clone(), links))
}

#[allow(clippy::too_many_arguments)]
fn raise_label_witness(
    prev: &SchemeEntry,
    original: &Graph,
    params: &SchemeParams,
    idx: usize,
    uq: usize,
    trace: &[usize],
    matching: &[(usize, usize)],
    sk: &Skeleton,
    plan: &Plan,
) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    let j = prev.hyperedges[idx].j;
    let copies = (params.k + params.h).saturating_sub(j + 1);
    if plan.regions.len() < copies {
        return Err(pre(format!("need {copies} witness regions, have {}", plan.regions.len())));
    }
    let mut a = Vec::new();
    let mut trace_acc: Vec<Vec<usize>> = vec![Vec::new(); trace.len()];
    let mut t_acc: Vec<Vec<usize>> = matching.iter().map(|&(t, _)| prev.model[t].clone()).collect();
    for region in &plan.regions[..copies] {
        let (src, iota) = find_analogue(prev, idx, region, &sk.u_plus)
            .ok_or_else(|| pre(format!("no stand-in for hyperedge {idx} in a witness region")))?;
        let image = |x: usize| iota.iter().find(|p| p.0 == x).map(|p| p.1).expect("mapped");
        let fam = &prev.witnesses[src];
        let (first, rest) = split_family(original, fam, j, params.k)?;
        let mut head = link_of(prev, src, image(uq))?.clone();
        for &i in &first {
            head.extend(fam[i].iter().copied());
        }
        a.push(normalize(head));
        a.extend(rest.iter().map(|&i| fam[i].clone()));
        for (acc, &v) in trace_acc.iter_mut().zip(trace) {
            acc.extend(link_of(prev, src, v)?.iter().copied());
        }
        for (acc, &(_, x)) in t_acc.iter_mut().zip(matching) {
            acc.extend(link_of(prev, src, image(x))?.iter().copied());
        }
    }
    let links = trace_acc.into_iter().chain(t_acc).map(normalize).collect();
    Ok((a, links))
}

fn check_step_input(entry: &SchemeEntry, homo: &Homogeneous, params: &SchemeParams) -> Result<()> {
    params.validate()?;
    if entry.n() <= params.n {
        return Err(pre(format!("graph has {} <= N = {} vertices; the scheme is frozen", entry.n(), params.n)));
    }
    verify_homogeneous(&entry.g, homo, params.l0, params.d, params.r).map_err(pre)?;
    let special = entry.special();
    if let Some(&w) = homo.w.iter().find(|&&w| special[w]) {
        return Err(pre(format!("W member {w} is a merged vertex, head or sink")));
    }
    Ok(())
}

fn finish(mut sk: Skeleton) -> SchemeEntry {
    let up = |v: usize| sk.up[v].expect("kept");
    sk.next.step_meta = Some(StepMeta {
        q: sk.v_star,
        u: normalize(sk.u.iter().map(|&v| up(v)).collect()),
        u_plus: normalize(sk.u_plus.iter().map(|&v| up(v)).collect()),
    });
    sk.next
}

/// Deletion step: every ball around a centre in `Z` has neighbourhood
/// exactly `W`. Centres are bucketed by what their balls look like from
/// `W`; `k + h` centres of one bucket are used, the least one is contracted
/// and the other balls are deleted.
pub fn del_step(entry: &SchemeEntry, homo: &Homogeneous, params: &SchemeParams, original: &Graph) -> Result<SchemeEntry> {
    check_step_input(entry, homo, params)?;
    let g = &entry.g;
    let xm = homo.x_mask(g.n());
    let balls: Vec<VertexSet> = homo.z.iter().map(|&z| ball_within(g, &[z], params.l0 - 1, &xm)).collect();
    for (z, b) in homo.z.iter().zip(&balls) {
        if g.set_neighbors(b) != homo.w {
            return Err(pre(format!("ball of z = {z} has neighbours outside W")));
        }
    }
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, b) in balls.iter().enumerate() {
        buckets.entry(ball_signature(entry, b, &homo.w)).or_default().push(i);
    }
    let need = params.k + params.h;
    let chosen = buckets
        .values()
        .filter(|b| b.len() >= need)
        .min_by_key(|b| b[0])
        .ok_or_else(|| Error::BucketTooSmall {
            largest: buckets.values().map(Vec::len).max().unwrap_or(0),
            needed: need,
        })?;
    let picked = &chosen[..need];
    let merge = &balls[picked[0]];
    let others: Vec<&VertexSet> = picked[1..].iter().map(|&i| &balls[i]).collect();
    let removed: Vec<usize> = others.iter().flat_map(|b| b.iter().copied()).collect();
    let mut sk = skeleton(entry, merge, &removed, &[], homo.w.clone(), params.d);
    let plan = Plan {
        first_region: None,
        regions: others.iter().map(|b| mask(g.n(), b)).collect(),
        closing: others.iter().map(|b| model_union(entry, b)).collect(),
    };
    install(entry, original, params, &mut sk, &plan)?;
    Ok(finish(sk))
}

/// Contraction step: some ball has a neighbour in `X`. Vertex profiles near
/// the least such centre colour a long geodesic, the geodesic split finds
/// a stretch where the same profiles recur, and a thickened stretch `O` is
/// contracted with its edges into `X` removed.
pub fn contract_step(entry: &SchemeEntry, homo: &Homogeneous, params: &SchemeParams, original: &Graph) -> Result<SchemeEntry> {
    check_step_input(entry, homo, params)?;
    let g = &entry.g;
    let n = g.n();
    let xm = homo.x_mask(n);
    let l0 = params.l0;
    let in_w = |v: &usize| homo.w.binary_search(v).is_ok();
    let z_star = *homo
        .z
        .iter()
        .find(|&&z| g.set_neighbors(&ball_within(g, &[z], l0 - 1, &xm)).iter().any(|v| !in_w(v)))
        .ok_or(Error::BranchMismatch)?;

    let ball = ball_within(g, &[z_star], l0 - 1, &xm);
    let prof = profiles(entry, &ball, &homo.w);
    let mut kinds = prof.clone();
    kinds.sort();
    kinds.dedup();
    let t1 = kinds.len();
    let k0 = 1 + (params.h + params.k - 1) * (6 * t1 + 1);
    let span = n_rec(t1, k0, 3)
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| pre(format!("n({t1}, {k0}, 3) overflows")))?;
    if span + 1 > l0 {
        return Err(Error::GeodesicTooShort { need: span + 1, have: l0 });
    }

    let h_vertices = ball_within(g, &[z_star], span, &xm);
    let h_graph = g.induced(&h_vertices);
    let pos = |v: usize| h_vertices.binary_search(&v).expect("inside");
    let colour: Vec<usize> = h_vertices
        .iter()
        .map(|&v| {
            let p = &prof[ball.binary_search(&v).expect("inside the ball")];
            1 + kinds.binary_search(p).expect("listed")
        })
        .collect();
    let want = span - 3 * t1;
    let path = geodesic_within(&h_graph, pos(z_star), want - 1, &vec![true; h_graph.n()]).ok_or(Error::GeodesicTooShort {
        need: want,
        have: ball_within(&h_graph, &[pos(z_star)], span, &vec![true; h_graph.n()]).len(),
    })?;
    let split = geodesic_split(&h_graph, pos(z_star), &colour, &path, t1, k0, 3)?;
    let back = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&i| h_vertices[i]).collect() };
    let q = back(&split.q);
    let y = split.colors.len();

    let core = ball_within(g, &q, 3 * (y - 1) + 1, &xm);
    let core_mask = mask(n, &core);
    let sinks = entry.sinks();
    let mut o = core.clone();
    o.extend(
        g.set_neighbors(&core)
            .into_iter()
            .filter(|&x| xm[x] && !core_mask[x] && (entry.model[x].len() >= 2 || sinks[x])),
    );
    let o = normalize(o);
    let o_mask = mask(n, &o);
    let regions: Vec<Vec<bool>> = (0..params.h + params.k)
        .map(|a| {
            let near = ball_within(g, &back(&split.parts[a * (6 * t1 + 1)]), 3 * y, &xm);
            let mut m = vec![false; n];
            for v in near.into_iter().filter(|&v| o_mask[v]) {
                m[v] = true;
            }
            m
        })
        .collect();
    let around = g.set_neighbors(&o);
    let cut: Vec<usize> = around.iter().copied().filter(|&x| xm[x]).collect();
    let u_plus: VertexSet = around.into_iter().filter(|&x| !xm[x]).collect();

    let mut sk = skeleton(entry, &o, &[], &cut, u_plus, params.d);
    let members = |m: &Vec<bool>| -> Vec<usize> { (0..n).filter(|&v| m[v]).collect() };
    let plan = Plan {
        first_region: Some(regions[0].clone()),
        closing: regions[..params.h + params.k - 1]
            .iter()
            .map(|m| model_union(entry, &members(m)))
            .collect(),
        regions,
    };
    install(entry, original, params, &mut sk, &plan)?;
    Ok(finish(sk))
}
