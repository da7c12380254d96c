// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line to
//! stdout (outside the test harness capture) and fails on FAIL.

mod support;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use defcol::defect::{decide_defective, level_coloring, verify_coloring};
use defcol::depth::connected_tree_depth;
use defcol::graph::{closure, complete, complete_bipartite, ct, ct_size, path, RootedTree};
use defcol::minor::{has_minor, has_minor_with, MinorMode, MinorOptions, MinorOutcome};
use defcol::scheme::certify::CONDITIONS;
use defcol::scheme::constants::Magnitude;
use defcol::scheme::instances::{caterpillar, star_of_balls};
use defcol::scheme::{
    build_scheme, certify_entry, certify_initial, certify_scheme, color_from_scheme, geodesic_split, n_rec,
    paper_constants, CertReport, SchemeEntry, SchemeParams, Verdict,
};
use defcol::Graph;

use support::*;

type Outcome = Result<String, String>;

fn report(n: usize, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = body();
    let took = start.elapsed();
    let out = match out {
        Ok(msg) if took > limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
        o => o,
    };
    let line = match &out {
        Ok(msg) => format!("criterion {n}: PASS ({msg}; {took:.2?})"),
        Err(msg) => format!("criterion {n}: FAIL ({msg}; {took:.2?})"),
    };
    let mut so = std::io::stdout().lock();
    let _ = writeln!(so, "{line}");
    let _ = so.flush();
    if let Err(msg) = out {
        panic!("criterion {n} failed: {msg}");
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_ct_family() {
    report(1, secs(5), || {
        let mut checked = 0;
        for h in 1..=4usize {
            for k in 1..=3usize {
                let g = ct(h, k).map_err(|e| e.to_string())?;
                let expect = if k == 1 { h } else { (k.pow(h as u32) - 1) / (k - 1) };
                ensure!(g.n() == expect, "ct({h},{k}) has {} vertices, expected {expect}", g.n());
                ensure!(ct_size(h, k) == expect as u128, "ct_size({h},{k}) = {}", ct_size(h, k));
                let w = brute_clique(&g);
                ensure!(w == h, "ct({h},{k}) has clique number {w}");
                ensure!(g.clique_number() == h, "library clique number of ct({h},{k}) is {}", g.clique_number());
                checked += 1;
            }
        }
        Ok(format!("{checked} (h,k) pairs"))
    });
}

#[test]
fn criterion_02_lower_bound() {
    report(2, secs(30), || {
        for (h, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let g = ct(h, k).map_err(|e| e.to_string())?;
            let r = decide_defective(&g, h - 1, k - 1).map_err(|e| format!("ct({h},{k}): {e}"))?;
            ensure!(!r.feasible, "ct({h},{k}) reported colourable: {:?}", r.coloring);
            // control: root coloured like its children has defect exactly k
            let ok = decide_defective(&g, h - 1, k).map_err(|e| e.to_string())?;
            let c = ok.coloring.ok_or(format!("ct({h},{k}) with defect {k} reported infeasible"))?;
            ensure!(independent_defect(&g, &c.colors) <= k, "control colouring of ct({h},{k}) is wrong");
        }
        Ok("4 instances infeasible, defect k controls feasible".into())
    });
}

#[test]
fn criterion_03_level_coloring() {
    report(3, secs(1), || {
        let mut checked = 0;
        for h in 2..=5usize {
            for k in 1..=3usize {
                let tree = RootedTree::balanced(h - 1, k, 1 << 20).map_err(|e| e.to_string())?;
                let g = closure(&tree);
                let c = level_coloring(&tree);
                ensure!(c.colors.len() == g.n(), "colouring length mismatch at ({h},{k})");
                ensure!(c.k == h - 1, "level colouring of height {} uses palette {}", h - 1, c.k);
                let used: BTreeSet<usize> = c.colors.iter().copied().collect();
                ensure!(used.len() == h - 1 && used.iter().all(|&x| (1..h).contains(&x)), "colours {used:?} at ({h},{k})");
                // independent defect-0 check: no edge is monochromatic
                let bad = g.edges().into_iter().find(|&(u, v)| c.colors[u] == c.colors[v]);
                ensure!(bad.is_none(), "monochromatic edge {bad:?} at ({h},{k})");
                let lib = verify_coloring(&g, &c, 0).map_err(|e| e.to_string())?;
                ensure!(lib.is_none(), "verify_coloring flags vertex {lib:?} at ({h},{k})");
                checked += 1;
            }
        }
        Ok(format!("{checked} trees"))
    });
}

#[test]
fn criterion_04_depth_metrics() {
    report(4, secs(600), || {
        for h in 1..=4usize {
            for k in 1..=2usize {
                let g = ct(h, k).map_err(|e| e.to_string())?;
                let r = connected_tree_depth(&g).map_err(|e| e.to_string())?;
                ensure!(r.ctd == h, "ctd(ct({h},{k})) = {}", r.ctd);
                ensure!(r.verify(&g), "witness for ct({h},{k}) does not verify");
            }
        }
        let mut graphs = 0usize;
        for n in 1..=6usize {
            let best = tree_embedding_heights(n);
            let m = n * (n - 1) / 2;
            for mask in 0..1u64 << m {
                if !connected_mask(&adjacency(n, mask), (1u32 << n) - 1) {
                    continue;
                }
                let g = graph_from_mask(n, mask);
                let r = connected_tree_depth(&g).map_err(|e| e.to_string())?;
                let oracle = best[mask as usize] as usize;
                ensure!(r.ctd == oracle, "n={n} mask={mask:#x}: ctd {} vs oracle {oracle}", r.ctd);
                ensure!(r.verify(&g), "n={n} mask={mask:#x}: witness does not verify");
                ensure!(r.witness.height() == r.ctd, "n={n} mask={mask:#x}: witness height {}", r.witness.height());
                graphs += 1;
            }
        }
        Ok(format!("ct grid exact; {graphs} labelled connected graphs agree"))
    });
}

#[test]
fn criterion_05_minor_engine() {
    report(5, secs(600), || {
        for t in 2..=4usize {
            let host = complete_bipartite(t, t);
            let m = has_minor(&host, &complete(t + 1)).map_err(|e| e.to_string())?;
            let m = m.ok_or_else(|| format!("K_{{{t},{t}}} reported without a K_{} minor", t + 1))?;
            ensure!(model_ok(&host, &complete(t + 1), &m.branch_sets), "K_{{{t},{t}}}: model does not verify");
        }
        let patterns: Vec<(usize, u64)> = (1..=4).flat_map(|p| graph_classes(p).into_iter().map(move |m| (p, m))).collect();
        let opts = MinorOptions {
            mode: MinorMode::Exhaustive,
            ..MinorOptions::default()
        };
        let mut hosts = 0usize;
        let mut calls = 0usize;
        for n in 1..=7usize {
            for hmask in graph_classes(n) {
                let host = graph_from_mask(n, hmask);
                let minors = minors_by_partition(n, hmask, 4);
                for &(p, pmask) in &patterns {
                    let pattern = graph_from_mask(p, pmask);
                    let expect = minors.contains(&(p, canonical(p, pmask)));
                    let got = match has_minor_with(&host, &pattern, &opts).map_err(|e| e.to_string())? {
                        MinorOutcome::Present(m) => {
                            ensure!(model_ok(&host, &pattern, &m.branch_sets), "n={n} host={hmask:#x} pattern=({p},{pmask:#x}): bad model");
                            true
                        }
                        MinorOutcome::Absent => false,
                        other => return Err(format!("n={n} host={hmask:#x}: inconclusive {other:?}")),
                    };
                    ensure!(got == expect, "n={n} host={hmask:#x} pattern=({p},{pmask:#x}): engine {got}, oracle {expect}");
                    calls += 1;
                }
                hosts += 1;
            }
        }
        Ok(format!("K_{{t,t}} models found; {hosts} hosts x {} patterns = {calls} agreements", patterns.len()))
    });
}

/// Disjoint connected branch sets with every pattern edge realised.
fn model_ok(host: &Graph, pattern: &Graph, sets: &[Vec<usize>]) -> bool {
    if sets.len() != pattern.n() {
        return false;
    }
    let mut seen = HashSet::new();
    for s in sets {
        if s.is_empty() || !s.iter().all(|&v| v < host.n() && seen.insert(v)) {
            return false;
        }
        if host.connected_within(s).is_err() {
            return false;
        }
    }
    pattern.edges().into_iter().all(|(a, b)| sets[a].iter().any(|&x| sets[b].iter().any(|&y| host.has_edge(x, y))))
}

fn practical(r: usize, d: usize, l0: usize) -> SchemeParams {
    SchemeParams { h: 3, k: 2, r, d, n: 12, l0, t: 5 }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn criterion_06_scheme_freeze() {
    report(6, secs(1), || {
        let params = practical(2, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut graphs = vec![Graph::empty(1), complete(12), path(12), ct(3, 2).unwrap(), complete_bipartite(6, 6)];
        for i in 0..20 {
            let n = 1 + i % params.n;
            graphs.push(random_graph(&mut rng, n, 0.4));
        }
        for (i, g) in graphs.iter().enumerate() {
            let scheme = build_scheme(g, &params).map_err(|e| format!("graph {i}: {e}"))?;
            ensure!(scheme.len() == 1, "graph {i}: {} entries", scheme.len());
            let e = &scheme[0];
            ensure!(e.g == *g && e.arcs.is_empty() && e.hyperedges.is_empty(), "graph {i}: entry is not the bare input");
            ensure!(certify_initial(e, g) == Verdict::Pass, "graph {i}: initial entry rejected");
            let rep = certify_entry(e, e, &params, g);
            for c in CONDITIONS {
                ensure!(rep.verdict(c) == Some(&Verdict::Pass), "graph {i}: {c} is {:?}", rep.verdict(c));
            }
            let col = color_from_scheme(&scheme, &params, g).map_err(|e| format!("graph {i}: {e}"))?;
            ensure!(col.colors.iter().all(|&c| c == 1), "graph {i}: colouring {:?} is not all ones", col.colors);
        }
        Ok(format!("{} graphs frozen, all twelve conditions pass", graphs.len()))
    });
}

/// The end-to-end corpus: name, graph, parameters.
fn corpus() -> Vec<(String, Graph, SchemeParams)> {
    let mut out = Vec::new();
    for pieces in [9, 10, 12, 15, 20, 25, 30] {
        out.push((format!("windmill-1x{pieces}"), star_of_balls(1, pieces, 2), practical(2, 2, 2)));
    }
    for pieces in [9, 12, 20] {
        out.push((format!("windmill-2x{pieces}"), star_of_balls(2, pieces, 2), practical(3, 3, 2)));
    }
    for (s, l) in [(2, 6), (2, 7), (2, 8), (3, 5), (3, 6), (3, 7), (4, 5), (4, 6), (5, 5), (6, 5)] {
        out.push((format!("caterpillar-{s}x{l}-d2"), caterpillar(s, l), practical(2, 2, 1)));
    }
    for (s, l) in [(3, 7), (4, 6)] {
        out.push((format!("caterpillar-{s}x{l}-d3"), caterpillar(s, l), practical(2, 3, 1)));
    }
    out
}

#[test]
fn criterion_07_scheme_end_to_end() {
    report(7, secs(300), || {
        let corpus = corpus();
        ensure!(corpus.len() >= 20, "corpus has {} instances", corpus.len());
        let mut failures = Vec::new();
        let mut steps = 0;
        for (name, g, p) in &corpus {
            ensure!(p.h == 3 && p.k == 2 && p.r <= 6 && p.d <= 4 && p.n <= 12, "{name}: parameters out of range");
            let res = (|| -> Outcome {
                let scheme = build_scheme(g, p).map_err(|e| format!("build: {e}"))?;
                ensure!(scheme.len() >= 2, "no step taken");
                ensure!(scheme.last().unwrap().n() <= p.n, "last entry too large");
                let cert = certify_scheme(&scheme, p, g);
                ensure!(cert.initial == Verdict::Pass, "initial entry: {:?}", cert.initial);
                for (i, rep) in cert.pairs.iter().enumerate() {
                    ensure!(rep.is_clean(), "pair {i}: {}", rep.summary());
                }
                let col = color_from_scheme(&scheme, p, g).map_err(|e| format!("colour: {e}"))?;
                ensure!(col.colors.len() == g.n() && col.colors.iter().all(|&c| (1..p.h).contains(&c)), "colours outside [1, h-1]");
                let worst = independent_defect(g, &col.colors);
                ensure!(worst <= p.d_star(), "defect {worst} > {}", p.d_star());
                let lib = verify_coloring(g, &col, p.d_star()).map_err(|e| e.to_string())?;
                ensure!(lib.is_none(), "verify_coloring flags {lib:?}");
                Ok(format!("{}", scheme.len() - 1))
            })();
            match res {
                Ok(s) => steps += s.parse::<usize>().unwrap(),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        ensure!(failures.is_empty(), "{}", failures.join(" | "));
        Ok(format!("{} instances, {steps} certified steps", corpus.len()))
    });
}

fn independent_defect(g: &Graph, colors: &[usize]) -> usize {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&&w| colors[w] == colors[v]).count())
        .max()
        .unwrap_or(0)
}

fn statuses(r: &CertReport) -> Vec<(String, &'static str)> {
    r.conditions
        .iter()
        .map(|c| {
            let s = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail(_) => "fail",
                Verdict::Skipped { .. } => "skipped",
            };
            (c.condition.clone(), s)
        })
        .collect()
}

/// Recomputed from scratch: multi-vertex model, arc head, or stored sink.
fn special_vertices(e: &SchemeEntry) -> Vec<bool> {
    (0..e.n())
        .map(|v| e.model[v].len() >= 2 || e.arcs.iter().any(|a| a.1 == v) || e.hyperedges.iter().any(|q| q.sink == v))
        .collect()
}

/// Applies `mutate` to the last entry and requires that exactly `target`
/// flips from pass to fail, with a witness accepted by `replay`.
fn mutation_flips(
    target: &str,
    scheme: &[SchemeEntry],
    p: &SchemeParams,
    g: &Graph,
    mutate: impl FnOnce(&mut SchemeEntry),
    replay: impl FnOnce(&SchemeEntry, &[usize]) -> bool,
) -> Outcome {
    let (prev, next) = (&scheme[scheme.len() - 2], &scheme[scheme.len() - 1]);
    let before = certify_entry(prev, next, p, g);
    ensure!(before.is_clean(), "{target}: baseline not clean: {}", before.summary());
    let mut m = next.clone();
    mutate(&mut m);
    let after = certify_entry(prev, &m, p, g);
    let (b, a) = (statuses(&before), statuses(&after));
    let changed: Vec<&str> = b.iter().zip(&a).filter(|(x, y)| x.1 != y.1).map(|(x, _)| x.0.as_str()).collect();
    ensure!(changed == [target], "{target}: verdicts changed for {changed:?} ({})", after.summary());
    let Some(Verdict::Fail(w)) = after.verdict(target) else {
        return Err(format!("{target}: not a failure"));
    };
    ensure!(replay(&m, &w.vertices), "{target}: witness {} {:?} does not replay", w.clause, w.vertices);
    Ok(format!("{target} via {}", w.clause))
}

#[test]
fn criterion_08_mutation_sensitivity() {
    report(8, secs(60), || {
        let g = star_of_balls(1, 9, 2);
        let p = practical(2, 2, 2);
        let scheme = build_scheme(&g, &p).map_err(|e| e.to_string())?;
        ensure!(scheme.len() == 2, "windmill built {} entries", scheme.len());
        let last = scheme.last().unwrap();
        let vstar = (0..last.n()).find(|&v| last.model[v].len() >= 2).ok_or("no merged vertex")?;
        let hub = 0;
        // plain piece vertices: single models, not the hub; pieces are edges
        let plain: Vec<usize> = (0..last.n()).filter(|&v| v != hub && v != vstar).collect();
        let adjacent_pair = plain
            .iter()
            .flat_map(|&a| plain.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a < b && last.g.has_edge(a, b))
            .ok_or("no piece edge")?;
        let non_edge = plain
            .iter()
            .flat_map(|&a| plain.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a != b && !last.g.has_edge(a, b))
            .ok_or("no non-edge")?;
        let mut done = Vec::new();

        done.push(mutation_flips(
            "D4",
            &scheme,
            &p,
            &g,
            |e| {
                e.arcs.push(non_edge);
                e.arcs.sort_unstable();
            },
            |e, w| w.len() == 2 && e.arcs.contains(&(w[0], w[1])) && !e.g.has_edge(w[0], w[1]),
        )?);

        done.push(mutation_flips(
            "D5",
            &scheme,
            &p,
            &g,
            |e| e.arcs.retain(|&a| a != (hub, vstar)),
            |e, w| {
                e.hyperedges.iter().any(|q| {
                    q.s == w && {
                        let sinks: Vec<usize> = q.s.iter().copied().filter(|&v| q.s.iter().all(|&u| u == v || e.arcs.contains(&(u, v)))).collect();
                        sinks != [q.sink]
                    }
                })
            },
        )?);

        done.push(mutation_flips(
            "D6",
            &scheme,
            &p,
            &g,
            |e| {
                e.arcs.push((hub, adjacent_pair.0));
                e.arcs.push((hub, adjacent_pair.1));
                e.arcs.sort_unstable();
            },
            |e, w| {
                let sp = special_vertices(e);
                w.len() == 2 && e.g.has_edge(w[0], w[1]) && sp[w[0]] && sp[w[1]]
            },
        )?);

        let extra = plain[0];
        done.push(mutation_flips(
            "D8",
            &scheme,
            &p,
            &g,
            |e| {
                let m = e.step_meta.as_mut().unwrap();
                for s in [&mut m.u, &mut m.u_plus] {
                    s.push(extra);
                    s.sort_unstable();
                }
            },
            |e, w| {
                let m = e.step_meta.as_ref().unwrap();
                let expect: Vec<usize> = m.u_plus.iter().copied().filter(|&x| e.g.degree(x) > p.d).collect();
                w == m.u.as_slice() && expect != m.u
            },
        )?);

        done.push(d12_mutation()?);
        Ok(done.join(", "))
    });
}

/// Caterpillar scheme with an extra arc from a leaf into a spine vertex of
/// degree above r, chosen so that no other condition notices.
fn d12_mutation() -> Outcome {
    let g = caterpillar(3, 5);
    let p = practical(2, 2, 1);
    let scheme = build_scheme(&g, &p).map_err(|e| e.to_string())?;
    ensure!(scheme.len() >= 2, "caterpillar built {} entries", scheme.len());
    let last = scheme.last().unwrap();
    let sp = special_vertices(last);
    let mut tried = Vec::new();
    for s in 0..last.n() {
        if sp[s] || last.g.degree(s) <= p.r || last.g.neighbors(s).iter().any(|&x| sp[x]) {
            continue;
        }
        if last.arcs.iter().any(|a| a.0 == s) {
            continue;
        }
        for &leaf in last.g.neighbors(s) {
            if last.g.degree(leaf) != 1 || sp[leaf] {
                continue;
            }
            let res = mutation_flips(
                "D12",
                &scheme,
                &p,
                &g,
                |e| {
                    e.arcs.push((leaf, s));
                    e.arcs.sort_unstable();
                },
                |e, w| w.len() == 1 && special_vertices(e)[w[0]] && e.g.degree(w[0]) > p.r,
            );
            match res {
                Ok(m) => return Ok(m),
                Err(e) => tried.push(e),
            }
        }
    }
    Err(format!("no D12 mutation isolates the condition: {}", tried.join(" | ")))
}

fn bfs_ball(g: &Graph, sources: &[usize], radius: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..g.n()).filter(|&v| dist[v] != usize::MAX).collect()
}

/// Spine path from vertex 0 plus random branches, and extra edges only
/// between vertices whose distances to 0 differ by at most one, so the
/// spine stays a geodesic and depths never exceed `n`.
fn geodesic_instance(rng: &mut ChaCha8Rng, n: usize, spine: usize) -> (Graph, Vec<usize>) {
    let extra = rng.gen_range(0..=2 * spine);
    let total = spine + extra;
    let mut depth = Vec::with_capacity(total);
    let mut edges = Vec::new();
    for i in 0..spine {
        depth.push(i);
        if i > 0 {
            edges.push((i - 1, i));
        }
    }
    for v in spine..total {
        let candidates: Vec<usize> = (0..v).filter(|&u| depth[u] < n).collect();
        let u = candidates[rng.gen_range(0..candidates.len())];
        depth.push(depth[u] + 1);
        edges.push((u, v));
    }
    for _ in 0..rng.gen_range(0..=total) {
        let (a, b) = (rng.gen_range(0..total), rng.gen_range(0..total));
        if a != b && depth[a].abs_diff(depth[b]) <= 1 && !edges.contains(&(a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    let g = Graph::from_edges(total, &edges).unwrap();
    (g, (0..spine).collect())
}

#[test]
fn criterion_09_geodesic_split() {
    report(9, secs(60), || {
        let direct = |x: u128, y: u128, z: u128| -> u128 {
            let mut n = y + z;
            for i in 2..=x {
                n = y * (n - (i - 1) * z) + i * z;
            }
            n
        };
        ensure!(n_rec(1, 2, 1) == Some(3) && direct(1, 2, 1) == 3, "n(1,2,1) = {:?}", n_rec(1, 2, 1));
        ensure!(n_rec(2, 2, 1) == Some(6) && direct(2, 2, 1) == 6, "n(2,2,1) = {:?}", n_rec(2, 2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut sizes = HashMap::new();
        for inst in 0..100 {
            let (t, k, l) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize), rng.gen_range(1..=2usize));
            let n = direct(t as u128, k as u128, l as u128) as usize;
            ensure!(n_rec(t, k, l) == Some(n as u128), "n({t},{k},{l}) mismatch");
            let (g, p) = geodesic_instance(&mut rng, n, n - t * l);
            let f: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(1..=t)).collect();
            let s = geodesic_split(&g, 0, &f, &p, t, k, l).map_err(|e| format!("instance {inst} ({t},{k},{l}): {e}"))?;
            // Q is a contiguous subpath of P
            let start = p.iter().position(|&v| Some(&v) == s.q.first()).ok_or(format!("instance {inst}: Q empty or off P"))?;
            ensure!(p.get(start..start + s.q.len()) == Some(&s.q[..]), "instance {inst}: Q is not a subpath");
            // S nonempty inside [t]
            let set: BTreeSet<usize> = s.colors.iter().copied().collect();
            ensure!(!set.is_empty() && set.iter().all(|&c| (1..=t).contains(&c)), "instance {inst}: S = {set:?}");
            // first conclusion
            let near = bfs_ball(&g, &s.q, set.len() * l);
            ensure!(near.iter().all(|&u| set.contains(&f[u])), "instance {inst}: colour outside S near Q");
            // second conclusion
            ensure!(s.parts.len() == k, "instance {inst}: {} parts", s.parts.len());
            ensure!(s.parts.iter().all(|q| !q.is_empty() && q.len() == s.parts[0].len()), "instance {inst}: unequal parts");
            ensure!(s.parts.concat() == s.q, "instance {inst}: parts do not tile Q");
            for (i, part) in s.parts.iter().enumerate() {
                let seen: BTreeSet<usize> = bfs_ball(&g, part, (set.len() - 1) * l).into_iter().map(|u| f[u]).collect();
                ensure!(set.is_subset(&seen), "instance {inst}: part {i} sees {seen:?}, not all of {set:?}");
            }
            *sizes.entry(set.len()).or_insert(0) += 1;
        }
        let mut sizes: Vec<_> = sizes.into_iter().collect();
        sizes.sort();
        Ok(format!("100 instances verified, |S| histogram {sizes:?}"))
    });
}

#[test]
fn criterion_10_constants() {
    report(10, secs(1), || {
        let exponent = |h: usize, k: usize, r: usize| -> BigUint {
            let half = 1usize << (r - 1);
            BigUint::from(h - 2) * BigUint::from(r + 1).pow(half as u32) * BigUint::from(k + h) * BigUint::from(half)
        };
        let c = paper_constants(3, 1, 2, 2, 1, 1);
        ensure!(c.t_exponent == Magnitude::Exact(BigUint::from(72u32)), "t exponent {}", c.t_exponent);
        ensure!(exponent(3, 1, 2) == BigUint::from(72u32), "direct exponent differs");
        ensure!(c.t == Magnitude::Exact(BigUint::from(1u32) << 74), "t = {}", c.t);
        let mut grid = Vec::new();
        for h in [3, 4] {
            for k in [1, 2] {
                for r in [2, 3] {
                    let c = paper_constants(h, k, r, 2, 1, 1);
                    ensure!(c.t_exponent.exact() == Some(&exponent(h, k, r)), "t exponent at ({h},{k},{r})");
                    grid.push(((h, k, r), c));
                }
            }
        }
        let mut pairs = 0;
        for (a, ca) in &grid {
            for (b, cb) in &grid {
                if a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2 {
                    ensure!(cb.t_at_least(ca) == Some(true), "t not monotone from {a:?} to {b:?}");
                    ensure!(cb.n_at_least(ca) == Some(true), "N not monotone from {a:?} to {b:?}: {:?}", cb.n_at_least(ca));
                    pairs += 1;
                }
            }
        }
        Ok(format!("exponent 72, t = 2^74; {pairs} ordered grid pairs monotone in t and N"))
    });
}
