// SPDX-License-Identifier: Apache-2.0

//! Defective elimination schemes: entries, steps, certifier and colourer.
//!
//! Every entry stores its vertices with dense local ids. A vertex is
//! identified across entries by its model (the set of original vertices it
//! stands for); a vertex whose model is a single original vertex `x` is
//! treated as `x` itself.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub mod build;
pub mod certify;
pub mod color;
pub mod constants;
pub mod geodesic;
pub mod homo;
pub mod instances;
pub mod steps;
pub mod types;

pub use build::build_scheme;
pub use certify::{certify_entry, certify_initial, certify_scheme, CertReport, SchemeCert, Verdict, Witness};
pub use color::color_from_scheme;
pub use constants::{n_rec, paper_constants, ConstantsTable};
pub use geodesic::{geodesic_split, GeodesicSplit};
pub use homo::{find_homogeneous, verify_homogeneous, Homogeneous};
pub use steps::{contract_step, del_step};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub h: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub l0: usize,
    pub t: usize,
}

impl SchemeParams {
    pub fn validate(&self) -> Result<()> {
        if self.h < 3 {
            return Err(Error::Precondition(format!("h = {} < 3", self.h)));
        }
        if self.d < 2 {
            return Err(Error::Precondition(format!("d = {} < 2", self.d)));
        }
        for (name, v) in [("k", self.k), ("r", self.r), ("N", self.n), ("l0", self.l0), ("t", self.t)] {
            if v == 0 {
                return Err(Error::Precondition(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Defect bound of the greedy colouring.
    pub fn d_star(&self) -> usize {
        2 * self.n + self.d
    }
}

/// Labelled hyperedge `(S, j)` with its sink.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperedge {
    pub s: VertexSet,
    pub j: usize,
    pub sink: usize,
}

/// `(q, U, U+)` of the step that produced an entry, in that entry's ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepMeta {
    pub q: usize,
    #[serde(rename = "U")]
    pub u: VertexSet,
    #[serde(rename = "U_plus")]
    pub u_plus: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeEntry {
    pub g: Graph,
    /// Original vertices represented by each vertex.
    pub model: Vec<VertexSet>,
    pub arcs: Vec<(usize, usize)>,
    pub hyperedges: Vec<Hyperedge>,
    /// Per hyperedge, disjoint connected vertex sets of the original graph.
    pub witnesses: Vec<Vec<VertexSet>>,
    pub witness_links: Vec<Vec<VertexSet>>,
    pub step_meta: Option<StepMeta>,
}

impl SchemeEntry {
    /// `(G, singletons, ∅, ∅, ∅, ∅)`.
    pub fn initial(g: &Graph) -> Self {
        SchemeEntry {
            g: g.clone(),
            model: (0..g.n()).map(|v| vec![v]).collect(),
            arcs: vec![],
            hyperedges: vec![],
            witnesses: vec![],
            witness_links: vec![],
            step_meta: None,
        }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Original id when the vertex stands for a single original vertex.
    pub fn original(&self, v: usize) -> Option<usize> {
        match self.model[v].as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn is_head(&self, v: usize) -> bool {
        self.arcs.iter().any(|&(_, b)| b == v)
    }

    pub fn heads(&self) -> Vec<bool> {
        let mut out = vec![false; self.n()];
        for &(_, b) in &self.arcs {
            if b < out.len() {
                out[b] = true;
            }
        }
        out
    }

    pub fn sinks(&self) -> Vec<bool> {
        let mut out = vec![false; self.n()];
        for e in &self.hyperedges {
            if e.sink < out.len() {
                out[e.sink] = true;
            }
        }
        out
    }

    /// Multi-vertex model, head, or sink.
    pub fn special(&self) -> Vec<bool> {
        let heads = self.heads();
        let sinks = self.sinks();
        (0..self.n())
            .map(|v| self.model[v].len() >= 2 || heads[v] || sinks[v])
            .collect()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    /// Original vertex to the local vertex whose model contains it.
    pub fn owner_of_original(&self, original_n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; original_n];
        for (v, m) in self.model.iter().enumerate() {
            for &x in m {
                if x < original_n {
                    out[x] = Some(v);
                }
            }
        }
        out
    }

    pub fn index_by_model(&self) -> HashMap<&VertexSet, usize> {
        self.model.iter().enumerate().map(|(v, m)| (m, v)).collect()
    }

    /// Union of all models.
    pub fn covered(&self) -> BTreeSet<usize> {
        self.model.iter().flatten().copied().collect()
    }

    /// Same tuple: graph, models, arcs and hyperedges (the frozen case).
    pub fn same_tuple(&self, other: &SchemeEntry) -> bool {
        let sorted = |e: &SchemeEntry| {
            let mut h: Vec<(VertexSet, usize)> = e.hyperedges.iter().map(|q| (q.s.clone(), q.j)).collect();
            h.sort();
            h
        };
        self.g == other.g
            && self.model == other.model
            && self.arcs == other.arcs
            && sorted(self) == sorted(other)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = EntryDoc {
            graph: GraphDoc {
                n: self.g.n(),
                edges: self.g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            },
            model: self
                .model
                .iter()
                .enumerate()
                .map(|(v, m)| (v.to_string(), m.clone()))
                .collect(),
            arcs: self.arcs.iter().map(|&(u, v)| [u, v]).collect(),
            hyperedges: self.hyperedges.clone(),
            witnesses: indexed(&self.witnesses),
            witness_links: indexed(&self.witness_links),
            step_meta: self.step_meta.clone(),
        };
        serde_json::to_value(doc).expect("serialisable")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let doc: EntryDoc = serde_json::from_value(v)?;
        let mut g = Graph::empty(doc.graph.n);
        for [u, v] in doc.graph.edges {
            g.try_add_edge(u, v)?;
        }
        let mut model = vec![Vec::new(); g.n()];
        for (k, m) in doc.model {
            let v = parse_key(&k)?;
            if v >= g.n() {
                return Err(Error::OutOfRange { id: v, n: g.n() });
            }
            model[v] = crate::graph::normalize(m);
        }
        let mut arcs: Vec<(usize, usize)> = doc.arcs.into_iter().map(|[u, v]| (u, v)).collect();
        arcs.sort_unstable();
        arcs.dedup();
        let m = doc.hyperedges.len();
        Ok(SchemeEntry {
            g,
            model,
            arcs,
            hyperedges: doc.hyperedges,
            witnesses: unindexed(doc.witnesses, m)?,
            witness_links: unindexed(doc.witness_links, m)?,
            step_meta: doc.step_meta,
        })
    }
}

fn parse_key(k: &str) -> Result<usize> {
    k.parse().map_err(|_| Error::Parse {
        offset: 0,
        msg: format!("key {k:?} is not an integer"),
    })
}

fn indexed(v: &[Vec<VertexSet>]) -> BTreeMap<String, Vec<VertexSet>> {
    v.iter()
        .enumerate()
        .map(|(i, x)| (i.to_string(), x.clone()))
        .collect()
}

fn unindexed(m: BTreeMap<String, Vec<VertexSet>>, len: usize) -> Result<Vec<Vec<VertexSet>>> {
    let mut out = vec![Vec::new(); len];
    for (k, v) in m {
        let i = parse_key(&k)?;
        if i >= len {
            return Err(Error::OutOfRange { id: i, n: len });
        }
        out[i] = v;
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    graph: GraphDoc,
    model: BTreeMap<String, VertexSet>,
    arcs: Vec<[usize; 2]>,
    hyperedges: Vec<Hyperedge>,
    witnesses: BTreeMap<String, Vec<VertexSet>>,
    witness_links: BTreeMap<String, Vec<VertexSet>>,
    step_meta: Option<StepMeta>,
}

/// JSON array of entries.
pub fn scheme_to_json(scheme: &[SchemeEntry]) -> String {
    let arr: Vec<serde_json::Value> = scheme.iter().map(SchemeEntry::to_json_value).collect();
    serde_json::to_string(&arr).expect("serialisable")
}

pub fn scheme_from_json(s: &str) -> Result<Vec<SchemeEntry>> {
    let arr: Vec<serde_json::Value> = serde_json::from_str(s).map_err(|e| Error::Parse {
        offset: crate::io::offset_of(s, e.line(), e.column()),
        msg: e.to_string(),
    })?;
    arr.into_iter().map(SchemeEntry::from_json_value).collect()
}
