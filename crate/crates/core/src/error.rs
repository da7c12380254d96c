// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} would have {size} vertices, over the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        limit: usize,
    },
    #[error("{what}: input has {size} vertices, exact mode supports at most {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("vertex {id} out of range for a graph on {n} vertices")]
    OutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("set is not connected: {a} and {b} lie in different components")]
    NotConnected { a: usize, b: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("invalid rooted tree: {0}")]
    InvalidTree(String),
    #[error("colouring is partial: {colors} colours for {n} vertices")]
    PartialColoring { colors: usize, n: usize },
    #[error("colour {color} at vertex {vertex} outside [1, {k}]")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("search budget of {limit} nodes exhausted")]
    SearchBudget { limit: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("largest uniform bucket has {largest} members, need {needed}")]
    BucketTooSmall { largest: usize, needed: usize },
    #[error("every ball has neighbourhood inside W; use the deletion step")]
    BranchMismatch,
    #[error("geodesic too short: need {need} vertices, found {have}")]
    GeodesicTooShort { need: usize, have: usize },
    #[error("no free colour for vertex {vertex}")]
    EmptyPalette { vertex: usize },
    #[error("vertex {vertex} has {degree} neighbours of its colour, over the bound {bound}")]
    DefectExceeded { vertex: usize, degree: usize, bound: usize },
    #[error("no homogeneous structure found after {steps} steps ({vertices} vertices left)")]
    SearchFailure { steps: usize, vertices: usize },
    #[error("step {step} failed certification: {summary}")]
    CertFailed { step: usize, summary: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
