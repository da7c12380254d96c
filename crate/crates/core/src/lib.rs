// SPDX-License-Identifier: Apache-2.0

//! Defective colouring toolkit: CT graphs, tree-depth, minor testing, an exact
//! defect-bounded colouring solver, and elimination schemes that drive a
//! greedy (h-1)-colouring of graphs without a CT_{h,k} minor.

pub mod defect;
pub mod depth;
pub mod error;
pub mod graph;
pub mod io;
pub mod minor;
pub mod scheme;

pub use error::{Error, Result};
pub use graph::{Graph, RootedTree, VertexSet};
pub use minor::MinorModel;
