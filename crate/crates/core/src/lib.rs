//! Streaming estimators for triangle and four-cycle counts, with optional
//! heavy-edge or value predictions, plus the experiment harness that drives
//! them.
//!
//! * [`adjlist`]: adjacency-list streams with a heavy/light oracle.
//! * [`value`]: adjacency-list streams with value predictions.
//! * [`arbitrary`]: arbitrary-order streams, theory and fixed-budget modes.
//! * [`fourcycle`]: four-cycles in arbitrary order.
//! * [`harness`]: parameter sweeps, synthetic graphs and CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adjlist;
pub mod arbitrary;
mod adjtrack;
mod counters;
pub mod error;
pub mod fourcycle;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod value;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder, VertexId, VertexOrder};
