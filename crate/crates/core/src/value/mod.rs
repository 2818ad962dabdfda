//! Adjacency-list triangle estimators driven by a value-prediction oracle.

mod erv;
mod multilayer;

pub use erv::{run_erv, ErvDraw, ErvOutcome, ErvParams};
pub use multilayer::{run_multilayer, LayerParams, LayerSummary, MultilayerOutcome};
