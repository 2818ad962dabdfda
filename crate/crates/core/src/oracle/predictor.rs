use super::EdgeScores;
use crate::error::{Error, Result};
use crate::graph::{per_edge_triangle_counts, Graph};

/// Exact `N_e` on `training`, keeping the top `ceil(keep_fraction * m)` edges.
pub fn snapshot_predictor(training: &Graph, keep_fraction: f64) -> Result<EdgeScores> {
    if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
        return Err(Error::param(format!("keep fraction must be in (0, 1], got {keep_fraction}")));
    }
    if training.m() == 0 {
        return Err(Error::EmptyInput);
    }
    let all = EdgeScores::from_counts(training, &per_edge_triangle_counts(training));
    let keep = (keep_fraction * training.m() as f64).ceil() as usize;
    Ok(all.top(keep.min(training.m())))
}

/// Exact `N_e` on the subgraph of the earliest `ceil(split * m)` edges by
/// timestamp (ties in canonical order).
pub fn prefix_predictor(g: &Graph, split: f64) -> Result<EdgeScores> {
    if !(split > 0.0 && split < 1.0) {
        return Err(Error::param(format!("prefix split must be in (0, 1), got {split}")));
    }
    let ts = g.timestamps().ok_or(Error::MissingTimestamps)?;
    let mut idx: Vec<usize> = (0..g.m()).collect();
    idx.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]).then(a.cmp(&b)));
    idx.truncate((split * g.m() as f64).ceil() as usize);
    let prefix = g.edge_subgraph(idx);
    Ok(EdgeScores::from_counts(&prefix, &per_edge_triangle_counts(&prefix)))
}
