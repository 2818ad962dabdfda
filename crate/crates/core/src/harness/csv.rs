use std::io::Write;

use super::TrialRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 10] = [
    "model",
    "dataset",
    "space_fraction",
    "trial",
    "seed",
    "estimate",
    "exact",
    "rel_error",
    "peak_edges",
    "wall_ms",
];

/// One header line and one row per trial, LF-terminated.
pub fn emit_csv<W: Write>(records: &[TrialRecord], sink: W) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Config("no results to write".into()));
    }
    let mut w = ::csv::WriterBuilder::new().terminator(::csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.model.name().to_string(),
            r.dataset.clone(),
            r.space_fraction.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.estimate.to_string(),
            r.exact.to_string(),
            r.rel_error.to_string(),
            r.peak_edges.to_string(),
            format!("{:.3}", r.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
