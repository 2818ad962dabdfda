//! Edge-list ingestion.
//!
//! Format: one edge per line, `u v` or `u v t`, whitespace separated, with
//! `#` starting a comment line. Vertex labels are arbitrary tokens and are
//! remapped to dense ids in first-appearance order.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use super::{BuildReport, Graph, GraphBuilder, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// Timestamps are kept when every edge line carries one.
    #[default]
    Auto,
    /// A third column, if present, is ignored.
    Untimed,
    /// Every edge line must carry a timestamp.
    Timed,
}

/// Interner from original vertex labels to dense ids.
#[derive(Clone, Debug, Default)]
pub struct Labels {
    ids: HashMap<String, VertexId>,
    names: Vec<String>,
}

impl Labels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len() as VertexId;
        self.ids.insert(label.to_owned(), id);
        self.names.push(label.to_owned());
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Labels,
    pub report: BuildReport,
}

pub fn load_edge_list<R: BufRead>(source: R, format: EdgeListFormat) -> Result<LoadedGraph> {
    let mut labels = Labels::new();
    let (graph, report) = load_edge_list_with(source, format, &mut labels)?;
    Ok(LoadedGraph { graph, labels, report })
}

/// Loads an edge list sharing `labels` with earlier loads, so the same label
/// maps to the same id across a snapshot sequence. The graph covers every
/// label interned so far (vertices absent from this file are isolated).
pub fn load_edge_list_with<R: BufRead>(
    source: R,
    format: EdgeListFormat,
    labels: &mut Labels,
) -> Result<(Graph, BuildReport)> {
    let mut rows: Vec<(VertexId, VertexId, Option<f64>)> = Vec::new();
    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        if fields.len() < 2 || fields.len() > 3 {
            return Err(parse_err(format!("expected `u v [t]`, found {} fields", fields.len())));
        }
        let timestamp = match (format, fields.get(2)) {
            (EdgeListFormat::Untimed, _) => None,
            (EdgeListFormat::Timed, None) => {
                return Err(parse_err("missing timestamp".into()));
            }
            (_, Some(t)) => Some(
                t.parse::<f64>()
                    .ok()
                    .filter(|t| t.is_finite())
                    .ok_or_else(|| parse_err(format!("invalid timestamp `{t}`")))?,
            ),
            (EdgeListFormat::Auto, None) => None,
        };
        let a = labels.intern(fields[0]);
        let b = labels.intern(fields[1]);
        rows.push((a, b, timestamp));
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let all_timed = rows.iter().all(|r| r.2.is_some());
    let mut builder = GraphBuilder::new(labels.len());
    for (a, b, t) in rows {
        builder.push(a, b, if all_timed { t } else { None })?;
    }
    Ok(builder.build())
}

/// Loads every `graph_*` file in `dir`, in lexicographic order, with one
/// shared label space.
pub fn load_snapshot_dir(
    dir: &Path,
    format: EdgeListFormat,
    labels: &mut Labels,
) -> Result<Vec<(PathBuf, Graph)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("graph_"))
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Config(format!("no graph_* files in {}", dir.display())));
    }
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let reader = BufReader::new(File::open(&path)?);
        let (graph, _) = load_edge_list_with(reader, format, labels)?;
        out.push((path, graph));
    }
    Ok(out)
}
