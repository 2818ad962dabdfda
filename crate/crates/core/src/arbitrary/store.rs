//! Stored edges with a sorted per-vertex index, for closing wedges at the
//! arrival of a new edge.

use rustc_hash::FxHashMap;

use crate::graph::{Edge, VertexId};

#[derive(Debug)]
pub(crate) struct EdgeStore<T> {
    adj: FxHashMap<VertexId, Vec<VertexId>>,
    data: FxHashMap<Edge, T>,
}

impl<T> Default for EdgeStore<T> {
    fn default() -> Self {
        EdgeStore { adj: FxHashMap::default(), data: FxHashMap::default() }
    }
}

impl<T> EdgeStore<T> {
    pub(crate) fn len(&self) -> usize {
        self.data.len()
    }

    fn link(&mut self, a: VertexId, b: VertexId) {
        let list = self.adj.entry(a).or_default();
        if let Err(i) = list.binary_search(&b) {
            list.insert(i, b);
        }
    }

    fn unlink(&mut self, a: VertexId, b: VertexId) {
        if let Some(list) = self.adj.get_mut(&a) {
            if let Ok(i) = list.binary_search(&b) {
                list.remove(i);
            }
            if list.is_empty() {
                self.adj.remove(&a);
            }
        }
    }

    pub(crate) fn insert(&mut self, e: Edge, value: T) {
        if self.data.insert(e, value).is_none() {
            self.link(e.lo(), e.hi());
            self.link(e.hi(), e.lo());
        }
    }

    pub(crate) fn remove(&mut self, e: Edge) -> Option<T> {
        let value = self.data.remove(&e)?;
        self.unlink(e.lo(), e.hi());
        self.unlink(e.hi(), e.lo());
        Some(value)
    }

    /// Calls `f(w, uw, vw)` for every stored wedge `u - w - v`, found by a
    /// sorted merge of the two neighbor lists. Returns the merge length.
    pub(crate) fn for_each_closure(&self, e: Edge, mut f: impl FnMut(VertexId, &T, &T)) -> usize {
        let empty = Vec::new();
        let (u, v) = e.endpoints();
        let a = self.adj.get(&u).unwrap_or(&empty);
        let b = self.adj.get(&v).unwrap_or(&empty);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = a[i];
                    f(w, &self.data[&Edge::of(u, w)], &self.data[&Edge::of(v, w)]);
                    i += 1;
                    j += 1;
                }
            }
        }
        i + j
    }
}
