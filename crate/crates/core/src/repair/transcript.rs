use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::VertexId;

/// Everything sent over one directed edge during a repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLog<F> {
    pub count: usize,
    pub payload: Vec<F>,
}

/// Per directed edge symbol counts and payloads of one repair run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript<F> {
    edges: BTreeMap<(VertexId, VertexId), EdgeLog<F>>,
}

impl<F> Default for Transcript<F> {
    fn default() -> Self {
        Self {
            edges: BTreeMap::new(),
        }
    }
}

impl<F: Copy> Transcript<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, from: VertexId, to: VertexId, symbols: &[F]) {
        let log = self.edges.entry((from, to)).or_insert_with(|| EdgeLog {
            count: 0,
            payload: Vec::new(),
        });
        log.count += symbols.len();
        log.payload.extend_from_slice(symbols);
    }

    pub fn count(&self, from: VertexId, to: VertexId) -> usize {
        self.edges.get(&(from, to)).map_or(0, |e| e.count)
    }

    pub fn edge(&self, from: VertexId, to: VertexId) -> Option<&EdgeLog<F>> {
        self.edges.get(&(from, to))
    }

    /// Edges in ascending `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, &EdgeLog<F>)> + '_ {
        self.edges.iter().map(|(&(u, v), log)| (u, v, log))
    }

    pub fn total(&self) -> usize {
        self.edges.values().map(|e| e.count).sum()
    }

    /// Total over edges whose sender satisfies `pred`.
    pub fn total_sent_by(&self, mut pred: impl FnMut(VertexId) -> bool) -> usize {
        self.edges
            .iter()
            .filter(|((u, _), _)| pred(*u))
            .map(|(_, e)| e.count)
            .sum()
    }

    pub fn merge(&mut self, other: &Self) {
        for (&key, log) in &other.edges {
            let mine = self.edges.entry(key).or_insert_with(|| EdgeLog {
                count: 0,
                payload: Vec::new(),
            });
            mine.count += log.count;
            mine.payload.extend_from_slice(&log.payload);
        }
    }

    /// A count-only transcript, for hand-built reports.
    pub fn from_counts(counts: impl IntoIterator<Item = (VertexId, VertexId, usize)>) -> Self {
        let mut t = Self::new();
        for (u, v, c) in counts {
            t.edges
                .entry((u, v))
                .or_insert_with(|| EdgeLog {
                    count: 0,
                    payload: Vec::new(),
                })
                .count += c;
        }
        t
    }
}
