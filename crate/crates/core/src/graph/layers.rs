use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, VertexId};
use crate::{Error, Result};

/// Helpers grouped by distance from the failed vertex: `layers[j - 1]` is
/// the layer at distance `j`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    center: VertexId,
    layers: Vec<Vec<VertexId>>,
}

impl LayerDecomposition {
    /// Builds a decomposition from explicit layers (outermost last).
    pub fn new(center: VertexId, mut layers: Vec<Vec<VertexId>>) -> Self {
        for layer in &mut layers {
            layer.sort_unstable();
        }
        while layers.last().is_some_and(Vec::is_empty) {
            layers.pop();
        }
        Self { center, layers }
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    /// Depth of the outermost layer.
    pub fn t(&self) -> usize {
        self.layers.len()
    }

    /// Layer at distance `j >= 1`; empty beyond `t`.
    pub fn layer(&self, j: usize) -> &[VertexId] {
        if j == 0 || j > self.layers.len() {
            return &[];
        }
        &self.layers[j - 1]
    }

    pub fn layers(&self) -> &[Vec<VertexId>] {
        &self.layers
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Number of helpers within distance `j` (the centre is not counted).
    pub fn ball(&self, j: usize) -> usize {
        self.layers.iter().take(j).map(Vec::len).sum()
    }

    /// Total number of helpers.
    pub fn d(&self) -> usize {
        self.ball(self.t())
    }

    pub fn helpers(&self) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self.layers.concat();
        all.sort_unstable();
        all
    }
}

/// Hop distances from `source`; `None` for unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn check_request(g: &Graph, failed: VertexId, d: usize) -> Result<()> {
    if failed >= g.n() {
        return Err(Error::IndexOutOfRange {
            index: failed,
            limit: g.n(),
        });
    }
    if d == 0 || d >= g.n() {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= d <= n - 1 = {}, got d = {d}",
            g.n().saturating_sub(1)
        )));
    }
    Ok(())
}

/// The `d` vertices closest to `failed`: every vertex at distance below `t`
/// plus the smallest ids at distance `t`, where `t` is the least depth whose
/// ball holds `d` vertices.
pub fn select_helpers(g: &Graph, failed: VertexId, d: usize) -> Result<(Vec<VertexId>, LayerDecomposition)> {
    check_request(g, failed, d)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    select_helpers_in_component(g, failed, d)?.ok_or(Error::Disconnected)
}

/// Like [`select_helpers`] but only needs the component of `failed` to be
/// large enough; returns `None` when it has fewer than `d` other vertices.
pub fn select_helpers_in_component(
    g: &Graph,
    failed: VertexId,
    d: usize,
) -> Result<Option<(Vec<VertexId>, LayerDecomposition)>> {
    check_request(g, failed, d)?;
    let dist = bfs_distances(g, failed);
    let mut by_depth: Vec<Vec<VertexId>> = Vec::new();
    for (v, dv) in dist.iter().enumerate() {
        if let Some(j) = *dv {
            if j == 0 {
                continue;
            }
            if by_depth.len() < j {
                by_depth.resize(j, Vec::new());
            }
            by_depth[j - 1].push(v);
        }
    }
    let mut layers = Vec::new();
    let mut taken = 0;
    for mut layer in by_depth {
        if taken + layer.len() >= d {
            layer.truncate(d - taken);
            layers.push(layer);
            let decomposition = LayerDecomposition::new(failed, layers);
            return Ok(Some((decomposition.helpers(), decomposition)));
        }
        taken += layer.len();
        layers.push(layer);
    }
    Ok(None)
}
