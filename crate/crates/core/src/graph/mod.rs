//! Simple undirected graphs, BFS layers, helper selection and repair trees.

mod layers;
pub mod named;
mod tree;

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use layers::{bfs_distances, select_helpers, select_helpers_in_component, LayerDecomposition};
pub use tree::{build_repair_tree, spanning_tree_rooted, RepairTree};

use crate::{Error, Result};

pub type VertexId = usize;

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::InvalidGraph(format!(
                    "vertex {x} out of range for n = {n}"
                )));
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {u} {v}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        bfs_distances(self, 0).iter().all(Option::is_some)
    }

    /// True iff the subgraph induced by `vertices` is connected.
    pub fn induces_connected(&self, vertices: &[VertexId]) -> bool {
        let Some(&start) = vertices.first() else {
            return true;
        };
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == count_distinct(vertices)
    }

    /// Shortest path from `from` to `to` using only vertices for which
    /// `allowed` holds (the endpoints are always allowed). Ties go to the
    /// smallest predecessor.
    pub fn shortest_path(
        &self,
        from: VertexId,
        to: VertexId,
        mut allowed: impl FnMut(VertexId) -> bool,
    ) -> Option<Vec<VertexId>> {
        let mut prev: Vec<Option<VertexId>> = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while let Some(p) = prev[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &w in self.neighbors(u) {
                if !seen[w] && (w == to || allowed(w)) {
                    seen[w] = true;
                    prev[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn count_distinct(vertices: &[VertexId]) -> usize {
    let mut v = vertices.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
