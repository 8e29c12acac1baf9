use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{bfs_distances, Graph, LayerDecomposition, VertexId};
use crate::{Error, Result};

/// A rooted tree over a vertex subset, stored in BFS order (root first,
/// then by depth and id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairTree {
    order: Vec<VertexId>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    subtree: Vec<usize>,
    index: BTreeMap<VertexId, usize>,
}

impl RepairTree {
    /// Builds a tree from `(child, parent)` pairs.
    pub fn from_parents(root: VertexId, links: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut parent_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for &(c, p) in links {
            if c == root {
                return Err(Error::InvalidGraph(format!("root {root} cannot have a parent")));
            }
            if parent_of.insert(c, p).is_some() {
                return Err(Error::InvalidGraph(format!("vertex {c} has two parents")));
            }
        }
        let mut depth_of: BTreeMap<VertexId, usize> = BTreeMap::new();
        depth_of.insert(root, 0);
        for &c in parent_of.keys() {
            let mut chain = Vec::new();
            let mut cur = c;
            while !depth_of.contains_key(&cur) {
                if chain.len() > parent_of.len() {
                    return Err(Error::InvalidGraph("parent links contain a cycle".into()));
                }
                chain.push(cur);
                cur = *parent_of
                    .get(&cur)
                    .ok_or_else(|| Error::InvalidGraph(format!("vertex {cur} does not reach the root")))?;
            }
            let mut dep = depth_of[&cur];
            for &v in chain.iter().rev() {
                dep += 1;
                depth_of.insert(v, dep);
            }
        }
        let mut order: Vec<VertexId> = depth_of.keys().copied().collect();
        order.sort_by_key(|v| (depth_of[v], *v));
        Ok(Self::assemble(order, |v| parent_of.get(&v).copied()))
    }

    fn assemble(order: Vec<VertexId>, parent_of: impl Fn(VertexId) -> Option<VertexId>) -> Self {
        let index: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = order.len();
        let mut parent = vec![None; m];
        let mut depth = vec![0; m];
        let mut children = vec![Vec::new(); m];
        for i in 1..m {
            let p = index[&parent_of(order[i]).expect("non-root vertices have parents")];
            parent[i] = Some(p);
            depth[i] = depth[p] + 1;
            children[p].push(i);
        }
        let mut subtree = vec![1; m];
        for i in (1..m).rev() {
            let p = parent[i].expect("non-root");
            subtree[p] += subtree[i];
        }
        Self {
            order,
            parent,
            depth,
            children,
            subtree,
            index,
        }
    }

    pub fn root(&self) -> VertexId {
        self.order[0]
    }

    /// Number of vertices including the root.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Vertices in BFS order, root first.
    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    /// Non-root vertices in BFS order.
    pub fn non_root(&self) -> &[VertexId] {
        &self.order[1..]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    fn pos(&self, v: VertexId) -> usize {
        self.index[&v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[self.pos(v)].map(|p| self.order[p])
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[self.pos(v)]
    }

    pub fn children(&self, v: VertexId) -> Vec<VertexId> {
        self.children[self.pos(v)]
            .iter()
            .map(|&c| self.order[c])
            .collect()
    }

    /// `|D*(v)|`: size of the subtree rooted at `v`, `v` included.
    pub fn d_star(&self, v: VertexId) -> usize {
        self.subtree[self.pos(v)]
    }

    /// `|D(v)|`: proper descendants of `v`.
    pub fn descendants(&self, v: VertexId) -> usize {
        self.d_star(v) - 1
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// `(child, parent)` pairs in BFS order of the child.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (1..self.len())
            .map(|i| (self.order[i], self.order[self.parent[i].expect("non-root")]))
            .collect()
    }

    /// The non-root vertices grouped by depth.
    pub fn layers(&self) -> LayerDecomposition {
        let mut layers = vec![Vec::new(); self.max_depth()];
        for i in 1..self.len() {
            layers[self.depth[i] - 1].push(self.order[i]);
        }
        LayerDecomposition::new(self.root(), layers)
    }
}

/// BFS spanning tree of the subgraph induced by `vertices` plus `root`;
/// each vertex's parent is its smallest neighbour one level closer.
pub fn spanning_tree_rooted(g: &Graph, root: VertexId, vertices: &[VertexId]) -> Result<RepairTree> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in vertices.iter().chain(core::iter::once(&root)) {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, limit: n });
        }
        inside[v] = true;
    }
    let mut sub = Graph::new(n);
    for (u, v) in g.edges() {
        if inside[u] && inside[v] {
            sub.add_edge(u, v).expect("edges of a simple graph");
        }
    }
    let dist = bfs_distances(&sub, root);
    let mut order = Vec::new();
    for v in 0..n {
        if inside[v] {
            if dist[v].is_none() {
                return Err(Error::Disconnected);
            }
            order.push(v);
        }
    }
    order.sort_by_key(|&v| (dist[v], v));
    let parent_of = |v: VertexId| {
        let dv = dist[v]?;
        if dv == 0 {
            return None;
        }
        sub.neighbors(v)
            .iter()
            .copied()
            .find(|&u| dist[u] == Some(dv - 1))
    };
    Ok(RepairTree::assemble(order, parent_of))
}

/// The BFS repair tree of `failed` over `helpers`.
pub fn build_repair_tree(g: &Graph, failed: VertexId, helpers: &[VertexId]) -> Result<RepairTree> {
    if helpers.contains(&failed) {
        return Err(Error::InvalidParameters(
            "the failed vertex cannot be a helper".into(),
        ));
    }
    spanning_tree_rooted(g, failed, helpers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    #[test]
    fn path_tree_is_the_path() {
        let g = named::path(4);
        let t = build_repair_tree(&g, 0, &[1, 2, 3, 4]).unwrap();
        assert_eq!(t.edges(), vec![(1, 0), (2, 1), (3, 2), (4, 3)]);
        assert_eq!(t.d_star(1), 4);
        assert_eq!(t.max_depth(), 4);
    }

    #[test]
    fn complete_graph_gives_star() {
        let g = named::complete(6);
        let t = build_repair_tree(&g, 2, &[0, 1, 3, 4, 5]).unwrap();
        assert!(t
            .non_root()
            .iter()
            .all(|&v| t.parent(v) == Some(2) && t.d_star(v) == 1));
        let s = spanning_tree_rooted(&g, 4, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(s.children(4), vec![0, 1, 2, 3, 5]);
    }

    #[test]
    fn two_layer_tree_descendant_counts() {
        let g = named::spherical_tree(&[5, 4]);
        assert_eq!(g.n(), 26);
        let helpers: Vec<usize> = (1..26).collect();
        let t = build_repair_tree(&g, 0, &helpers).unwrap();
        for v in 1..=5 {
            assert_eq!(t.d_star(v), 5);
        }
        for v in 6..26 {
            assert_eq!(t.d_star(v), 1);
        }
        let root_children: usize = t.children(0).iter().map(|&c| t.d_star(c)).sum();
        assert_eq!(root_children, 25);
        assert_eq!(t.layers().sizes(), vec![5, 20]);
    }

    #[test]
    fn single_vertex_tree() {
        let g = named::path(2);
        let t = spanning_tree_rooted(&g, 1, &[]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.d_star(1), 1);
        assert!(t.edges().is_empty());
    }

    #[test]
    fn parents_are_smallest_closer_neighbour_and_depths_decrease() {
        for seed in 0..30 {
            let mut rng = rng_from_seed(seed);
            let mut g = Graph::new(15);
            for u in 0..15 {
                for v in u + 1..15 {
                    if rng.gen_bool(0.25) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let verts: Vec<usize> = (0..15).filter(|_| rng.gen_bool(0.7)).collect();
            let root = 0;
            match spanning_tree_rooted(&g, root, &verts) {
                Ok(t) => {
                    for (c, p) in t.edges() {
                        assert!(g.has_edge(c, p));
                        assert_eq!(t.depth(p) + 1, t.depth(c));
                        let smaller = g
                            .neighbors(c)
                            .iter()
                            .any(|&u| u < p && t.contains(u) && t.depth(u) + 1 == t.depth(c));
                        assert!(!smaller);
                    }
                }
                Err(e) => {
                    let mut all = verts.clone();
                    all.push(root);
                    assert_eq!(e, Error::Disconnected);
                    assert!(!g.induces_connected(&all));
                }
            }
        }
    }

    #[test]
    fn from_parents_validates() {
        let t = RepairTree::from_parents(0, &[(1, 0), (2, 1), (3, 1)]).unwrap();
        assert_eq!(t.d_star(1), 3);
        assert_eq!(t.vertices(), &[0, 1, 2, 3]);
        assert!(RepairTree::from_parents(0, &[(1, 2), (2, 1)]).is_err());
        assert!(RepairTree::from_parents(0, &[(1, 5)]).is_err());
        assert!(RepairTree::from_parents(0, &[(0, 1)]).is_err());
    }
}
