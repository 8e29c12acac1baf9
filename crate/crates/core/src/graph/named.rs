//! Small named graphs used by examples, tests and the command line.
//!
//! In every builder the failed vertex of interest is 0 unless noted.

use alloc::vec::Vec;

use super::{Graph, VertexId};

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v).expect("fresh edge");
    }
    g
}

/// Path `0 - 1 - ... - len` (`len` edges).
pub fn path(len: usize) -> Graph {
    let mut g = Graph::new(len + 1);
    for v in 0..len {
        g.add_edge(v, v + 1).expect("fresh edge");
    }
    g
}

pub fn complete(m: usize) -> Graph {
    let mut g = Graph::new(m);
    for u in 0..m {
        for v in u + 1..m {
            g.add_edge(u, v).expect("fresh edge");
        }
    }
    g
}

/// Failed vertex 0 adjacent to `neighbors` of the helpers `1..=helpers`,
/// which form a complete graph.
pub fn clique_with_access(helpers: usize, neighbors: usize) -> Graph {
    let mut g = Graph::new(helpers + 1);
    for v in 1..=neighbors.min(helpers) {
        g.add_edge(0, v).expect("fresh edge");
    }
    for u in 1..=helpers {
        for v in u + 1..=helpers {
            g.add_edge(u, v).expect("fresh edge");
        }
    }
    g
}

/// Two-neighbour topology for dimension `k`: vertex 0 is adjacent to 1 and
/// 2 only, and the `k + 1` helpers `1..=k+1` form a complete graph.
pub fn two_neighbour(k: usize) -> Graph {
    clique_with_access(k + 1, 2)
}

/// Vertex 0 adjacent to 1, 2 and 3; helpers `1..=6` form `K_6`.
pub fn three_neighbour() -> Graph {
    clique_with_access(6, 3)
}

/// Spherically symmetric tree: the root 0 has `branching[0]` children, each
/// of those has `branching[1]` children, and so on. Vertices are numbered in
/// BFS order.
pub fn spherical_tree(branching: &[usize]) -> Graph {
    let mut sizes = Vec::with_capacity(branching.len() + 1);
    sizes.push(1usize);
    for &b in branching {
        let prev = *sizes.last().expect("nonempty");
        sizes.push(prev * b);
    }
    let total: usize = sizes.iter().sum();
    let mut g = Graph::new(total);
    let mut level_start = 0;
    let mut next = 1;
    for (depth, &b) in branching.iter().enumerate() {
        for p in level_start..level_start + sizes[depth] {
            for _ in 0..b {
                g.add_edge(p, next).expect("fresh edge");
                next += 1;
            }
        }
        level_start += sizes[depth];
    }
    g
}

/// Topology for two failures: failed vertices 0 and 1, helpers
/// `2..=k+2` joined in a path with `w = 2` at its end. With a spare vertex
/// (`n >= k + 4`) the relay `k + 3` links 0 and 1 to `w`; otherwise `w` is
/// adjacent to both failed vertices and 0 - 1 is an edge. Any remaining
/// vertices hang off vertex 0.
pub fn two_failure(n: usize, k: usize) -> (Graph, VertexId) {
    let w = 2;
    let last = k + 2;
    let mut g = Graph::new(n.max(last + 1));
    for v in w..last {
        g.add_edge(v, v + 1).expect("fresh edge");
    }
    if n > last + 1 {
        let relay = last + 1;
        for v in [0, 1, w] {
            g.add_edge(v, relay).expect("fresh edge");
        }
        for v in relay + 1..n {
            g.add_edge(0, v).expect("fresh edge");
        }
    } else {
        g.add_edge(0, w).expect("fresh edge");
        g.add_edge(1, w).expect("fresh edge");
        g.add_edge(0, 1).expect("fresh edge");
    }
    (g, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(star(4).edge_count(), 4);
        assert_eq!(path(3).n(), 4);
        assert_eq!(complete(5).edge_count(), 10);
        let f3 = two_neighbour(3);
        assert_eq!(f3.n(), 5);
        assert_eq!(f3.neighbors(0), &[1, 2]);
        let f4 = three_neighbour();
        assert_eq!(f4.edge_count(), 3 + 15);
        assert_eq!(spherical_tree(&[3, 2]).n(), 10);
    }

    #[test]
    fn two_failure_variants() {
        let (g, w) = two_failure(5, 2);
        assert_eq!(w, 2);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2) && g.has_edge(3, 4));
        let (g, _) = two_failure(8, 3);
        assert!(g.has_edge(6, 0) && g.has_edge(6, 1) && g.has_edge(6, 2) && g.has_edge(0, 7));
        assert!(g.is_connected());
    }
}
