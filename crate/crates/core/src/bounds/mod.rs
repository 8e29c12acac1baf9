//! Lower bounds on repair communication and the closed forms they are
//! compared against. All quantities are exact rationals.

mod lp;
mod simplex;

use alloc::format;

use num_traits::{One, Zero};

use crate::graph::{LayerDecomposition, RepairTree};
use crate::{Error, Rational, Result};

pub use lp::{lp_bound, CutLp, LpSolution, LP_MAX_D};

/// An integer count as a rational.
pub fn ratio(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// Code parameters relevant to bandwidth accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeProfile {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Number of failed nodes repaired together.
    pub h: usize,
    /// Symbols stored per node.
    pub l: Rational,
}

impl CodeProfile {
    pub fn new(n: usize, k: usize, d: usize, l: Rational) -> Result<Self> {
        if k == 0 || k > d || d + 1 > n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= d <= n - 1, got n = {n}, k = {k}, d = {d}"
            )));
        }
        if l <= Rational::zero() {
            return Err(Error::InvalidParameters("l must be positive".into()));
        }
        Ok(Self { n, k, d, h: 1, l })
    }

    /// Profile whose per-helper download is `beta`, i.e. `l = beta (d - k + 1)`.
    pub fn with_beta(n: usize, k: usize, d: usize, beta: Rational) -> Result<Self> {
        let l = beta * ratio((d + 1).saturating_sub(k));
        Self::new(n, k, d, l)
    }

    /// Profile with one symbol per helper, `l = d - k + 1`.
    pub fn unit(n: usize, k: usize, d: usize) -> Result<Self> {
        Self::with_beta(n, k, d, Rational::one())
    }

    pub fn with_failures(mut self, h: usize) -> Result<Self> {
        if h == 0 || self.d + h > self.n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= h and d + h <= n, got h = {h}"
            )));
        }
        self.h = h;
        Ok(self)
    }

    /// Per-helper download for a single failure, `l / (d - k + 1)`.
    pub fn beta(&self) -> Rational {
        &self.l / ratio(self.d - self.k + 1)
    }

    /// `min(h l, h |A| l / (d - k + h))` for a helper subset of size `size`.
    fn outflow(&self, size: usize, h: usize) -> Rational {
        let hl = ratio(h) * &self.l;
        let share = &hl * ratio(size) / ratio(self.d - self.k + h);
        if share < hl {
            share
        } else {
            hl
        }
    }
}

/// Least information that a helper subset of the given size must send out
/// to the failed node(s).
pub fn subset_bound(profile: &CodeProfile, subset_size: usize) -> Result<Rational> {
    if subset_size == 0 || subset_size > profile.d {
        return Err(Error::InvalidParameters(format!(
            "subset size must lie in 1..={}, got {subset_size}",
            profile.d
        )));
    }
    Ok(profile.outflow(subset_size, profile.h))
}

/// Least flow out of the layers `j..=t` given their sizes.
pub fn layer_bound(profile: &CodeProfile, outer_layer_sizes: &[usize]) -> Result<Rational> {
    let total: usize = outer_layer_sizes.iter().sum();
    if total > profile.d {
        return Err(Error::InvalidParameters(format!(
            "layers hold {total} helpers but d = {}",
            profile.d
        )));
    }
    Ok(profile.outflow(total, 1))
}

/// `sum_v min(l, |D*(v)| l / (d - k + 1))` over the non-root vertices.
pub fn tree_bound(tree: &RepairTree, profile: &CodeProfile) -> Result<Rational> {
    if tree.len() != profile.d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "tree has {} helpers, profile has d = {}",
            tree.len() - 1,
            profile.d
        )));
    }
    Ok(tree
        .non_root()
        .iter()
        .map(|&v| profile.outflow(tree.d_star(v), 1))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// Accumulate-and-forward bandwidth,
/// `(t (d - |N_{t-1}|) + sum_{i<t} i |layer i|) l / (d - k + 1)`.
pub fn af_formula(layers: &LayerDecomposition, profile: &CodeProfile) -> Rational {
    let t = layers.t();
    if t == 0 {
        return Rational::zero();
    }
    let inner = layers.ball(t - 1);
    let mut hops = t * profile.d.saturating_sub(inner);
    for i in 1..t {
        hops += i * layers.layer(i).len();
    }
    ratio(hops) * profile.beta()
}

/// Bound for `h` failures reached through `w`: the sum over every vertex
/// of the tree rooted at `w`, root included, of
/// `min(h l, h |D*_w(v)| l / (d - k + h))`.
pub fn multi_tree_bound(tree: &RepairTree, profile: &CodeProfile) -> Result<Rational> {
    if tree.len() != profile.d {
        return Err(Error::DimensionMismatch(format!(
            "tree spans {} vertices, profile has d = {}",
            tree.len(),
            profile.d
        )));
    }
    Ok(tree
        .vertices()
        .iter()
        .map(|&v| profile.outflow(tree.d_star(v), profile.h))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// Bandwidth when only vertices at depth at most `switch_depth` may combine:
/// they send `min(l, |D*| beta)`, deeper vertices relay `|D*| beta`.
pub fn layered_ip_cost(tree: &RepairTree, profile: &CodeProfile, switch_depth: usize) -> Rational {
    let beta = profile.beta();
    tree.non_root()
        .iter()
        .map(|&v| {
            if tree.depth(v) <= switch_depth {
                profile.outflow(tree.d_star(v), 1)
            } else {
                ratio(tree.d_star(v)) * &beta
            }
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_repair_tree, named, select_helpers, spanning_tree_rooted};
    use alloc::vec::Vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn subset_bound_cases() {
        let p = CodeProfile::new(10, 3, 4, ratio(2)).unwrap();
        assert_eq!(subset_bound(&p, 4).unwrap(), ratio(2));
        assert_eq!(subset_bound(&p, 1).unwrap(), ratio(1));
        assert!(subset_bound(&p, 0).is_err());
        assert!(subset_bound(&p, 5).is_err());
        // h = 2, d = k + 1, |A| = 2: min(2l, 4l/3) = 4l/3.
        let q = CodeProfile::new(7, 3, 4, ratio(6))
            .unwrap()
            .with_failures(2)
            .unwrap();
        assert_eq!(subset_bound(&q, 2).unwrap(), ratio(8));
        assert_eq!(subset_bound(&q, 2).unwrap(), r(4, 3) * ratio(6));
    }

    #[test]
    fn layer_bound_cases() {
        let p = CodeProfile::unit(30, 24, 25).unwrap();
        assert_eq!(layer_bound(&p, &[1]).unwrap(), p.beta());
        assert_eq!(layer_bound(&p, &[5, 20]).unwrap(), p.l);
        // Two-layer tree with 20 outer helpers and d - k + 1 = 2.
        assert_eq!(layer_bound(&p, &[20]).unwrap(), ratio(2).min(ratio(20)));
        let q = CodeProfile::unit(30, 5, 25).unwrap();
        assert_eq!(layer_bound(&q, &[20]).unwrap(), ratio(20).min(q.l.clone()));
    }

    #[test]
    fn star_example() {
        // Failed leaf of a star, PM with k = 3: IP 3k - 4, AF 4k - 5.
        let k = 3;
        let d = 2 * k - 2;
        let g = named::star(d);
        let (helpers, layers) = select_helpers(&g, 1, d).unwrap();
        let tree = build_repair_tree(&g, 1, &helpers).unwrap();
        let p = CodeProfile::new(d + 1, k, d, ratio(k - 1)).unwrap();
        assert_eq!(tree_bound(&tree, &p).unwrap(), ratio(3 * k - 4));
        assert_eq!(af_formula(&layers, &p), ratio(4 * k - 5));
    }

    #[test]
    fn depth_one_gives_d_beta() {
        let g = named::star(6);
        let helpers: Vec<usize> = (1..=6).collect();
        let tree = build_repair_tree(&g, 0, &helpers).unwrap();
        let p = CodeProfile::with_beta(7, 3, 6, r(3, 2)).unwrap();
        let expect = ratio(6) * r(3, 2);
        assert_eq!(tree_bound(&tree, &p).unwrap(), expect);
        assert_eq!(af_formula(&tree.layers(), &p), expect);
    }

    #[test]
    fn regular_tree_af_closed_form() {
        // (r+1)-regular tree of depth t, d equal to its size, unit beta.
        for (rr, t) in [(2usize, 2usize), (3, 3), (2, 4)] {
            let mut branching = alloc::vec![rr + 1];
            branching.extend(core::iter::repeat_n(rr, t - 1));
            let g = named::spherical_tree(&branching);
            let d = g.n() - 1;
            let helpers: Vec<usize> = (1..=d).collect();
            let tree = build_repair_tree(&g, 0, &helpers).unwrap();
            let p = CodeProfile::unit(d + 1, d, d).unwrap();
            let mut expect = (t * d) as i64;
            for i in 0..=t.saturating_sub(2) {
                expect -= ((rr + 1) * (t - i - 1) * rr.pow(i as u32)) as i64;
            }
            assert_eq!(af_formula(&tree.layers(), &p), ratio(expect as usize));
            // IP switching from the next-to-last layer when r > d - k + 1.
            let k = d - 1;
            let p = CodeProfile::unit(d + 1, k, d).unwrap();
            let mut ip = d;
            for i in 0..=t - 2 {
                ip += (d - k) * (rr + 1) * rr.pow(i as u32);
            }
            assert_eq!(tree_bound(&tree, &p).unwrap(), ratio(ip));
        }
    }

    #[test]
    fn multi_bound_on_star_and_single_vertex() {
        let p = CodeProfile::new(8, 3, 4, ratio(3 * 32))
            .unwrap()
            .with_failures(2)
            .unwrap();
        let g = named::complete(4);
        let tree = spanning_tree_rooted(&g, 0, &[1, 2, 3]).unwrap();
        // Leaves send 2l/3 each, the root w sends min(2l, 8l/3) = 2l.
        let l = ratio(96);
        let expect = ratio(3) * ratio(2) * &l / ratio(3) + ratio(2) * &l;
        assert_eq!(multi_tree_bound(&tree, &p).unwrap(), expect);
        let single = spanning_tree_rooted(&g, 0, &[]).unwrap();
        let p1 = CodeProfile::new(4, 1, 1, ratio(3))
            .unwrap()
            .with_failures(2)
            .unwrap();
        assert_eq!(
            multi_tree_bound(&single, &p1).unwrap(),
            ratio(2) * ratio(3) / ratio(2)
        );
    }

    #[test]
    fn ip_never_worse_than_af() {
        for len in 1..8 {
            let g = named::path(len);
            let helpers: Vec<usize> = (1..=len).collect();
            let tree = build_repair_tree(&g, 0, &helpers).unwrap();
            for k in 1..=len {
                let p = CodeProfile::unit(len + 1, k, len).unwrap();
                assert!(tree_bound(&tree, &p).unwrap() <= af_formula(&tree.layers(), &p));
                assert_eq!(layered_ip_cost(&tree, &p, len), tree_bound(&tree, &p).unwrap());
                assert_eq!(layered_ip_cost(&tree, &p, 0), af_formula(&tree.layers(), &p));
            }
        }
    }
}
