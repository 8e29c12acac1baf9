//! Cut linear program over a repair graph that may contain cycles.
//!
//! Variables are directed edges: both directions between adjacent helpers
//! and helper to failed vertex. Every non-empty helper subset `S` must push
//! out at least `beta min(d - k + 1, |S|)` across its cut.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{ratio, simplex, CodeProfile};
use crate::graph::{Graph, VertexId};
use crate::{Error, Rational, Result};

/// Largest helper count for which the `2^d - 1` cut rows are handled.
pub const LP_MAX_D: usize = 16;

#[derive(Debug, Clone)]
pub struct CutLp {
    failed: VertexId,
    helpers: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    // Bit masks of each edge's tail and head over helper positions; the
    // failed vertex has an empty mask.
    tails: Vec<u32>,
    heads: Vec<u32>,
    beta: Rational,
    reach: usize,
    rows: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Flow on each directed edge, in the order of [`CutLp::edges`].
    pub primal: Vec<Rational>,
    /// Nonzero cut weights as `(subset mask, value)`.
    pub dual: Vec<(u32, Rational)>,
}

impl CutLp {
    pub fn new(g: &Graph, failed: VertexId, helpers: &[VertexId], profile: &CodeProfile) -> Result<Self> {
        let mut helpers = helpers.to_vec();
        helpers.sort_unstable();
        helpers.dedup();
        if helpers.len() != profile.d {
            return Err(Error::DimensionMismatch(format!(
                "{} distinct helpers, profile has d = {}",
                helpers.len(),
                profile.d
            )));
        }
        if helpers.len() > LP_MAX_D {
            return Err(Error::SizeCap(format!(
                "LP needs d <= {LP_MAX_D}, got {}",
                helpers.len()
            )));
        }
        for &v in helpers.iter().chain(core::iter::once(&failed)) {
            if v >= g.n() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    limit: g.n(),
                });
            }
        }
        if helpers.binary_search(&failed).is_ok() {
            return Err(Error::InvalidParameters(
                "the failed vertex cannot be a helper".into(),
            ));
        }
        let mask = |v: VertexId| match helpers.binary_search(&v) {
            Ok(i) => 1u32 << i,
            Err(_) => 0,
        };
        let mut edges = Vec::new();
        for &u in &helpers {
            for &v in g.neighbors(u) {
                if v == failed || helpers.binary_search(&v).is_ok() {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        let tails = edges.iter().map(|&(u, _)| mask(u)).collect();
        let heads = edges.iter().map(|&(_, v)| mask(v)).collect();

        let d = helpers.len();
        let mut rows: Vec<u32> = (1..(1u32 << d)).collect();
        rows.sort_by(|&a, &b| {
            a.count_ones()
                .cmp(&b.count_ones())
                .then_with(|| lex_key(a).cmp(&lex_key(b)))
        });

        Ok(Self {
            failed,
            helpers,
            edges,
            tails,
            heads,
            beta: profile.beta(),
            reach: profile.d - profile.k + 1,
            rows,
        })
    }

    pub fn failed(&self) -> VertexId {
        self.failed
    }

    pub fn helpers(&self) -> &[VertexId] {
        &self.helpers
    }

    pub fn d(&self) -> usize {
        self.helpers.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&(u, v)).ok()
    }

    /// Cut rows as subset masks, ordered by size and then lexicographically.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Mask of a helper subset (bit `i` is the `i`-th smallest helper).
    pub fn mask_of(&self, subset: &[VertexId]) -> Result<u32> {
        subset.iter().try_fold(0u32, |acc, &v| {
            self.helpers
                .binary_search(&v)
                .map(|i| acc | 1 << i)
                .map_err(|_| Error::MissingHelper(v))
        })
    }

    pub fn subset_of(&self, mask: u32) -> Vec<VertexId> {
        (0..self.d())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.helpers[i])
            .collect()
    }

    pub fn rhs(&self, mask: u32) -> Rational {
        ratio(self.reach.min(mask.count_ones() as usize)) * &self.beta
    }

    fn crosses(&self, mask: u32, e: usize) -> bool {
        mask & self.tails[e] != 0 && mask & self.heads[e] == 0
    }

    /// Indices of the edges leaving the subset.
    pub fn cut(&self, mask: u32) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.crosses(mask, e)).collect()
    }

    fn valid_mask(&self, mask: u32) -> bool {
        mask != 0 && (self.d() == 32 || mask >> self.d() == 0)
    }

    /// Solves the program exactly. The dual is run through the simplex
    /// method and the primal optimum is read off its multipliers.
    pub fn solve(&self) -> Result<LpSolution> {
        let sol = simplex::solve_packing(
            self.edges.len(),
            self.rows.len(),
            |j| self.rhs(self.rows[j]),
            |j, buf| {
                let s = self.rows[j];
                buf.extend((0..self.edges.len()).filter(|&e| self.crosses(s, e)));
            },
        )?;
        let mut dual: Vec<(u32, Rational)> = sol.y.into_iter().map(|(j, y)| (self.rows[j], y)).collect();
        dual.sort_by_key(|(m, _)| self.rows.iter().position(|r| r == m));
        Ok(LpSolution {
            value: sol.value,
            primal: sol.multipliers,
            dual,
        })
    }

    pub fn primal_value(&self, primal: &[Rational]) -> Rational {
        primal.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn dual_value(&self, dual: &[(u32, Rational)]) -> Rational {
        dual.iter()
            .fold(Rational::zero(), |acc, (m, y)| acc + self.rhs(*m) * y)
    }

    /// `M X >= b` and `X >= 0`.
    pub fn primal_feasible(&self, primal: &[Rational]) -> bool {
        if primal.len() != self.edges.len() || primal.iter().any(|x| x.is_negative()) {
            return false;
        }
        self.rows.iter().all(|&s| {
            let flow = (0..self.edges.len())
                .filter(|&e| self.crosses(s, e))
                .fold(Rational::zero(), |acc, e| acc + &primal[e]);
            flow >= self.rhs(s)
        })
    }

    /// `M^T Y <= 1` and `Y >= 0`.
    pub fn dual_feasible(&self, dual: &[(u32, Rational)]) -> bool {
        if dual.iter().any(|(m, y)| !self.valid_mask(*m) || y.is_negative()) {
            return false;
        }
        let mut masks: Vec<u32> = dual.iter().map(|(m, _)| *m).collect();
        masks.sort_unstable();
        if masks.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let one = Rational::from_integer(1.into());
        (0..self.edges.len()).all(|e| {
            let load = dual
                .iter()
                .filter(|(m, _)| self.crosses(*m, e))
                .fold(Rational::zero(), |acc, (_, y)| acc + y);
            load <= one
        })
    }

    /// Both certificates feasible and their objective values equal.
    pub fn check_pair(&self, primal: &[Rational], dual: &[(u32, Rational)]) -> bool {
        self.primal_feasible(primal)
            && self.dual_feasible(dual)
            && self.primal_value(primal) == self.dual_value(dual)
    }

    pub fn check(&self, sol: &LpSolution) -> bool {
        self.check_pair(&sol.primal, &sol.dual) && self.primal_value(&sol.primal) == sol.value
    }
}

fn lex_key(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Builds and solves the cut program for `failed` with the given helpers.
pub fn lp_bound(
    g: &Graph,
    failed: VertexId,
    helpers: &[VertexId],
    profile: &CodeProfile,
) -> Result<(CutLp, LpSolution)> {
    let lp = CutLp::new(g, failed, helpers, profile)?;
    let sol = lp.solve()?;
    Ok((lp, sol))
}
