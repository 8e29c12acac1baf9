//! Diagonal-matrix MSR codes with `d = n - 1`, `r = n - k`, `l = r^n`.
//!
//! A codeword satisfies `sum_i lambda_{i,a_i}^t c_{i,a} = 0` for every plane
//! `a` and `t < r`, where `a_i` is the r-ary digit `i` of `a` (digit 0 is
//! least significant). Node `i` is repaired group by group: a group is the
//! `r` planes that differ only in digit `i`, represented by the member with
//! `a_i = 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::parity::{check_plane, erasure_matrix, lambda_table, sample_plane, solve_erasures};
use super::{digit, with_digit};
use crate::codeword::Codeword;
use crate::galois::{FieldElement, Matrix};
use crate::graph::VertexId;
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Largest supported code length.
pub const DM_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmParams<F> {
    n: usize,
    k: usize,
    lambda: Vec<Vec<F>>,
}

impl<F: FieldElement> DmParams<F> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > DM_MAX_N {
            return Err(Error::SizeCap(format!(
                "l = r^n grows too fast; n is capped at {DM_MAX_N}"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k < n, got n = {n}, k = {k}"
            )));
        }
        let lambda = lambda_table(n, n - k)?;
        Ok(Self { n, k, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.n - self.k
    }

    pub fn d(&self) -> usize {
        self.n - 1
    }

    pub fn l(&self) -> usize {
        self.r().pow(self.n as u32)
    }

    pub fn lambda(&self, i: usize, j: usize) -> F {
        self.lambda[i][j]
    }

    /// Evaluation points of plane `a`.
    pub fn plane_points(&self, a: usize) -> Vec<F> {
        (0..self.n)
            .map(|i| self.lambda[i][digit(a, i, self.r())])
            .collect()
    }

    /// The canonical planes for node `i` (digit `i` zero), ascending.
    pub fn canonical_planes(&self, i: usize) -> Vec<usize> {
        let r = self.r();
        (0..self.l()).filter(|&a| digit(a, i, r) == 0).collect()
    }

    /// Number of repair groups per node, `l / r`.
    pub fn group_count(&self) -> usize {
        self.l() / self.r()
    }

    /// `a(i, u)`: plane `a` with digit `i` set to `u`.
    pub fn sibling(&self, a: usize, i: usize, u: usize) -> usize {
        with_digit(a, i, u, self.r())
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.n,
            });
        }
        Ok(())
    }

    fn check_canonical(&self, i: usize, a: usize) -> Result<()> {
        self.check_node(i)?;
        if a >= self.l() {
            return Err(Error::IndexOutOfRange {
                index: a,
                limit: self.l(),
            });
        }
        if digit(a, i, self.r()) != 0 {
            return Err(Error::NonCanonicalPlane { plane: a, node: i });
        }
        Ok(())
    }

    fn check_word(&self, word: &Codeword<F>) -> Result<()> {
        if word.n() != self.n || word.l() != self.l() {
            return Err(Error::DimensionMismatch(format!(
                "codeword is {}x{}, code is {}x{}",
                word.l(),
                word.n(),
                self.l(),
                self.n
            )));
        }
        Ok(())
    }

    /// Samples a codeword plane by plane from `seed`.
    pub fn sample(&self, seed: u64) -> Codeword<F> {
        let mut rng = rng_from_seed(seed);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Codeword<F> {
        let mut word = Codeword::zero(self.n, self.l());
        for a in 0..self.l() {
            let plane = sample_plane(&self.plane_points(a), self.k, rng);
            for (i, v) in plane.into_iter().enumerate() {
                word.set(i, a, v);
            }
        }
        word
    }

    /// True iff all `r * l` parity equations hold.
    pub fn check(&self, word: &Codeword<F>) -> bool {
        if self.check_word(word).is_err() {
            return false;
        }
        (0..self.l()).all(|a| {
            let values: Vec<F> = (0..self.n).map(|i| word.get(i, a)).collect();
            check_plane(&self.plane_points(a), &values, self.r())
        })
    }

    /// `mu = sum_u c_{helper, a(failed, u)}`.
    pub fn helper_trace(&self, word: &Codeword<F>, helper: usize, failed: usize, a: usize) -> Result<F> {
        self.check_word(word)?;
        self.check_node(helper)?;
        self.check_canonical(failed, a)?;
        if helper == failed {
            return Err(Error::InvalidParameters(
                "a node cannot help repair itself".into(),
            ));
        }
        Ok((0..self.r())
            .map(|u| word.get(helper, self.sibling(a, failed, u)))
            .sum())
    }

    fn group_points(&self, failed: usize, a: usize) -> (Vec<usize>, Vec<F>, Vec<F>) {
        let helpers: Vec<usize> = (0..self.n).filter(|&j| j != failed).collect();
        let known: Vec<F> = helpers
            .iter()
            .map(|&j| self.lambda[j][digit(a, j, self.r())])
            .collect();
        let erased: Vec<F> = (0..self.r()).map(|u| self.lambda[failed][u]).collect();
        (helpers, known, erased)
    }

    /// Recovers `(c_{i,a(i,0)}, ..., c_{i,a(i,r-1)})` from the traces of all
    /// `n - 1` other nodes by solving the group parity equations.
    pub fn repair_group(&self, failed: usize, a: usize, traces: &BTreeMap<VertexId, F>) -> Result<Vec<F>> {
        self.check_canonical(failed, a)?;
        let (helpers, known, erased) = self.group_points(failed, a);
        let values = helpers
            .iter()
            .map(|j| traces.get(j).copied().ok_or(Error::MissingHelper(*j)))
            .collect::<Result<Vec<F>>>()?;
        solve_erasures(&known, &values, &erased)
    }

    /// `U = -V_1^T (V_2^T)^{-1}`, an `(n-1) x r` matrix; row `j` belongs to
    /// the `j`-th other node in ascending order.
    pub fn repair_matrix(&self, failed: usize, a: usize) -> Result<Matrix<F>> {
        self.check_canonical(failed, a)?;
        let (_, known, erased) = self.group_points(failed, a);
        erasure_matrix(&known, &erased)
    }

    /// Full-column repair of `failed` from all other nodes; returns the
    /// column and the number of symbols downloaded from each helper.
    pub fn repair_column(&self, word: &Codeword<F>, failed: usize) -> Result<(Vec<F>, usize)> {
        self.check_word(word)?;
        let mut column = alloc::vec![F::ZERO; self.l()];
        let mut per_helper = 0;
        for a in self.canonical_planes(failed) {
            let mut traces = BTreeMap::new();
            for j in (0..self.n).filter(|&j| j != failed) {
                traces.insert(j, self.helper_trace(word, j, failed, a)?);
            }
            per_helper += 1;
            for (u, v) in self.repair_group(failed, a, &traces)?.into_iter().enumerate() {
                column[self.sibling(a, failed, u)] = v;
            }
        }
        Ok((column, per_helper))
    }
}
