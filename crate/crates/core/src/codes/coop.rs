//! Cooperative repair of two failed nodes with `d = k + 1`, `l = 3 * 2^n`.
//!
//! Symbol `c_{i,b,a}` (`b` in `0..3`, `a` in `0..2^n`) sits at position
//! `b * 2^n + a` of column `i`. Every `(b, a)` plane is a GRS codeword with
//! points `lambda_{i,a_i}`, `a_i` being bit `i` of `a`.
//!
//! The failed nodes are 0 and 1. In the first step helper `i` sends
//! `c_{i,0,a} + c_{i,1,a^1}` to node 0 and `c_{i,0,a} + c_{i,2,a^2}` to
//! node 1; each target recovers its two own symbols plus a cross-sum for the
//! other failed node. In the second step the two cross-sums are exchanged.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::parity::{check_plane, erasure_matrix, lambda_table, sample_plane, solve_erasures};
use crate::codeword::Codeword;
use crate::galois::{FieldElement, Matrix};
use crate::graph::VertexId;
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Largest supported code length.
pub const COOP_MAX_N: usize = 12;

/// The two failed nodes.
pub const FAILED: [VertexId; 2] = [0, 1];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoopParams<F> {
    n: usize,
    k: usize,
    lambda: Vec<Vec<F>>,
}

/// What one failed node learns in the first step, per plane `a`:
/// its two own symbols and the cross-sum owed to the other failed node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOne<F> {
    pub target: usize,
    pub values: Vec<[F; 3]>,
}

impl<F: FieldElement> CoopParams<F> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > COOP_MAX_N {
            return Err(Error::SizeCap(format!(
                "l = 3 * 2^n; n is capped at {COOP_MAX_N}"
            )));
        }
        if k == 0 || n < k + 3 {
            return Err(Error::InvalidParameters(format!(
                "two failures with d = k + 1 helpers need n >= k + 3 and k >= 1, got n = {n}, k = {k}"
            )));
        }
        let lambda = lambda_table(n, 2)?;
        Ok(Self { n, k, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.k + 1
    }

    pub fn h(&self) -> usize {
        2
    }

    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// Number of planes per `b`, `2^n`.
    pub fn planes(&self) -> usize {
        1 << self.n
    }

    pub fn l(&self) -> usize {
        3 * self.planes()
    }

    pub fn index(&self, b: usize, a: usize) -> usize {
        b * self.planes() + a
    }

    pub fn lambda(&self, i: usize, bit: usize) -> F {
        self.lambda[i][bit]
    }

    fn point(&self, i: usize, a: usize) -> F {
        self.lambda[i][(a >> i) & 1]
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

    pub fn sample(&self, seed: u64) -> Codeword<F> {
        let mut rng = rng_from_seed(seed);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Codeword<F> {
        let mut word = Codeword::zero(self.n, self.l());
        for b in 0..3 {
            for a in 0..self.planes() {
                let points: Vec<F> = (0..self.n).map(|i| self.point(i, a)).collect();
                for (i, v) in sample_plane(&points, self.k, rng).into_iter().enumerate() {
                    word.set(i, self.index(b, a), v);
                }
            }
        }
        word
    }

    pub fn check(&self, word: &Codeword<F>) -> bool {
        if self.check_word(word).is_err() {
            return false;
        }
        (0..3).all(|b| {
            (0..self.planes()).all(|a| {
                let points: Vec<F> = (0..self.n).map(|i| self.point(i, a)).collect();
                let values: Vec<F> = (0..self.n).map(|i| word.get(i, self.index(b, a))).collect();
                check_plane(&points, &values, self.r())
            })
        })
    }

    fn check_target(target: usize) -> Result<()> {
        if target > 1 {
            return Err(Error::InvalidParameters(format!(
                "target must be failed node 0 or 1, got {target}"
            )));
        }
        Ok(())
    }

    /// The step-one symbol helper `i` sends to failed node `target` for plane `a`.
    pub fn step1_message(&self, word: &Codeword<F>, helper: usize, target: usize, a: usize) -> Result<F> {
        Self::check_target(target)?;
        self.check_word(word)?;
        if helper >= self.n {
            return Err(Error::IndexOutOfRange {
                index: helper,
                limit: self.n,
            });
        }
        if FAILED.contains(&helper) {
            return Err(Error::InvalidParameters(
                "failed nodes cannot act as helpers".into(),
            ));
        }
        if a >= self.planes() {
            return Err(Error::IndexOutOfRange {
                index: a,
                limit: self.planes(),
            });
        }
        let partner = a ^ (1 << target);
        Ok(word.get(helper, self.index(0, a)) + word.get(helper, self.index(target + 1, partner)))
    }

    fn check_helpers(&self, helpers: &[usize]) -> Result<()> {
        if helpers.len() != self.d() {
            return Err(Error::InvalidParameters(format!(
                "need {} helpers, got {}",
                self.d(),
                helpers.len()
            )));
        }
        let mut seen = vec![false; self.n];
        for &h in helpers {
            if h >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: h,
                    limit: self.n,
                });
            }
            if FAILED.contains(&h) || seen[h] {
                return Err(Error::InvalidParameters(
                    "helpers must be distinct surviving nodes".into(),
                ));
            }
            seen[h] = true;
        }
        Ok(())
    }

    /// Evaluation points of the length-`(n+1)` GRS code seen by `target`:
    /// helper points, then the three sought positions followed by the
    /// non-helper positions.
    fn step1_points(&self, target: usize, a: usize, helpers: &[usize]) -> (Vec<F>, Vec<F>) {
        let other = 1 - target;
        let bit = (a >> target) & 1;
        let known: Vec<F> = helpers.iter().map(|&i| self.point(i, a)).collect();
        let mut unknown = vec![
            self.lambda[target][bit],
            self.lambda[target][bit ^ 1],
            self.point(other, a),
        ];
        unknown.extend(
            (2..self.n)
                .filter(|i| !helpers.contains(i))
                .map(|i| self.point(i, a)),
        );
        (known, unknown)
    }

    /// The `d x 3` matrix mapping the helpers' step-one symbols (in the
    /// order of `helpers`) to the three values sought by `target`.
    pub fn step1_matrix(&self, target: usize, a: usize, helpers: &[usize]) -> Result<Matrix<F>> {
        Self::check_target(target)?;
        self.check_helpers(helpers)?;
        let (known, unknown) = self.step1_points(target, a, helpers);
        let full = erasure_matrix(&known, &unknown)?;
        let mut u = Matrix::zeros(helpers.len(), 3);
        for i in 0..helpers.len() {
            for j in 0..3 {
                u[(i, j)] = full[(i, j)];
            }
        }
        Ok(u)
    }

    /// Recovers `[own b=0 at a, own b=target+1 at a^(1<<target), cross-sum]`
    /// from the step-one symbols of exactly `d` helpers.
    pub fn step1_recover(&self, target: usize, a: usize, messages: &BTreeMap<VertexId, F>) -> Result<[F; 3]> {
        Self::check_target(target)?;
        if messages.len() < self.d() {
            return Err(Error::Incomplete(format!(
                "{} step-one symbols received, {} needed",
                messages.len(),
                self.d()
            )));
        }
        let helpers: Vec<usize> = messages.keys().copied().collect();
        self.check_helpers(&helpers)?;
        let values: Vec<F> = messages.values().copied().collect();
        let (known, unknown) = self.step1_points(target, a, &helpers);
        let solved = solve_erasures(&known, &values, &unknown)?;
        Ok([solved[0], solved[1], solved[2]])
    }

    /// Runs step one for `target` over all planes with direct connectivity.
    pub fn step1(&self, word: &Codeword<F>, target: usize, helpers: &[usize]) -> Result<StepOne<F>> {
        self.check_helpers(helpers)?;
        let mut values = Vec::with_capacity(self.planes());
        for a in 0..self.planes() {
            let mut messages = BTreeMap::new();
            for &h in helpers {
                messages.insert(h, self.step1_message(word, h, target, a)?);
            }
            values.push(self.step1_recover(target, a, &messages)?);
        }
        Ok(StepOne { target, values })
    }

    /// Exchanges the cross-sums and completes both columns. Returns the
    /// columns of nodes 0 and 1 and the number of exchanged symbols.
    pub fn step2_exchange(&self, first: &StepOne<F>, second: &StepOne<F>) -> Result<([Vec<F>; 2], usize)> {
        let (s0, s1) = match (first.target, second.target) {
            (0, 1) => (first, second),
            (1, 0) => (second, first),
            _ => return Err(Error::Incomplete("step one must be run for both targets".into())),
        };
        let planes = self.planes();
        if s0.values.len() != planes || s1.values.len() != planes {
            return Err(Error::Incomplete("step one did not cover every plane".into()));
        }
        let mut c0 = vec![F::ZERO; self.l()];
        let mut c1 = vec![F::ZERO; self.l()];
        for a in 0..planes {
            let [x0, y0, cross_for_1] = s0.values[a];
            let [x1, y1, cross_for_0] = s1.values[a];
            c0[self.index(0, a)] = x0;
            c0[self.index(1, a ^ 1)] = y0;
            c0[self.index(2, a ^ 2)] = cross_for_0 - x0;
            c1[self.index(0, a)] = x1;
            c1[self.index(2, a ^ 2)] = y1;
            c1[self.index(1, a ^ 1)] = cross_for_1 - x1;
        }
        Ok(([c0, c1], 2 * planes))
    }

    /// Direct two-step repair of nodes 0 and 1.
    pub fn repair(&self, word: &Codeword<F>, helpers: &[usize]) -> Result<[Vec<F>; 2]> {
        let s0 = self.step1(word, 0, helpers)?;
        let s1 = self.step1(word, 1, helpers)?;
        Ok(self.step2_exchange(&s0, &s1)?.0)
    }
}
