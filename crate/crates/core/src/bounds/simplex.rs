//! Exact revised simplex for packing programs
//! `max c^T y  s.t.  A y <= 1, y >= 0` with a 0/1 matrix `A`.
//!
//! Columns are produced on demand, so the solver never materialises `A`.
//! Pivoting follows Bland's rule, which rules out cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

pub(crate) struct PackingSolution {
    pub value: Rational,
    /// Nonzero structural variables as `(column, value)`, ascending column.
    pub y: Vec<(usize, Rational)>,
    /// Optimal multipliers of the `rows` constraints, which form an optimal
    /// solution of the covering program `min 1^T x, A^T x >= c, x >= 0`.
    pub multipliers: Vec<Rational>,
}

/// `cost(j)` is `c_j`; `support(j, buf)` fills `buf` with the rows where
/// column `j` has a one. Returns `Infeasible` if the program is unbounded,
/// which means the covering program has no feasible point.
pub(crate) fn solve_packing<C, S>(rows: usize, cols: usize, cost: C, support: S) -> Result<PackingSolution>
where
    C: Fn(usize) -> Rational,
    S: Fn(usize, &mut Vec<usize>),
{
    let m = rows;
    // Variable index: structural columns first, then one slack per row.
    let mut basis: Vec<usize> = (cols..cols + m).collect();
    let mut b_inv: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = vec![Rational::zero(); m];
            row[r] = Rational::one();
            row
        })
        .collect();
    let mut x_b: Vec<Rational> = vec![Rational::one(); m];
    let var_cost = |j: usize| if j < cols { cost(j) } else { Rational::zero() };
    let mut buf = Vec::new();

    loop {
        // Simplex multipliers pi = c_B B^{-1}.
        let c_b: Vec<Rational> = basis.iter().map(|&j| var_cost(j)).collect();
        let mut pi = vec![Rational::zero(); m];
        for (r, c) in c_b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (p, b) in pi.iter_mut().zip(&b_inv[r]) {
                if !b.is_zero() {
                    *p += c * b;
                }
            }
        }

        // Bland: the first variable with a positive reduced cost enters.
        let mut entering = None;
        for j in 0..cols {
            buf.clear();
            support(j, &mut buf);
            let mut reduced = cost(j);
            for &r in &buf {
                reduced -= &pi[r];
            }
            if reduced.is_positive() {
                entering = Some(j);
                break;
            }
        }
        if entering.is_none() {
            entering = (0..m).find(|&r| pi[r].is_negative()).map(|r| cols + r);
        }
        let Some(j) = entering else {
            let value = c_b
                .iter()
                .zip(&x_b)
                .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
            let mut y: Vec<(usize, Rational)> = basis
                .iter()
                .zip(&x_b)
                .filter(|(&v, x)| v < cols && !x.is_zero())
                .map(|(&v, x)| (v, x.clone()))
                .collect();
            y.sort_by_key(|(v, _)| *v);
            return Ok(PackingSolution {
                value,
                y,
                multipliers: pi,
            });
        };

        // alpha = B^{-1} a_j.
        let alpha: Vec<Rational> = if j < cols {
            buf.clear();
            support(j, &mut buf);
            b_inv
                .iter()
                .map(|row| buf.iter().fold(Rational::zero(), |acc, &r| acc + &row[r]))
                .collect()
        } else {
            b_inv.iter().map(|row| row[j - cols].clone()).collect()
        };

        // Ratio test, ties to the smallest basic variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if !alpha[r].is_positive() {
                continue;
            }
            let ratio = &x_b[r] / &alpha[r];
            let better = match &leave {
                None => true,
                Some((best_r, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*best_r]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::Infeasible);
        };

        // Pivot on alpha[r].
        let piv = alpha[r].clone();
        for v in b_inv[r].iter_mut() {
            *v /= &piv;
        }
        x_b[r] /= &piv;
        let pivot_row = b_inv[r].clone();
        let pivot_x = x_b[r].clone();
        for s in 0..m {
            if s == r || alpha[s].is_zero() {
                continue;
            }
            let f = &alpha[s];
            for (v, p) in b_inv[s].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= f * p;
                }
            }
            x_b[s] -= f * &pivot_x;
        }
        basis[r] = j;
    }
}
