//! Generalized Reed–Solomon parity checks `sum_p x_p^t v_p = 0`, `t < r`.
//!
//! Every array code in this crate splits into planes, each of which is a
//! GRS codeword with one evaluation point per position. These helpers sample,
//! check and erasure-decode such planes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng;

use crate::galois::{FieldElement, Matrix};
use crate::{Error, Result};

/// True iff `values` satisfies the first `checks` parity equations.
pub fn check_plane<F: FieldElement>(points: &[F], values: &[F], checks: usize) -> bool {
    debug_assert_eq!(points.len(), values.len());
    let mut powers = vec![F::ONE; points.len()];
    for _ in 0..checks {
        let s: F = powers.iter().zip(values).map(|(&p, &v)| p * v).sum();
        if !s.is_zero() {
            return false;
        }
        for (pw, &x) in powers.iter_mut().zip(points) {
            *pw *= x;
        }
    }
    true
}

/// `U = -V_K^T (V_E^T)^{-1}`: the erased values are `known_values . U`,
/// using the first `unknown_points.len()` parity checks.
pub fn erasure_matrix<F: FieldElement>(known_points: &[F], unknown_points: &[F]) -> Result<Matrix<F>> {
    let r = unknown_points.len();
    let v_known = Matrix::vandermonde(known_points, r);
    let v_erased = Matrix::vandermonde(unknown_points, r);
    let mut u = v_known.transpose().mul(&v_erased.transpose().inverse()?)?;
    for i in 0..u.rows() {
        for j in 0..u.cols() {
            u[(i, j)] = -u[(i, j)];
        }
    }
    Ok(u)
}

/// Solves `V_E x = -V_K y` for the erased values directly.
pub fn solve_erasures<F: FieldElement>(
    known_points: &[F],
    known_values: &[F],
    unknown_points: &[F],
) -> Result<Vec<F>> {
    if known_points.len() != known_values.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} known points but {} values",
            known_points.len(),
            known_values.len()
        )));
    }
    let r = unknown_points.len();
    let rhs: Vec<F> = Matrix::vandermonde(known_points, r)
        .mul_vec(known_values)?
        .into_iter()
        .map(|v| -v)
        .collect();
    Matrix::vandermonde(unknown_points, r).solve(&rhs)
}

/// Draws a uniformly random plane satisfying `points.len() - free` checks:
/// `free` positions chosen uniformly get random values, the rest are solved.
pub fn sample_plane<F: FieldElement, R: Rng + ?Sized>(points: &[F], free: usize, rng: &mut R) -> Vec<F> {
    let n = points.len();
    let mut is_free = vec![false; n];
    for i in sample(rng, n, free) {
        is_free[i] = true;
    }
    let mut values = vec![F::ZERO; n];
    let (mut kp, mut kv, mut up) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        if is_free[i] {
            values[i] = F::random(rng);
            kp.push(points[i]);
            kv.push(values[i]);
        } else {
            up.push(points[i]);
        }
    }
    let solved = solve_erasures(&kp, &kv, &up).expect("distinct evaluation points");
    let mut it = solved.into_iter();
    for i in 0..n {
        if !is_free[i] {
            values[i] = it.next().expect("one value per erased position");
        }
    }
    values
}

/// `table[i][j] = alpha^(i * width + j)`, checked pairwise distinct.
pub fn lambda_table<F: FieldElement>(n: usize, width: usize) -> Result<Vec<Vec<F>>> {
    let count = (n * width) as u64;
    if count > F::group_order() {
        return Err(Error::InvalidParameters(format!(
            "need {count} distinct nonzero field elements, field has {}",
            F::group_order()
        )));
    }
    Ok((0..n)
        .map(|i| (0..width).map(|j| F::alpha_pow((i * width + j) as u64)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Gf256;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn points(n: usize) -> Vec<Gf256> {
        (0..n as u64).map(|i| Gf256::alpha_pow(3 * i + 1)).collect()
    }

    #[test]
    fn sampled_plane_passes_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = points(7);
        for free in 1..7 {
            let v = sample_plane(&pts, free, &mut rng);
            assert!(check_plane(&pts, &v, 7 - free));
        }
    }

    #[test]
    fn erasure_matrix_matches_direct_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = points(6);
        let v = sample_plane(&pts, 3, &mut rng);
        let (kp, kv) = (&pts[..3], &v[..3]);
        let up = &pts[3..];
        let direct = solve_erasures(kp, kv, up).unwrap();
        assert_eq!(direct, &v[3..]);
        let u = erasure_matrix(kp, up).unwrap();
        assert_eq!(u.vec_mul(kv).unwrap(), direct);
    }

    #[test]
    fn lambda_table_size_cap() {
        assert!(lambda_table::<Gf256>(85, 3).is_ok());
        assert!(lambda_table::<Gf256>(86, 3).is_err());
        let t = lambda_table::<Gf256>(4, 2).unwrap();
        assert_eq!(t[1][1], Gf256::alpha_pow(3));
    }
}
