use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use super::FieldElement;
use crate::{Error, Result};

/// Dense row-major matrix over a binary extension field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FieldElement> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// `rows x points.len()` matrix with entry `(i, j) = points[j]^i`.
    pub fn vandermonde(points: &[F], rows: usize) -> Self {
        let mut m = Self::zeros(rows, points.len());
        for (j, &x) in points.iter().enumerate() {
            let mut acc = F::ONE;
            for i in 0..rows {
                m[(i, j)] = acc;
                acc *= x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs[(k, c)];
                    out[(r, c)] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![F::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o += coef * x;
            }
        }
        Ok(out)
    }

    /// Rows `indices` of `self`, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    limit: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        Self::from_vec(indices.len(), self.cols, data)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let scale = a[(col, col)].inv()?;
            a.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                a.add_scaled_row(r, col, factor);
                inv.add_scaled_row(r, col, factor);
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = rhs` for square, invertible `self`.
    pub fn solve(&self, rhs: &[F]) -> Result<Vec<F>> {
        if !self.is_square() || rhs.len() != self.rows {
            return Err(Error::DimensionMismatch("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap_rows(pivot, col);
            b.swap(pivot, col);
            let scale = a[(col, col)].inv()?;
            a.scale_row(col, scale);
            b[col] *= scale;
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                a.add_scaled_row(r, col, factor);
                let delta = factor * b[col];
                b[r] -= delta;
            }
        }
        Ok(b)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let scale = a[(rank, col)].inv().expect("pivot is non-zero");
            a.scale_row(rank, scale);
            for r in rank + 1..self.rows {
                let factor = a[(r, col)];
                if !factor.is_zero() {
                    a.add_scaled_row(r, rank, factor);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: F) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x *= s;
        }
    }

    /// row[dst] -= factor * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, factor: F) {
        for c in 0..self.cols {
            let v = factor * self.data[src * self.cols + c];
            self.data[dst * self.cols + c] -= v;
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{Gf256, Gf65536};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix<F: FieldElement>(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<F> {
        Matrix::from_vec(r, c, (0..r * c).map(|_| F::random(rng)).collect()).unwrap()
    }

    fn random_invertible<F: FieldElement>(rng: &mut ChaCha8Rng, n: usize) -> Matrix<F> {
        loop {
            let m = random_matrix(rng, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a: Matrix<Gf256> = random_matrix(&mut rng, 3, 4);
        assert_eq!(a.mul(&Matrix::identity(4)).unwrap(), a);
        assert_eq!(
            Matrix::<Gf256>::identity(4).inverse().unwrap(),
            Matrix::identity(4)
        );
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let a: Matrix<Gf65536> = random_matrix(&mut rng, 3, 3);
            let b = random_matrix(&mut rng, 3, 3);
            let c = random_matrix(&mut rng, 3, 3);
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Matrix::<Gf256>::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.inverse(), Err(Error::DimensionMismatch(_))));
        assert!(Matrix::<Gf256>::from_vec(2, 2, alloc::vec![Gf256(1)]).is_err());
    }

    #[test]
    fn vandermonde_times_coefficients_evaluates_polynomial() {
        // Row-vector convention: coeffs * V gives evaluations at each point.
        let pts = [Gf256(3), Gf256(7)];
        let coeffs = [Gf256(5), Gf256(9), Gf256(17)];
        let v = Matrix::vandermonde(&pts, 3);
        let evals = v.vec_mul(&coeffs).unwrap();
        for (j, &x) in pts.iter().enumerate() {
            let direct = coeffs[0] + coeffs[1] * x + coeffs[2] * x * x;
            assert_eq!(evals[j], direct);
        }
        let ones = Matrix::vandermonde(&pts, 1);
        assert!(ones.as_slice().iter().all(|&x| x == Gf256::ONE));
    }

    #[test]
    fn inverse_of_inverse_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a: Matrix<Gf256> = random_invertible(&mut rng, 4);
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(4));
            assert_eq!(inv.inverse().unwrap(), a);
        }
    }

    /// Lagrange interpolation, written independently of the matrix code.
    fn lagrange_coefficients(xs: &[Gf256], ys: &[Gf256]) -> Vec<Gf256> {
        let n = xs.len();
        let mut coeffs = alloc::vec![Gf256::ZERO; n];
        for i in 0..n {
            // basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
            let mut basis = alloc::vec![Gf256::ONE];
            let mut denom = Gf256::ONE;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = alloc::vec![Gf256::ZERO; basis.len() + 1];
                for (k, &b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * xs[j];
                }
                basis = next;
                denom *= xs[i] - xs[j];
            }
            let scale = ys[i] * denom.inv().unwrap();
            for k in 0..n {
                coeffs[k] += basis[k] * scale;
            }
        }
        coeffs
    }

    #[test]
    fn inverse_vandermonde_recovers_coefficients() {
        let xs = [Gf256(2), Gf256(4), Gf256(8), Gf256(16)];
        let ys = [Gf256(11), Gf256(0), Gf256(200), Gf256(3)];
        let v = Matrix::vandermonde(&xs, 4);
        // coeffs * V = ys  =>  coeffs = ys * V^{-1}
        let coeffs = v.inverse().unwrap().vec_mul(&ys).unwrap();
        assert_eq!(coeffs, lagrange_coefficients(&xs, &ys));
    }

    #[test]
    fn vandermonde_with_repeated_point_is_singular() {
        let pts = [Gf256(9), Gf256(9), Gf256(33)];
        let v = Matrix::vandermonde(&pts, 3);
        assert_eq!(v.rank(), 2);
        assert_eq!(v.inverse(), Err(Error::SingularMatrix));
        let distinct = Matrix::vandermonde(&[Gf256(9), Gf256(10), Gf256(33)], 3);
        assert_eq!(distinct.rank(), 3);
        assert!(distinct.inverse().is_ok());
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Matrix::<Gf256>::identity(5).rank(), 5);
        assert_eq!(Matrix::<Gf256>::zeros(4, 6).rank(), 0);
    }

    #[test]
    fn solve_matches_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a: Matrix<Gf65536> = random_invertible(&mut rng, 5);
        let b: Vec<Gf65536> = (0..5).map(|_| Gf65536::random(&mut rng)).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        assert_eq!(a.inverse().unwrap().mul_vec(&b).unwrap(), x);
    }
}
