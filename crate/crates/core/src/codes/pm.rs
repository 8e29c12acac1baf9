//! Product-matrix MSR codes with `d = 2k - 2`, `l = k - 1`.
//!
//! Node `i` stores `C_i = phi_i S1 + lambda_i phi_i S2` where
//! `phi_i = (1, x_i, ..., x_i^(l-1))`, `lambda_i = x_i^l` and `S1`, `S2` are
//! symmetric `l x l` message matrices. Evaluation points are
//! `x_i = alpha^i` for the 0-based node index `i`.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::codeword::Codeword;
use crate::galois::{check_generator, FieldElement, Matrix};
use crate::{Error, Result};

/// Largest `n` for which [`PmCode::mds_check`] enumerates all k-subsets.
pub const MDS_CHECK_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmParams<F> {
    n: usize,
    k: usize,
    x: Vec<F>,
    lambda: Vec<F>,
}

impl<F: FieldElement> PmParams<F> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_generator::<F>()?;
        if k < 2 {
            return Err(Error::InvalidParameters(format!(
                "product-matrix codes need k >= 2, got {k}"
            )));
        }
        let d = 2 * k - 2;
        if n <= d {
            return Err(Error::InvalidParameters(format!("need n > d = {d}, got n = {n}")));
        }
        let x: Vec<F> = (0..n as u64).map(F::alpha_pow).collect();
        Self::with_points(k, x)
    }

    /// Parameters with explicit evaluation points.
    pub fn with_points(k: usize, x: Vec<F>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameters(format!(
                "product-matrix codes need k >= 2, got {k}"
            )));
        }
        let n = x.len();
        let l = k - 1;
        if n <= 2 * l {
            return Err(Error::InvalidParameters(format!(
                "need n > d = {}, got n = {n}",
                2 * l
            )));
        }
        if !all_distinct(&x) {
            return Err(Error::InvalidParameters(
                "evaluation points x_i are not distinct".into(),
            ));
        }
        let lambda: Vec<F> = x.iter().map(|&xi| xi.pow(l as u64)).collect();
        if !all_distinct(&lambda) {
            return Err(Error::InvalidParameters(
                "lambda_i = x_i^l are not distinct; choose a larger field or smaller n".into(),
            ));
        }
        Ok(Self { n, k, x, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        2 * self.k - 2
    }

    pub fn l(&self) -> usize {
        self.k - 1
    }

    pub fn x(&self, i: usize) -> F {
        self.x[i]
    }

    pub fn lambda(&self, i: usize) -> F {
        self.lambda[i]
    }

    /// `phi_i = (1, x_i, ..., x_i^(l-1))`.
    pub fn phi(&self, i: usize) -> Vec<F> {
        let mut out = Vec::with_capacity(self.l());
        let mut acc = F::ONE;
        for _ in 0..self.l() {
            out.push(acc);
            acc *= self.x[i];
        }
        out
    }

    /// Row `i` of `Psi = [Phi, Lambda Phi]`.
    pub fn psi_row(&self, i: usize) -> Vec<F> {
        let phi = self.phi(i);
        let mut row = phi.clone();
        row.extend(phi.iter().map(|&p| self.lambda[i] * p));
        row
    }

    /// `Psi` restricted to `nodes`, one row per node.
    pub fn psi_rows(&self, nodes: &[usize]) -> Matrix<F> {
        let rows: Vec<Vec<F>> = nodes.iter().map(|&i| self.psi_row(i)).collect();
        Matrix::from_rows(&rows).expect("psi rows have equal length")
    }

    /// Number of free message symbols, `k(k-1)`.
    pub fn message_len(&self) -> usize {
        self.k * (self.k - 1)
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
}

fn all_distinct<F: Ord + Copy>(xs: &[F]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// The message `M = [S1 | S2]^T` with symmetric blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmMessage<F> {
    pub s1: Matrix<F>,
    pub s2: Matrix<F>,
}

impl<F: FieldElement> PmMessage<F> {
    pub fn zero(l: usize) -> Self {
        Self {
            s1: Matrix::zeros(l, l),
            s2: Matrix::zeros(l, l),
        }
    }

    pub fn new(s1: Matrix<F>, s2: Matrix<F>) -> Result<Self> {
        let l = s1.rows();
        for s in [&s1, &s2] {
            if s.rows() != l || s.cols() != l {
                return Err(Error::DimensionMismatch(format!(
                    "message blocks must be {l}x{l}"
                )));
            }
            if s.transpose() != *s {
                return Err(Error::InvalidParameters(
                    "message blocks must be symmetric".into(),
                ));
            }
        }
        Ok(Self { s1, s2 })
    }

    /// Builds the message from `k(k-1)` free symbols: the upper triangle of
    /// `S1` in row-major order, then the upper triangle of `S2`.
    pub fn from_symbols(l: usize, symbols: &[F]) -> Result<Self> {
        let tri = l * (l + 1) / 2;
        if symbols.len() != 2 * tri {
            return Err(Error::DimensionMismatch(format!(
                "expected {} message symbols, got {}",
                2 * tri,
                symbols.len()
            )));
        }
        let mut blocks = [Matrix::zeros(l, l), Matrix::zeros(l, l)];
        let mut it = symbols.iter().copied();
        for block in &mut blocks {
            for r in 0..l {
                for c in r..l {
                    let v = it.next().expect("length checked");
                    block[(r, c)] = v;
                    block[(c, r)] = v;
                }
            }
        }
        let [s1, s2] = blocks;
        Ok(Self { s1, s2 })
    }

    pub fn to_symbols(&self) -> Vec<F> {
        let l = self.s1.rows();
        let mut out = Vec::with_capacity(l * (l + 1));
        for block in [&self.s1, &self.s2] {
            for r in 0..l {
                for c in r..l {
                    out.push(block[(r, c)]);
                }
            }
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(l: usize, rng: &mut R) -> Self {
        let symbols: Vec<F> = (0..l * (l + 1)).map(|_| F::random(rng)).collect();
        Self::from_symbols(l, &symbols).expect("symbol count matches")
    }

    /// `M = [S1; S2]`, a `2l x l` matrix.
    pub fn stacked(&self) -> Matrix<F> {
        let l = self.s1.rows();
        let mut data = Vec::with_capacity(2 * l * l);
        data.extend_from_slice(self.s1.as_slice());
        data.extend_from_slice(self.s2.as_slice());
        Matrix::from_vec(2 * l, l, data).expect("2l x l")
    }
}

/// A product-matrix MSR code: parameters plus the encoding matrix `Psi`.
#[derive(Debug, Clone)]
pub struct PmCode<F> {
    params: PmParams<F>,
    psi: Matrix<F>,
}

impl<F: FieldElement> PmCode<F> {
    pub fn new(params: PmParams<F>) -> Self {
        let nodes: Vec<usize> = (0..params.n()).collect();
        let psi = params.psi_rows(&nodes);
        Self { params, psi }
    }

    pub fn params(&self) -> &PmParams<F> {
        &self.params
    }

    pub fn psi(&self) -> &Matrix<F> {
        &self.psi
    }

    /// `C = Psi M`; column `i` of the codeword is row `i` of `C`.
    pub fn encode(&self, msg: &PmMessage<F>) -> Result<Codeword<F>> {
        let l = self.params.l();
        if msg.s1.rows() != l || msg.s2.rows() != l {
            return Err(Error::DimensionMismatch(format!(
                "message blocks must be {l}x{l}"
            )));
        }
        let c = self.psi.mul(&msg.stacked())?;
        Codeword::from_columns((0..self.params.n()).map(|i| c.row(i).to_vec()).collect())
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Codeword<F> {
        let msg = PmMessage::random(self.params.l(), rng);
        self.encode(&msg).expect("message sized for these parameters")
    }

    fn check_word(&self, word: &Codeword<F>) -> Result<()> {
        if word.n() != self.params.n() || word.l() != self.params.l() {
            return Err(Error::DimensionMismatch(format!(
                "codeword is {}x{}, code is {}x{}",
                word.l(),
                word.n(),
                self.params.l(),
                self.params.n()
            )));
        }
        Ok(())
    }

    /// The single symbol `C_helper . phi_failed^T` that `helper` sends for the
    /// repair of `failed`.
    pub fn helper_symbol(&self, word: &Codeword<F>, helper: usize, failed: usize) -> Result<F> {
        self.check_word(word)?;
        self.params.check_node(helper)?;
        self.params.check_node(failed)?;
        if helper == failed {
            return Err(Error::InvalidParameters(
                "a node cannot help repair itself".into(),
            ));
        }
        let phi = self.params.phi(failed);
        Ok(word.column(helper).iter().zip(&phi).map(|(&c, &p)| c * p).sum())
    }

    /// `U = (Psi_D^T)^{-1} [I_l; lambda_f I_l]`, a `d x l` matrix whose rows
    /// satisfy `C_f = sum_i y_i U_i` for the helper symbols `y_i`.
    pub fn repair_matrix(&self, helpers: &[usize], failed: usize) -> Result<Matrix<F>> {
        let l = self.params.l();
        let d = self.params.d();
        self.params.check_node(failed)?;
        if helpers.len() != d {
            return Err(Error::InvalidParameters(format!(
                "need {d} helpers, got {}",
                helpers.len()
            )));
        }
        for &h in helpers {
            self.params.check_node(h)?;
            if h == failed {
                return Err(Error::InvalidParameters("failed node listed as helper".into()));
            }
        }
        if !all_distinct(helpers) {
            return Err(Error::InvalidParameters("helpers must be distinct".into()));
        }
        let psi_d = self.params.psi_rows(helpers);
        let mut selector = Matrix::zeros(2 * l, l);
        let lf = self.params.lambda(failed);
        for i in 0..l {
            selector[(i, i)] = F::ONE;
            selector[(l + i, i)] = lf;
        }
        psi_d.transpose().inverse()?.mul(&selector)
    }

    /// Direct (non-graph) repair: `C_f = sum_i y_i U_i`.
    pub fn repair(&self, word: &Codeword<F>, helpers: &[usize], failed: usize) -> Result<Vec<F>> {
        let u = self.repair_matrix(helpers, failed)?;
        let y = helpers
            .iter()
            .map(|&h| self.helper_symbol(word, h, failed))
            .collect::<Result<Vec<F>>>()?;
        u.vec_mul(&y)
    }

    /// True iff every k columns determine the message. Enumerates all
    /// k-subsets, so `n` is capped at [`MDS_CHECK_MAX_N`].
    pub fn mds_check(&self) -> Result<bool> {
        let n = self.params.n();
        let k = self.params.k();
        let l = self.params.l();
        if n > MDS_CHECK_MAX_N {
            return Err(Error::SizeCap(format!(
                "MDS check enumerates subsets only for n <= {MDS_CHECK_MAX_N}"
            )));
        }
        let len = self.params.message_len();
        // Generator rows: codeword image of each unit message, flattened
        // node-major so that a subset picks a block of columns.
        let mut images = Vec::with_capacity(len);
        for s in 0..len {
            let mut symbols = alloc::vec![F::ZERO; len];
            symbols[s] = F::ONE;
            let msg = PmMessage::from_symbols(l, &symbols)?;
            images.push(self.encode(&msg)?);
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut g = Matrix::zeros(len, k * l);
            for (s, word) in images.iter().enumerate() {
                for (pos, &node) in subset.iter().enumerate() {
                    for j in 0..l {
                        g[(s, pos * l + j)] = word.get(node, j);
                    }
                }
            }
            if g.rank() < len {
                return Ok(false);
            }
            if !next_subset(&mut subset, n) {
                return Ok(true);
            }
        }
    }
}

/// Advances `subset` (sorted, distinct, values below `n`) to the next
/// k-subset in lexicographic order.
pub(crate) fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{Gf256, Gf65536};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn code(n: usize, k: usize) -> PmCode<Gf256> {
        PmCode::new(PmParams::new(n, k).unwrap())
    }

    /// Recover the message from `k` columns by solving the linear system in
    /// the k(k-1) free symbols directly.
    fn decode_from(code: &PmCode<Gf256>, word: &Codeword<Gf256>, nodes: &[usize]) -> Vec<Gf256> {
        let l = code.params().l();
        let len = code.params().message_len();
        let mut g = Matrix::zeros(len, len);
        for s in 0..len {
            let mut sym = alloc::vec![Gf256::ZERO; len];
            sym[s] = Gf256::ONE;
            let w = code.encode(&PmMessage::from_symbols(l, &sym).unwrap()).unwrap();
            for (pos, &node) in nodes.iter().enumerate() {
                for j in 0..l {
                    g[(pos * l + j, s)] = w.get(node, j);
                }
            }
        }
        let mut rhs = Vec::new();
        for &node in nodes {
            rhs.extend_from_slice(word.column(node));
        }
        g.solve(&rhs).unwrap()
    }

    #[test]
    fn zero_message_encodes_to_zero() {
        let c = code(6, 3);
        let w = c.encode(&PmMessage::zero(2)).unwrap();
        assert_eq!(w, Codeword::zero(6, 2));
    }

    #[test]
    fn identity_message_gives_phi() {
        let c = code(6, 3);
        let msg = PmMessage::new(Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        let w = c.encode(&msg).unwrap();
        for i in 0..6 {
            assert_eq!(w.column(i), c.params().phi(i).as_slice());
        }
    }

    #[test]
    fn any_k_columns_decode_the_message() {
        let c = code(6, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let msg = PmMessage::random(2, &mut rng);
            let w = c.encode(&msg).unwrap();
            let mut subset = alloc::vec![0, 1, 2];
            loop {
                assert_eq!(decode_from(&c, &w, &subset), msg.to_symbols());
                if !next_subset(&mut subset, 6) {
                    break;
                }
            }
        }
    }

    #[test]
    fn message_symbol_layout_roundtrips() {
        let syms: Vec<Gf256> = (1..=6).map(Gf256).collect();
        let m = PmMessage::from_symbols(2, &syms).unwrap();
        assert_eq!(m.s1[(0, 1)], Gf256(2));
        assert_eq!(m.s1[(1, 0)], Gf256(2));
        assert_eq!(m.s2[(1, 1)], Gf256(6));
        assert_eq!(m.to_symbols(), syms);
        assert!(PmMessage::from_symbols(2, &syms[..5]).is_err());
    }

    #[test]
    fn asymmetric_message_rejected() {
        let mut s1 = Matrix::<Gf256>::zeros(2, 2);
        s1[(0, 1)] = Gf256(1);
        assert!(PmMessage::new(s1, Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn helper_symbol_preconditions() {
        let c = code(6, 3);
        let w = Codeword::zero(6, 2);
        assert_eq!(c.helper_symbol(&w, 1, 0).unwrap(), Gf256::ZERO);
        assert!(c.helper_symbol(&w, 2, 2).is_err());
        assert!(matches!(
            c.helper_symbol(&w, 9, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn stacked_helper_symbols_equal_psi_d_times_projection() {
        let c = code(7, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let msg = PmMessage::random(2, &mut rng);
        let w = c.encode(&msg).unwrap();
        let failed = 5;
        let helpers = [0, 2, 3, 6];
        let y: Vec<Gf256> = helpers
            .iter()
            .map(|&h| c.helper_symbol(&w, h, failed).unwrap())
            .collect();
        let phi_f = c.params().phi(failed);
        let mut proj = msg.s1.mul_vec(&phi_f).unwrap();
        proj.extend(msg.s2.mul_vec(&phi_f).unwrap());
        let rhs = c.params().psi_rows(&helpers).mul_vec(&proj).unwrap();
        assert_eq!(y, rhs);
    }

    #[test]
    fn repair_matrix_reproduces_failed_column_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (n, k) in [(6, 3), (8, 3), (8, 4)] {
            let c = code(n, k);
            let d = c.params().d();
            for _ in 0..3 {
                let w = c.random_codeword(&mut rng);
                for failed in 0..n {
                    let others: Vec<usize> = (0..n).filter(|&i| i != failed).collect();
                    let mut pick: Vec<usize> = (0..d).collect();
                    loop {
                        let helpers: Vec<usize> = pick.iter().map(|&p| others[p]).collect();
                        assert_eq!(c.repair(&w, &helpers, failed).unwrap(), w.column(failed));
                        if !next_subset(&mut pick, others.len()) {
                            break;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn repair_matrix_agrees_with_solve_then_project() {
        // Second route: solve Psi_D z = e_i for each unit y, then project
        // z = [S1 phi_f; S2 phi_f] through C_f = z_top + lambda_f z_bottom.
        let c = code(6, 3);
        let helpers = [0, 1, 3, 4];
        let failed = 5;
        let u = c.repair_matrix(&helpers, failed).unwrap();
        let psi_d = c.params().psi_rows(&helpers);
        let l = 2;
        let lf = c.params().lambda(failed);
        for i in 0..4 {
            let mut e = alloc::vec![Gf256::ZERO; 4];
            e[i] = Gf256::ONE;
            let z = psi_d.solve(&e).unwrap();
            let row: Vec<Gf256> = (0..l).map(|j| z[j] + lf * z[l + j]).collect();
            assert_eq!(u.row(i), row.as_slice());
        }
    }

    #[test]
    fn repair_is_linear() {
        let c = code(6, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let w1 = c.random_codeword(&mut rng);
        let w2 = c.random_codeword(&mut rng);
        let (a, b) = (Gf256(17), Gf256(201));
        let mix = w1.linear_combination(a, &w2, b).unwrap();
        let helpers = [1, 2, 3, 4];
        let r1 = c.repair(&w1, &helpers, 0).unwrap();
        let r2 = c.repair(&w2, &helpers, 0).unwrap();
        let rm = c.repair(&mix, &helpers, 0).unwrap();
        for j in 0..2 {
            assert_eq!(rm[j], a * r1[j] + b * r2[j]);
        }
    }

    #[test]
    fn psi_d_has_full_rank() {
        // Determinant-nonzero oracle via the inverse existing.
        let c = code(8, 4);
        let helpers = [0, 2, 3, 5, 6, 7];
        let psi_d = c.params().psi_rows(&helpers);
        assert!(psi_d.inverse().is_ok());
        assert_eq!(psi_d.rank(), 6);
    }

    #[test]
    fn mds_property_holds() {
        assert!(code(6, 3).mds_check().unwrap());
        assert!(code(7, 4).mds_check().unwrap());
        let big = PmCode::new(PmParams::<Gf256>::new(13, 3).unwrap());
        assert!(matches!(big.mds_check(), Err(Error::SizeCap(_))));
    }

    #[test]
    fn works_over_gf65536() {
        let c = PmCode::new(PmParams::<Gf65536>::new(9, 4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let w = c.random_codeword(&mut rng);
        let helpers = [0, 1, 2, 3, 4, 5];
        assert_eq!(c.repair(&w, &helpers, 8).unwrap(), w.column(8));
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(PmParams::<Gf256>::new(4, 3).is_err()); // n <= d
        assert!(PmParams::<Gf256>::new(5, 1).is_err());
        let dup = alloc::vec![Gf256(1), Gf256(2), Gf256(2), Gf256(4), Gf256(5)];
        assert!(PmParams::with_points(3, dup).is_err());
        // l = 3 divides 255, so alpha^0 and alpha^85 give equal lambdas.
        assert!(PmParams::<Gf256>::new(86, 4).is_err());
    }
}
