//! Array code with `d = k + 1`, `l = 2^n` repaired over the two-neighbour
//! topology: the failed node 0 sees only helpers 1 and 2, and the far
//! helpers `3..=k+1` are adjacent to both of them.
//!
//! Plane `a` is split as `a = (g << 3) | s` where the low three bits `s`
//! belong to nodes 0, 1, 2. For every `g` the far helpers send partial sums
//! over triples of `s` to nodes 1 and 2, those two exchange one pair of sums,
//! and each then forwards two pairs of recovered combinations to node 0.
//! Each helper provides `beta = 2^(n-1)` symbols in total.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::parity::{check_plane, lambda_table, sample_plane, solve_erasures};
use crate::codeword::Codeword;
use crate::galois::FieldElement;
use crate::graph::{Graph, VertexId};
use crate::repair::Transcript;
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Largest supported code length.
pub const TWONBR_MAX_N: usize = 16;

/// Triples of low bits summed in the messages for node 1 (first two) and
/// node 2 (last two). Bit `j` of an entry is the plane bit of node `j`.
const TO_FIRST: [[usize; 3]; 2] = [[0b000, 0b010, 0b001], [0b100, 0b110, 0b111]];
const TO_SECOND: [[usize; 3]; 2] = [[0b000, 0b001, 0b101], [0b110, 0b011, 0b111]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNbrParams<F> {
    n: usize,
    k: usize,
    lambda: Vec<Vec<F>>,
}

impl<F: FieldElement> TwoNbrParams<F> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > TWONBR_MAX_N {
            return Err(Error::SizeCap(format!("l = 2^n; n is capped at {TWONBR_MAX_N}")));
        }
        if k < 2 || n < k + 2 {
            return Err(Error::InvalidParameters(format!(
                "need k >= 2 and n >= k + 2, got n = {n}, k = {k}"
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

    pub fn l(&self) -> usize {
        1 << self.n
    }

    /// Symbols each helper provides, `l / 2`.
    pub fn beta(&self) -> usize {
        self.l() / 2
    }

    /// Number of `(s_hat, s)` groups, `2^(n-3)`.
    pub fn groups(&self) -> usize {
        1 << (self.n - 3)
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
        for a in 0..self.l() {
            let points: Vec<F> = (0..self.n).map(|i| self.point(i, a)).collect();
            for (i, v) in sample_plane(&points, self.k, rng).into_iter().enumerate() {
                word.set(i, a, v);
            }
        }
        word
    }

    pub fn check(&self, word: &Codeword<F>) -> bool {
        if self.check_word(word).is_err() {
            return false;
        }
        (0..self.l()).all(|a| {
            let points: Vec<F> = (0..self.n).map(|i| self.point(i, a)).collect();
            let values: Vec<F> = (0..self.n).map(|i| word.get(i, a)).collect();
            check_plane(&points, &values, self.n - self.k)
        })
    }

    /// Checks that `g` realises the two-neighbour topology for this code.
    pub fn check_topology(&self, g: &Graph) -> Result<()> {
        let last = self.k + 1;
        if g.n() <= last || g.n() > self.n {
            return Err(Error::WrongTopology(format!(
                "graph has {} vertices, need between {} and {}",
                g.n(),
                last + 1,
                self.n
            )));
        }
        let near: Vec<VertexId> = g.neighbors(0).iter().copied().filter(|&v| v <= last).collect();
        if near != [1, 2] {
            return Err(Error::WrongTopology(format!(
                "vertex 0 must see exactly helpers 1 and 2, sees {near:?}"
            )));
        }
        if !g.has_edge(1, 2) {
            return Err(Error::WrongTopology("helpers 1 and 2 must be adjacent".into()));
        }
        for i in 3..=last {
            if !g.has_edge(i, 1) || !g.has_edge(i, 2) {
                return Err(Error::WrongTopology(format!(
                    "helper {i} must be adjacent to 1 and 2"
                )));
            }
        }
        Ok(())
    }

    /// Sum of node `i`'s symbols over the planes `(g << 3) | s`, `s` in `set`.
    fn partial(&self, word: &Codeword<F>, i: usize, g: usize, set: &[usize]) -> F {
        set.iter().map(|&s| word.get(i, (g << 3) | s)).sum()
    }

    /// The message node `helper` sends towards relay `relay` (1 or 2) for
    /// group `g` and pair index `pair` (0 or 1).
    pub fn mu(&self, word: &Codeword<F>, helper: usize, relay: usize, g: usize, pair: usize) -> Result<F> {
        self.check_word(word)?;
        let set = Self::triple(relay, pair)?;
        if helper == 0 || helper == relay || helper > self.k + 1 {
            return Err(Error::InvalidParameters(format!(
                "node {helper} does not send to relay {relay}"
            )));
        }
        Ok(self.partial(word, helper, g, &set))
    }

    fn triple(relay: usize, pair: usize) -> Result<[usize; 3]> {
        match (relay, pair) {
            (1, p @ 0..=1) => Ok(TO_FIRST[p]),
            (2, p @ 0..=1) => Ok(TO_SECOND[p]),
            _ => Err(Error::InvalidParameters(format!(
                "no message set for relay {relay}, pair {pair}"
            ))),
        }
    }

    /// Relay `relay` recovers the two combinations of node 0 carried by the
    /// summed parity equations of one triple, from its own column and the
    /// messages of every other helper.
    pub fn relay_recover(
        &self,
        relay: usize,
        g: usize,
        pair: usize,
        own: &[F],
        received: &BTreeMap<VertexId, F>,
    ) -> Result<[F; 2]> {
        let set = Self::triple(relay, pair)?;
        let base = g << 3;
        let (mut kp, mut kv, mut up) = (Vec::new(), Vec::new(), Vec::new());
        up.push(self.lambda[0][0]);
        up.push(self.lambda[0][1]);
        for i in 1..self.n {
            let bits: Vec<usize> = set.iter().map(|&s| ((base | s) >> i) & 1).collect();
            if i == relay {
                for b in 0..2 {
                    let part: Vec<usize> = set
                        .iter()
                        .zip(&bits)
                        .filter(|(_, &x)| x == b)
                        .map(|(&s, _)| s)
                        .collect();
                    if !part.is_empty() {
                        kp.push(self.lambda[i][b]);
                        kv.push(part.iter().map(|&s| own[base | s]).sum());
                    }
                }
            } else if i <= self.k + 1 {
                if bits.iter().any(|&b| b != bits[0]) {
                    return Err(Error::WrongTopology(format!("helper {i} splits the triple")));
                }
                kp.push(self.lambda[i][bits[0]]);
                kv.push(*received.get(&i).ok_or(Error::MissingHelper(i))?);
            } else {
                up.push(self.lambda[i][bits[0]]);
            }
        }
        let solved = solve_erasures(&kp, &kv, &up)?;
        Ok([solved[0], solved[1]])
    }

    /// Node 0 solves its eight symbols of a group from the four pairs it
    /// receives; the result is indexed by the low three plane bits.
    pub fn solve_group(from_first: [[F; 2]; 2], from_second: [[F; 2]; 2]) -> [F; 8] {
        let [[a, b], [c, d]] = from_first;
        let [[f, e], [h, g]] = from_second;
        let mut out = [F::ZERO; 8];
        out[0b000] = f;
        out[0b010] = a - f;
        out[0b001] = b;
        out[0b101] = e - b;
        out[0b111] = d;
        out[0b011] = g - d;
        out[0b110] = h;
        out[0b100] = c - h;
        out
    }

    /// Runs the full protocol on `g`, returning node 0's column and the
    /// transcript of every transmission.
    pub fn repair(&self, word: &Codeword<F>, g: &Graph) -> Result<(Vec<F>, Transcript<F>)> {
        self.check_word(word)?;
        self.check_topology(g)?;
        let last = self.k + 1;
        let mut transcript = Transcript::new();
        let mut column = vec![F::ZERO; self.l()];
        for grp in 0..self.groups() {
            let mut inbox: [[BTreeMap<VertexId, F>; 2]; 3] = Default::default();
            for i in 3..=last {
                for relay in [1, 2] {
                    let msgs = [self.mu(word, i, relay, grp, 0)?, self.mu(word, i, relay, grp, 1)?];
                    transcript.record(i, relay, &msgs);
                    for (pair, m) in msgs.into_iter().enumerate() {
                        inbox[relay][pair].insert(i, m);
                    }
                }
            }
            for (from, to) in [(2, 1), (1, 2)] {
                let msgs = [self.mu(word, from, to, grp, 0)?, self.mu(word, from, to, grp, 1)?];
                transcript.record(from, to, &msgs);
                for (pair, m) in msgs.into_iter().enumerate() {
                    inbox[to][pair].insert(from, m);
                }
            }
            let mut recovered = [[[F::ZERO; 2]; 2]; 3];
            for relay in [1, 2] {
                for pair in 0..2 {
                    let r = self.relay_recover(relay, grp, pair, word.column(relay), &inbox[relay][pair])?;
                    recovered[relay][pair] = r;
                }
                let flat = [
                    recovered[relay][0][0],
                    recovered[relay][0][1],
                    recovered[relay][1][0],
                    recovered[relay][1][1],
                ];
                transcript.record(relay, 0, &flat);
            }
            let symbols = Self::solve_group(recovered[1], recovered[2]);
            for (s, v) in symbols.into_iter().enumerate() {
                column[(grp << 3) | s] = v;
            }
        }
        Ok((column, transcript))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Gf256;
    use crate::graph::named;

    #[test]
    fn sampled_word_is_valid() {
        let p = TwoNbrParams::<Gf256>::new(6, 3).unwrap();
        assert!(p.check(&Codeword::zero(6, 64)));
        let w = p.sample(1);
        assert!(p.check(&w));
        let mut bad = w.clone();
        bad.set(5, 9, w.get(5, 9) + Gf256(1));
        assert!(!p.check(&bad));
    }

    #[test]
    fn message_sets_match_definition() {
        let p = TwoNbrParams::<Gf256>::new(6, 3).unwrap();
        let w = p.sample(2);
        // mu_{2,1} for helper 3, group 1: planes 8 + {000, 010, 100}
        // written with node 0's bit first.
        let expect = w.get(3, 8) + w.get(3, 8 + 0b010) + w.get(3, 8 + 0b001);
        assert_eq!(p.mu(&w, 3, 1, 1, 0).unwrap(), expect);
        let expect = w.get(3, 8 + 0b110) + w.get(3, 8 + 0b011) + w.get(3, 8 + 0b111);
        assert_eq!(p.mu(&w, 3, 2, 1, 1).unwrap(), expect);
        assert!(p.mu(&w, 0, 1, 0, 0).is_err());
        assert!(p.mu(&w, 3, 3, 0, 0).is_err());
    }

    #[test]
    fn repair_recovers_column_with_expected_bandwidth() {
        for (n, k) in [(6, 3), (5, 2), (7, 3), (7, 4)] {
            let p = TwoNbrParams::<Gf256>::new(n, k).unwrap();
            let g = named::two_neighbour(k);
            for seed in 0..3 {
                let w = p.sample(seed);
                let (col, t) = p.repair(&w, &g).unwrap();
                assert_eq!(col, w.column(0));
                assert_eq!(t.total(), (p.d() + 1) * p.beta());
                // Every helper provides beta symbols: far helpers send 4 per
                // group, 1 and 2 send 2 to each other and 4 to node 0.
                for i in 3..=k + 1 {
                    assert_eq!(t.count(i, 1) + t.count(i, 2), 4 * p.groups());
                }
            }
        }
    }

    #[test]
    fn six_nodes_dimension_three_totals_160() {
        let p = TwoNbrParams::<Gf256>::new(6, 3).unwrap();
        let (col, t) = p.repair(&p.sample(7), &named::two_neighbour(3)).unwrap();
        assert_eq!(col.len(), 64);
        assert_eq!(t.total(), 160);
        assert_eq!(
            t.total(),
            (4 * (3 - 1) + 4 + 8) * (1 << (3 - 1)) * (1 << (6 - 3 - 2))
        );
    }

    #[test]
    fn zero_word_and_wrong_topology() {
        let p = TwoNbrParams::<Gf256>::new(6, 3).unwrap();
        let (col, _) = p
            .repair(&Codeword::zero(6, 64), &named::two_neighbour(3))
            .unwrap();
        assert!(col.iter().all(|v| v.is_zero()));
        let star = named::star(4);
        assert!(matches!(
            p.repair(&Codeword::zero(6, 64), &star),
            Err(Error::WrongTopology(_))
        ));
        let mut sparse = named::two_neighbour(3);
        sparse = {
            let edges: Vec<_> = sparse.edges().filter(|&e| e != (2, 4)).collect();
            Graph::from_edges(sparse.n(), &edges).unwrap()
        };
        assert!(p.check_topology(&sparse).is_err());
    }
}
