use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::Graph;
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Restarts allowed before `sample_regular` gives up.
pub const REGULAR_RETRY_CAP: usize = 10_000;

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "edge probability must lie in (0, 1), got {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi graph: every pair independently with probability `p`, pairs
/// visited in lexicographic order.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = rng_from_seed(seed);
    Ok(sample_gnp_with(n, p, &mut rng))
}

pub(crate) fn sample_gnp_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

pub(crate) fn check_regular(n: usize, r: usize) -> Result<()> {
    if r < 3 || r >= n || !(n * r).is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "regular graphs need 3 <= r < n and n r even, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// Simple `r`-regular graph from the pairing model.
///
/// Half-edges are matched one random pair at a time, skipping pairs that
/// would create a loop or a repeated edge; when no admissible pair is left
/// the attempt restarts. This avoids the exponentially small acceptance
/// rate of whole-pairing rejection at moderate `r`.
pub fn sample_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    check_regular(n, r)?;
    let mut rng = rng_from_seed(seed);
    sample_regular_with(n, r, &mut rng)
}

pub(crate) fn sample_regular_with<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Result<Graph> {
    'attempt: for _ in 0..REGULAR_RETRY_CAP {
        let mut g = Graph::new(n);
        let mut points: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, r)).collect();
        while !points.is_empty() {
            let len = points.len();
            let admissible = |i: usize, j: usize, g: &Graph| {
                let (u, v) = (points[i], points[j]);
                u != v && !g.has_edge(u, v)
            };
            let mut chosen = None;
            for _ in 0..4 * len {
                let i = rng.gen_range(0..len);
                let j = rng.gen_range(0..len);
                if i != j && admissible(i, j, &g) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                // Few options left: choose uniformly among the admissible ones.
                let options: Vec<(usize, usize)> = (0..len)
                    .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
                    .filter(|&(i, j)| admissible(i, j, &g))
                    .collect();
                if options.is_empty() {
                    continue 'attempt;
                }
                chosen = Some(options[rng.gen_range(0..options.len())]);
            }
            let (i, j) = chosen.expect("pair chosen");
            g.add_edge(points[i], points[j]).expect("admissible pair");
            let (hi, lo) = if i > j { (i, j) } else { (j, i) };
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Ok(g);
    }
    Err(Error::RetriesExhausted(REGULAR_RETRY_CAP))
}
