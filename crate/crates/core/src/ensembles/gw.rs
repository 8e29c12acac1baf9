//! Random repair trees from a branching process: every vertex above depth
//! `t - 1` has one child with probability `p` and two otherwise; the last
//! layer then holds the remaining `d - |N_{t-1}|` helpers, attached round
//! robin to layer `t - 1`.

use alloc::format;
use alloc::vec::Vec;

use libm::{pow, sqrt};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::bounds::{af_formula, layered_ip_cost, CodeProfile};
use crate::graph::{RepairTree, VertexId};
use crate::rng::{rng_from_seed, trial_seed};
use crate::{Error, Result};

use super::sample::check_probability;

#[derive(Debug, Clone, PartialEq)]
pub struct GwSpec {
    /// Probability of a single child.
    pub p: f64,
    pub depth: usize,
    /// Deepest layer allowed to combine.
    pub switch_depth: usize,
    pub d: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
}

impl GwSpec {
    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)?;
        if self.depth == 0 || self.depth >= usize::BITS as usize - 1 {
            return Err(Error::InvalidParameters("depth must be positive".into()));
        }
        if self.switch_depth >= self.depth {
            return Err(Error::InvalidParameters(format!(
                "switch depth {} must be below the depth {}",
                self.switch_depth, self.depth
            )));
        }
        if self.d < (1usize << self.depth) - 1 {
            return Err(Error::InvalidParameters(format!(
                "d = {} cannot fill {} layers; need d >= 2^t - 1",
                self.d, self.depth
            )));
        }
        if self.k == 0 || self.k > self.d {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= d, got k = {}",
                self.k
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameters("at least one trial".into()));
        }
        Ok(())
    }

    /// Mean offspring `2 - p`.
    pub fn mean_offspring(&self) -> f64 {
        2.0 - self.p
    }

    /// `t d - sum_{i<t} (t - i) m^i`.
    pub fn expected_af(&self) -> f64 {
        let m = self.mean_offspring();
        let t = self.depth;
        let mut e = (t * self.d) as f64;
        for i in 1..t {
            e -= (t - i) as f64 * pow(m, i as f64);
        }
        e
    }

    /// `s d - sum_{i<=s} m^i (d - k + 1 + s - i)`.
    pub fn expected_gap(&self) -> f64 {
        let m = self.mean_offspring();
        let s = self.switch_depth;
        let mut e = (s * self.d) as f64;
        for i in 1..=s {
            e -= pow(m, i as f64) * (self.d - self.k + 1 + s - i) as f64;
        }
        e
    }
}

/// Samples one tree on vertices `0..=d`, rooted at 0.
pub fn sample_gw_tree<R: Rng + ?Sized>(p: f64, depth: usize, d: usize, rng: &mut R) -> Result<RepairTree> {
    let mut links: Vec<(VertexId, VertexId)> = Vec::with_capacity(d);
    let mut frontier: Vec<VertexId> = alloc::vec![0];
    let mut next_id = 1;
    for _ in 1..depth {
        let mut layer = Vec::new();
        for &parent in &frontier {
            let children = if rng.gen_bool(p) { 1 } else { 2 };
            for _ in 0..children {
                links.push((next_id, parent));
                layer.push(next_id);
                next_id += 1;
            }
        }
        frontier = layer;
    }
    if next_id > d + 1 {
        return Err(Error::InvalidParameters(format!(
            "{} inner vertices exceed d = {d}",
            next_id - 1
        )));
    }
    for (i, v) in (next_id..=d).enumerate() {
        links.push((v, frontier[i % frontier.len()]));
    }
    RepairTree::from_parents(0, &links)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwReport {
    pub trials: usize,
    pub mean_af: f64,
    pub se_af: f64,
    pub expected_af: f64,
    pub mean_gap: f64,
    pub se_gap: f64,
    pub expected_gap: f64,
    /// Smallest per-tree `beta_AF - beta_IP`.
    pub min_gap: f64,
}

fn within(mean: f64, se: f64, expected: f64) -> bool {
    (mean - expected).abs() <= 3.0 * se + 1e-9
}

impl GwReport {
    pub fn af_within(&self) -> bool {
        within(self.mean_af, self.se_af, self.expected_af)
    }

    pub fn gap_within(&self) -> bool {
        within(self.mean_gap, self.se_gap, self.expected_gap)
    }

    pub fn passes(&self) -> bool {
        self.af_within() && self.gap_within() && self.min_gap >= 0.0
    }
}

/// Per-tree `(beta_AF, beta_IP)` with unit per-helper download.
pub fn gw_trial(spec: &GwSpec, trial: usize) -> Result<(f64, f64)> {
    let mut rng = rng_from_seed(trial_seed(spec.seed, trial as u64));
    let tree = sample_gw_tree(spec.p, spec.depth, spec.d, &mut rng)?;
    let profile = CodeProfile::unit(spec.d + 1, spec.k, spec.d)?;
    let af = af_formula(&tree.layers(), &profile);
    let ip = layered_ip_cost(&tree, &profile, spec.switch_depth);
    let f = |x: crate::Rational| x.to_f64().unwrap_or(f64::NAN);
    Ok((f(af), f(ip)))
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, sqrt(var / n))
}

/// Builds the report from per-tree results in trial order.
pub fn gw_summarize(spec: &GwSpec, results: &[(f64, f64)]) -> GwReport {
    let af: Vec<f64> = results.iter().map(|r| r.0).collect();
    let gap: Vec<f64> = results.iter().map(|r| r.0 - r.1).collect();
    let (mean_af, se_af) = mean_se(&af);
    let (mean_gap, se_gap) = mean_se(&gap);
    GwReport {
        trials: results.len(),
        mean_af,
        se_af,
        expected_af: spec.expected_af(),
        mean_gap,
        se_gap,
        expected_gap: spec.expected_gap(),
        min_gap: gap.iter().copied().fold(f64::INFINITY, f64::min),
    }
}

pub fn galton_watson_check(spec: &GwSpec) -> Result<GwReport> {
    spec.validate()?;
    let results = (0..spec.trials)
        .map(|i| gw_trial(spec, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(gw_summarize(spec, &results))
}
