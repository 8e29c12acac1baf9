//! Random-graph experiments: sampling, threshold guidance, Monte-Carlo
//! estimates of accumulate-and-forward versus intermediate-processing
//! bandwidth, and the branching-process check.
//!
//! Trial `i` draws its graph from the seed `trial_seed(base, i)`, so trials
//! can run in any order or in parallel and still reproduce exactly.

mod gw;
mod sample;
mod threshold;

use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::bounds::{af_formula, tree_bound, CodeProfile};
use crate::graph::{build_repair_tree, select_helpers_in_component};
use crate::rng::{rng_from_seed, trial_seed};
use crate::{Error, Rational, Result};

pub use gw::{galton_watson_check, gw_summarize, gw_trial, sample_gw_tree, GwReport, GwSpec};
pub use sample::{sample_gnp, sample_regular, REGULAR_RETRY_CAP};
pub use threshold::{gnp_window, threshold_gnp, threshold_regular, ThresholdReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Gnp { p: f64 },
    Regular { r: usize },
}

impl Family {
    /// The ensemble parameter, `p` or `r`.
    pub fn param(&self) -> f64 {
        match *self {
            Family::Gnp { p } => p,
            Family::Regular { r } => r as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Gnp { p } => sample::check_probability(p)?,
            Family::Regular { r } => sample::check_regular(self.n, r)?,
        }
        if self.k == 0 || self.k > self.d || self.d >= self.n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= d < n, got n = {}, k = {}, d = {}",
                self.n, self.k, self.d
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameters("at least one trial".into()));
        }
        Ok(())
    }

    pub fn threshold(&self) -> ThresholdReport {
        match self.family {
            Family::Gnp { p } => threshold_gnp(self.n, p, self.d),
            Family::Regular { r } => threshold_regular(self.n, r, self.d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub connected: bool,
    /// Whether the failed vertex's component holds `d` helpers.
    pub feasible: bool,
    /// Depth of the helper layers (0 when infeasible).
    pub t: usize,
    pub layer_sizes: Vec<usize>,
    pub beta_af: Option<Rational>,
    pub beta_ip: Option<Rational>,
}

/// Runs trial `trial`: failed vertex 0, nearest helpers, BFS tree, and the
/// two bandwidths with one symbol per helper.
pub fn run_trial(spec: &EnsembleSpec, trial: usize) -> Result<TrialRecord> {
    let seed = trial_seed(spec.seed, trial as u64);
    let mut rng = rng_from_seed(seed);
    let g = match spec.family {
        Family::Gnp { p } => sample::sample_gnp_with(spec.n, p, &mut rng),
        Family::Regular { r } => sample::sample_regular_with(spec.n, r, &mut rng)?,
    };
    let connected = g.is_connected();
    let mut record = TrialRecord {
        trial,
        seed,
        connected,
        feasible: false,
        t: 0,
        layer_sizes: Vec::new(),
        beta_af: None,
        beta_ip: None,
    };
    if let Some((helpers, layers)) = select_helpers_in_component(&g, 0, spec.d)? {
        let tree = build_repair_tree(&g, 0, &helpers)?;
        let profile = CodeProfile::unit(spec.n, spec.k, spec.d)?;
        record.feasible = true;
        record.t = layers.t();
        record.layer_sizes = layers.sizes();
        record.beta_af = Some(af_formula(&layers, &profile));
        record.beta_ip = Some(tree_bound(&tree, &profile)?);
    }
    Ok(record)
}

pub fn run_trials(spec: &EnsembleSpec) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    (0..spec.trials).map(|i| run_trial(spec, i)).collect()
}

/// Nearest-rank quantiles `(min, q25, median, q75, max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Quantiles {
    fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.total_cmp(b));
        let rank = |q: f64| {
            let idx = libm::ceil(q * v.len() as f64) as usize;
            v[idx.clamp(1, v.len()) - 1]
        };
        Some(Self {
            min: v[0],
            q25: rank(0.25),
            median: rank(0.5),
            q75: rank(0.75),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub feasible: usize,
    /// Feasible trials whose helper depth equals the predicted threshold.
    pub at_predicted_depth: usize,
    pub predicted_t: Option<usize>,
    pub mean_af: Option<f64>,
    pub mean_ip: Option<f64>,
    /// Fraction of feasible trials with `beta_IP < beta_AF`.
    pub ip_below_af: Option<f64>,
    pub af: Option<Quantiles>,
    pub ip: Option<Quantiles>,
}

impl Summary {
    pub fn feasible_fraction(&self) -> f64 {
        self.feasible as f64 / self.trials as f64
    }

    /// `mean beta_AF / mean beta_IP`.
    pub fn mean_ratio(&self) -> Option<f64> {
        Some(self.mean_af? / self.mean_ip?)
    }
}

/// Summary statistics; independent of the order of `records`.
pub fn summarize(spec: &EnsembleSpec, records: &[TrialRecord]) -> Summary {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trial);
    let predicted_t = spec.threshold().t;
    let feasible: Vec<&TrialRecord> = sorted.iter().copied().filter(|r| r.feasible).collect();
    let to_f = |x: &Option<Rational>| x.as_ref().and_then(|v| v.to_f64());
    let af: Vec<f64> = feasible.iter().filter_map(|r| to_f(&r.beta_af)).collect();
    let ip: Vec<f64> = feasible.iter().filter_map(|r| to_f(&r.beta_ip)).collect();
    let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    let below = feasible.iter().filter(|r| r.beta_ip < r.beta_af).count();
    Summary {
        trials: records.len(),
        feasible: feasible.len(),
        at_predicted_depth: feasible.iter().filter(|r| Some(r.t) == predicted_t).count(),
        predicted_t,
        mean_af: mean(&af),
        mean_ip: mean(&ip),
        ip_below_af: (!feasible.is_empty()).then(|| below as f64 / feasible.len() as f64),
        af: Quantiles::of(&af),
        ip: Quantiles::of(&ip),
    }
}
