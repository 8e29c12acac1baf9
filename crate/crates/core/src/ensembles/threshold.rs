//! Finite-size guidance for choosing experiment parameters.
//!
//! The threshold depth is estimated from the mean-field BFS recursion
//! `g_{i+1} = u_i (1 - (1 - p)^{g_i})`, `u_{i+1} = u_i - g_{i+1}`, started from
//! `g_0 = 1`, `u_0 = n - 1`: the predicted depth is the smallest `t` whose
//! expected ball `N_t = g_1 + ... + g_t` reaches `d + 3 sqrt(d)`. Alongside it
//! the report carries the sparsity check `(np)^{t-1} <= n / 10` and the growth
//! surrogate `p^t n^{t-1} >= 2 ln n + 10`, evaluated at that depth.

use alloc::vec::Vec;

use libm::{log, pow, sqrt};

/// Deepest layer the recursion is followed to.
const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// Predicted repair depth, `None` if the expected component is too small.
    pub t: Option<usize>,
    /// Expected layer sizes `g_1, g_2, ...` up to the predicted depth.
    pub expected_layers: Vec<f64>,
    /// `d + 3 sqrt(d)`.
    pub target: f64,
    /// `(np)^{t-1} <= n / 10` (or `r^{t-1} <= n / 10`).
    pub sparse: bool,
    /// `p^t n^{t-1} >= 2 ln n + 10`; always false for regular graphs.
    pub growth: bool,
}

impl ThresholdReport {
    /// Predicted depth `t` with the sparsity check passing.
    pub fn window_depth(&self) -> Option<usize> {
        self.t.filter(|_| self.sparse)
    }
}

fn target(d: usize) -> f64 {
    d as f64 + 3.0 * sqrt(d as f64)
}

fn layers(n: usize, d: usize, mut next: impl FnMut(f64, f64) -> f64) -> (Option<usize>, Vec<f64>) {
    let goal = target(d);
    let mut unvisited = n as f64 - 1.0;
    let mut frontier = 1.0;
    let mut ball = 0.0;
    let mut sizes = Vec::new();
    for t in 1..=MAX_DEPTH {
        let g = next(frontier, unvisited);
        sizes.push(g);
        ball += g;
        unvisited -= g;
        frontier = g;
        if ball >= goal {
            return (Some(t), sizes);
        }
        if g < 1e-9 {
            break;
        }
    }
    (None, sizes)
}

pub fn threshold_gnp(n: usize, p: f64, d: usize) -> ThresholdReport {
    let q = 1.0 - p;
    let (t, expected_layers) = layers(n, d, |g, u| u * (1.0 - pow(q, g)));
    let nf = n as f64;
    let (sparse, growth) = match t {
        Some(t) => {
            let e = (t - 1) as f64;
            (
                pow(nf * p, e) <= nf / 10.0,
                pow(p, t as f64) * pow(nf, e) >= 2.0 * log(nf) + 10.0,
            )
        }
        None => (false, false),
    };
    ThresholdReport {
        t,
        expected_layers,
        target: target(d),
        sparse,
        growth,
    }
}

/// Regular analogue: each frontier vertex has `r - 1` onward edges (the root
/// has `r`), each landing on an unvisited vertex with probability `u / (n - 1)`.
pub fn threshold_regular(n: usize, r: usize, d: usize) -> ThresholdReport {
    let others = n as f64 - 1.0;
    let mut first = true;
    let (t, expected_layers) = layers(n, d, |g, u| {
        let stubs = if first { r as f64 } else { g * (r as f64 - 1.0) };
        first = false;
        u * (1.0 - pow(1.0 - 1.0 / others, stubs))
    });
    let sparse = t.is_some_and(|t| pow(r as f64, (t - 1) as f64) <= n as f64 / 10.0);
    ThresholdReport {
        t,
        expected_layers,
        target: target(d),
        sparse,
        growth: false,
    }
}

/// Range of `p` for which [`threshold_gnp`] predicts depth exactly `t` with
/// the sparsity check passing, found by bisection. `None` if empty.
pub fn gnp_window(n: usize, d: usize, t: usize) -> Option<(f64, f64)> {
    if t == 0 {
        return None;
    }
    let reaches = |p: f64, depth: usize| threshold_gnp(n, p, d).t.is_some_and(|x| x <= depth);
    let bisect = |pred: &dyn Fn(f64) -> bool| {
        // pred is false at lo and true at hi.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let low = bisect(&|p| reaches(p, t));
    let high_depth = if t > 1 {
        bisect(&|p| reaches(p, t - 1))
    } else {
        1.0
    };
    let nf = n as f64;
    let high_sparse = if t > 1 {
        pow(nf / 10.0, 1.0 / (t - 1) as f64) / nf
    } else {
        1.0
    };
    let high = high_depth.min(high_sparse).min(1.0);
    (low < high).then_some((low, high))
}
