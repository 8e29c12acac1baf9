//! Two-failure cooperative repair routed through a single helper `w`.
//!
//! The helpers form a tree rooted at `w`. For each failed node the helper
//! tree is extended by a shortest path from `w` to that node through
//! non-helpers, and step one runs with intermediate processing on the
//! extended tree. The cross-sums are then exchanged between the two failed
//! nodes along a shortest path that avoids the helpers.

use alloc::format;
use alloc::vec::Vec;

use crate::codes::coop::StepOne;
use crate::codes::coop::{CoopParams, FAILED};
use crate::codeword::Codeword;
use crate::galois::FieldElement;
use crate::graph::{spanning_tree_rooted, Graph, RepairTree, VertexId};
use crate::{Error, Result};

use super::{run_ip, CoopStepAdapter, Transcript};

#[derive(Debug, Clone)]
pub struct MultiOutcome<F> {
    /// Recovered columns of nodes 0 and 1.
    pub columns: [Vec<F>; 2],
    pub transcript: Transcript<F>,
    /// The helper tree rooted at `w`.
    pub helper_tree: RepairTree,
    /// Symbols sent by helpers, i.e. everything up to and including `w`.
    pub helper_total: usize,
}

pub fn run_multi_ip<F: FieldElement>(
    params: &CoopParams<F>,
    word: &Codeword<F>,
    g: &Graph,
    w: VertexId,
    helpers: &[VertexId],
) -> Result<MultiOutcome<F>> {
    let mut helpers = helpers.to_vec();
    helpers.sort_unstable();
    if helpers.windows(2).any(|p| p[0] == p[1]) || helpers.len() != params.d() {
        return Err(Error::InvalidParameters(format!(
            "need {} distinct helpers",
            params.d()
        )));
    }
    if helpers.iter().any(|h| FAILED.contains(h)) {
        return Err(Error::InvalidParameters("failed nodes cannot help".into()));
    }
    if helpers.binary_search(&w).is_err() {
        return Err(Error::MissingHelper(w));
    }
    if g.n() < params.n() {
        return Err(Error::WrongTopology(format!(
            "graph has {} vertices, code has n = {}",
            g.n(),
            params.n()
        )));
    }
    let is_helper = |v: VertexId| helpers.binary_search(&v).is_ok();
    let helper_tree = spanning_tree_rooted(g, w, &helpers)?;
    let tree_links = helper_tree.edges();

    let mut transcript = Transcript::new();
    let mut steps: Vec<StepOne<F>> = Vec::with_capacity(2);
    for (j, &target) in FAILED.iter().enumerate() {
        let other = FAILED[1 - j];
        let path = g
            .shortest_path(w, target, |v| !is_helper(v) && v != other)
            .ok_or_else(|| Error::WrongTopology(format!("no helper-free path from {w} to {target}")))?;
        let mut links = tree_links.clone();
        links.extend(path.windows(2).map(|p| (p[0], p[1])));
        let tree = RepairTree::from_parents(target, &links)?;
        let adapter = CoopStepAdapter::new(params, word, target, &helpers)?;
        let outcome = run_ip(&tree, &adapter)?;
        transcript.merge(&outcome.transcript);
        let values = outcome
            .output
            .chunks_exact(3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        steps.push(StepOne { target, values });
    }

    let exchange = g
        .shortest_path(FAILED[0], FAILED[1], |v| !is_helper(v))
        .ok_or_else(|| Error::WrongTopology("failed nodes cannot reach each other".into()))?;
    let planes = params.planes();
    // Node j forwards, per plane, the cross-sum owed to the other node.
    for (j, route) in [exchange.clone(), exchange.iter().rev().copied().collect()]
        .into_iter()
        .enumerate()
    {
        let payload: Vec<F> = steps[j].values.iter().map(|v| v[2]).collect();
        debug_assert_eq!(payload.len(), planes);
        for hop in route.windows(2) {
            transcript.record(hop[0], hop[1], &payload);
        }
    }
    let (columns, _) = params.step2_exchange(&steps[0], &steps[1])?;
    let helper_total = transcript.total_sent_by(is_helper);
    Ok(MultiOutcome {
        columns,
        transcript,
        helper_tree,
        helper_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{multi_tree_bound, ratio, CodeProfile};
    use crate::galois::Gf256;
    use crate::graph::named;

    fn check(n: usize, k: usize, seed: u64) {
        let params: CoopParams<Gf256> = CoopParams::new(n, k).unwrap();
        let word = params.sample(seed);
        let (g, w) = named::two_failure(n, k);
        let helpers: Vec<usize> = (2..=k + 2).collect();
        let out = run_multi_ip(&params, &word, &g, w, &helpers).unwrap();
        assert_eq!(out.columns[0], word.column(0));
        assert_eq!(out.columns[1], word.column(1));
        let profile = CodeProfile::new(n, k, k + 1, ratio(params.l()))
            .unwrap()
            .with_failures(2)
            .unwrap();
        let bound = multi_tree_bound(&out.helper_tree, &profile).unwrap();
        assert_eq!(ratio(out.helper_total), bound, "n = {n}, k = {k}");
    }

    #[test]
    fn recovers_and_meets_bound() {
        check(5, 2, 3);
        check(6, 2, 4);
        check(7, 3, 5);
        check(8, 4, 6);
    }

    #[test]
    fn exchange_is_recorded_per_hop() {
        let params: CoopParams<Gf256> = CoopParams::new(7, 3).unwrap();
        let word = params.sample(9);
        let (g, w) = named::two_failure(7, 3);
        let out = run_multi_ip(&params, &word, &g, w, &[2, 3, 4, 5]).unwrap();
        // 0 - 6 - 1 in both directions.
        for (u, v) in [(0, 6), (6, 1), (1, 6), (6, 0)] {
            assert!(out.transcript.count(u, v) >= params.planes());
        }
    }

    #[test]
    fn rejects_bad_helper_sets() {
        let params: CoopParams<Gf256> = CoopParams::new(5, 2).unwrap();
        let word = params.sample(1);
        let (g, w) = named::two_failure(5, 2);
        assert!(run_multi_ip(&params, &word, &g, w, &[2, 3]).is_err());
        assert!(run_multi_ip(&params, &word, &g, w, &[1, 2, 3]).is_err());
        assert!(run_multi_ip(&params, &word, &g, 9, &[2, 3, 4]).is_err());
    }
}
