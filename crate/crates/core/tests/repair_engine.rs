use graphrepair_core::bounds::{af_formula, ratio, tree_bound, CodeProfile};
use graphrepair_core::codes::coop::CoopParams;
use graphrepair_core::codes::dm::DmParams;
use graphrepair_core::codes::pm::{PmCode, PmParams};
use graphrepair_core::graph::{build_repair_tree, named, select_helpers, RepairTree};
use graphrepair_core::repair::{
    run_af, run_ip, verify_transcript, CoopStepAdapter, DmAdapter, PmAdapter, Transcript,
};
use graphrepair_core::rng::rng_from_seed;
use graphrepair_core::{Error, Gf256, Graph};
use proptest::prelude::*;
use rand::Rng;

fn pm(k: usize, n: usize) -> PmCode<Gf256> {
    PmCode::new(PmParams::new(n, k).unwrap())
}

#[test]
fn star_with_failed_leaf() {
    let k = 3;
    let d = 2 * k - 2;
    let code = pm(k, d + 1);
    let word = code.random_codeword(&mut rng_from_seed(11));
    let g = named::star(d);
    let (helpers, _) = select_helpers(&g, 1, d).unwrap();
    let tree = build_repair_tree(&g, 1, &helpers).unwrap();
    let adapter = PmAdapter::new(&code, &word, 1, &helpers).unwrap();
    let af = run_af(&tree, &adapter).unwrap();
    let ip = run_ip(&tree, &adapter).unwrap();
    assert_eq!(af.output, word.column(1));
    assert_eq!(ip.output, word.column(1));
    assert_eq!(af.transcript.total(), 4 * k - 5);
    assert_eq!(ip.transcript.total(), 3 * k - 4);
    // The centre forwards k - 1 combined symbols instead of 2k - 2 raw ones.
    assert_eq!(ip.transcript.count(0, 1), k - 1);
    assert_eq!(af.transcript.count(0, 1), d);
}

#[test]
fn depth_one_costs_d() {
    let code = pm(3, 6);
    let word = code.random_codeword(&mut rng_from_seed(2));
    let g = named::star(5);
    let helpers = [1, 2, 3, 4];
    let tree = build_repair_tree(&g, 0, &helpers).unwrap();
    let adapter = PmAdapter::new(&code, &word, 0, &helpers).unwrap();
    for out in [run_af(&tree, &adapter).unwrap(), run_ip(&tree, &adapter).unwrap()] {
        assert_eq!(out.output, word.column(0));
        assert_eq!(out.transcript.total(), 4);
    }
}

fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    loop {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn pm_on_random_graphs_every_failed_vertex() {
    for seed in 0..12u64 {
        let n = 8;
        let k = 3;
        let d = 2 * k - 2;
        let code = pm(k, n);
        let word = code.random_codeword(&mut rng_from_seed(100 + seed));
        let g = random_connected(n, 0.35, seed);
        let profile = CodeProfile::unit(n, k, d).unwrap();
        for failed in 0..n {
            let (helpers, layers) = select_helpers(&g, failed, d).unwrap();
            let tree = build_repair_tree(&g, failed, &helpers).unwrap();
            let adapter = PmAdapter::new(&code, &word, failed, &helpers).unwrap();
            let af = run_af(&tree, &adapter).unwrap();
            let ip = run_ip(&tree, &adapter).unwrap();
            assert_eq!(af.output, word.column(failed));
            assert_eq!(ip.output, word.column(failed));
            assert_eq!(ratio(af.transcript.total()), af_formula(&layers, &profile));
            assert_eq!(ratio(ip.transcript.total()), tree_bound(&tree, &profile).unwrap());
            assert!(verify_transcript(&tree, &af.transcript, &profile).is_clean());
            let report = verify_transcript(&tree, &ip.transcript, &profile);
            assert!(report.is_clean());
            for &v in tree.non_root() {
                if tree.d_star(v) > d - k {
                    assert!(report.tight.contains(&v), "vertex {v} should be tight");
                }
            }
        }
    }
}

#[test]
fn dm_on_path_and_complete_graph() {
    let params: DmParams<Gf256> = DmParams::new(4, 2).unwrap();
    let word = params.sample(5);
    let l = params.l();
    let profile = CodeProfile::new(4, 2, 3, ratio(l)).unwrap();
    for g in [named::complete(4), named::path(3)] {
        let tree = build_repair_tree(&g, 0, &[1, 2, 3]).unwrap();
        let adapter = DmAdapter::new(&params, &word, 0).unwrap();
        let af = run_af(&tree, &adapter).unwrap();
        let ip = run_ip(&tree, &adapter).unwrap();
        assert_eq!(af.output, word.column(0));
        assert_eq!(ip.output, word.column(0));
        assert_eq!(ratio(af.transcript.total()), af_formula(&tree.layers(), &profile));
        assert_eq!(ratio(ip.transcript.total()), tree_bound(&tree, &profile).unwrap());
    }
    // Path: 8 + 16 + 16 under IP.
    let tree = build_repair_tree(&named::path(3), 0, &[1, 2, 3]).unwrap();
    let adapter = DmAdapter::new(&params, &word, 0).unwrap();
    assert_eq!(run_ip(&tree, &adapter).unwrap().transcript.total(), 40);
}

#[test]
fn coop_step_through_a_relay_chain() {
    let params: CoopParams<Gf256> = CoopParams::new(6, 3).unwrap();
    let word = params.sample(8);
    let helpers = [2, 3, 4, 5];
    let direct = params.step1(&word, 0, &helpers).unwrap();
    let tree = RepairTree::from_parents(0, &[(1, 0), (2, 1), (3, 2), (4, 3), (5, 4)]).unwrap();
    let adapter = CoopStepAdapter::new(&params, &word, 0, &helpers).unwrap();
    let out = run_ip(&tree, &adapter).unwrap();
    let flat: Vec<Gf256> = direct.values.iter().flatten().copied().collect();
    assert_eq!(out.output, flat);
    // Vertex 1 relays without helping; 3 symbols per plane from vertex 2 on.
    assert_eq!(out.transcript.count(1, 0), 3 * params.planes());
    assert_eq!(out.transcript.count(5, 4), params.planes());
}

#[test]
fn tree_root_must_be_target() {
    let code = pm(3, 6);
    let word = code.random_codeword(&mut rng_from_seed(2));
    let tree = build_repair_tree(&named::star(5), 0, &[1, 2, 3, 4]).unwrap();
    let adapter = PmAdapter::new(&code, &word, 1, &[0, 2, 3, 4]).unwrap();
    assert!(run_ip(&tree, &adapter).is_err());
    let tree = build_repair_tree(&named::star(5), 0, &[1, 2, 3]).unwrap();
    let adapter = PmAdapter::new(&code, &word, 0, &[1, 2, 3, 4]).unwrap();
    assert!(matches!(run_ip(&tree, &adapter), Err(Error::MissingHelper(4))));
}

#[test]
fn under_reported_edge_is_flagged() {
    let tree = build_repair_tree(&named::star(4), 1, &[0, 2, 3, 4]).unwrap();
    let profile = CodeProfile::unit(5, 3, 4).unwrap();
    let t: Transcript<Gf256> = Transcript::from_counts([(2, 0, 1), (3, 0, 1), (4, 0, 1), (0, 1, 1)]);
    let report = verify_transcript(&tree, &t, &profile);
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].from, 0);
    assert_eq!(report.violations[0].required, ratio(2));
}

fn random_tree(parents: &[usize]) -> (RepairTree, Vec<usize>) {
    // Vertex i + 1 hangs off parents[i] % (i + 1); vertex 0 is the root.
    let links: Vec<(usize, usize)> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| (i + 1, p % (i + 1)))
        .collect();
    let tree = RepairTree::from_parents(0, &links).unwrap();
    (tree, (1..=parents.len()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ip_meets_tree_bound_on_random_trees(k in 2usize..5, parents in prop::collection::vec(0usize..64, 6), seed in any::<u64>()) {
        let d = 2 * k - 2;
        let parents = &parents[..d];
        let (tree, helpers) = random_tree(parents);
        let code = pm(k, d + 1);
        let word = code.random_codeword(&mut rng_from_seed(seed));
        let adapter = PmAdapter::new(&code, &word, 0, &helpers).unwrap();
        let profile = CodeProfile::unit(d + 1, k, d).unwrap();
        let af = run_af(&tree, &adapter).unwrap();
        let ip = run_ip(&tree, &adapter).unwrap();
        prop_assert_eq!(&af.output, word.column(0));
        prop_assert_eq!(&ip.output, word.column(0));
        let depth_sum: usize = helpers.iter().map(|&v| tree.depth(v)).sum();
        prop_assert_eq!(af.transcript.total(), depth_sum);
        prop_assert_eq!(ratio(ip.transcript.total()), tree_bound(&tree, &profile).unwrap());
        prop_assert!(ip.transcript.total() <= af.transcript.total());
    }
}
