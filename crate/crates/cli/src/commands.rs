use std::fmt::Display;
use std::io::Write;

use graphrepair_core::bounds::{
    af_formula, layer_bound, lp_bound, multi_tree_bound, ratio, tree_bound, CodeProfile,
};
use graphrepair_core::codes::coop::CoopParams;
use graphrepair_core::codes::dm::DmParams;
use graphrepair_core::codes::pm::{PmCode, PmParams};
use graphrepair_core::codes::twonbr::TwoNbrParams;
use graphrepair_core::ensembles::{
    gnp_window, gw_summarize, gw_trial, run_trial, summarize, EnsembleSpec, Family, GwSpec,
};
use graphrepair_core::graph::{
    build_repair_tree, select_helpers_in_component, LayerDecomposition, RepairTree,
};
use graphrepair_core::repair::{run, DmAdapter, PmAdapter, Protocol, RepairOutcome};
use graphrepair_core::rng::rng_from_seed;
use graphrepair_core::{Gf256, Graph, Rational, VertexId};
use rayon::prelude::*;

use crate::args::{
    AppendixArgs, BoundArgs, CodeKind, CoopArgs, EnsembleArgs, FamilyArg, GwArgs, LpArgs, ProtocolArg,
    RepairArgs, SeedArg,
};
use crate::error::CliError;
use crate::io::{format_csv, format_transcript, load_graph, parse_helpers, parse_rational, write_file};

/// Plain `key = value` report split into bracketed sections.
pub struct Report<'a> {
    out: &'a mut dyn Write,
}

impl<'a> Report<'a> {
    pub fn new(out: &'a mut dyn Write) -> Self {
        Self { out }
    }

    pub fn section(&mut self, name: &str) -> Result<(), CliError> {
        writeln!(self.out, "[{name}]")?;
        Ok(())
    }

    pub fn kv(&mut self, key: &str, value: impl Display) -> Result<(), CliError> {
        writeln!(self.out, "{key} = {value}")?;
        Ok(())
    }

    pub fn line(&mut self, text: impl Display) -> Result<(), CliError> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    pub fn status(&mut self, pass: bool) -> Result<bool, CliError> {
        self.section("verdict")?;
        self.kv("status", if pass { "PASS" } else { "FAIL" })?;
        Ok(pass)
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn resolve_seed(arg: &SeedArg, report: &mut Report) -> Result<u64, CliError> {
    match arg.seed {
        Some(s) => {
            report.kv("seed", s)?;
            Ok(s)
        }
        None => {
            let s: u64 = rand::random();
            report.kv("seed", format!("{s} (generated)"))?;
            Ok(s)
        }
    }
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "OK"
    } else {
        "FAIL"
    }
}

fn nearest_helpers(
    g: &Graph,
    failed: VertexId,
    d: usize,
) -> Result<(Vec<VertexId>, LayerDecomposition), CliError> {
    select_helpers_in_component(g, failed, d)?.ok_or_else(|| {
        CliError::Param(format!(
            "vertex {failed} reaches fewer than d = {d} other vertices"
        ))
    })
}

fn print_tree(report: &mut Report, tree: &RepairTree) -> Result<(), CliError> {
    report.section("tree")?;
    report.line("# vertex parent depth subtree_helpers")?;
    for &v in tree.non_root() {
        report.line(format!(
            "{v} {} {} {}",
            tree.parent(v).expect("non-root"),
            tree.depth(v),
            tree.d_star(v)
        ))?;
    }
    Ok(())
}

fn print_edges<F: Copy>(
    report: &mut Report,
    t: &graphrepair_core::repair::Transcript<F>,
) -> Result<(), CliError> {
    report.section("transcript")?;
    for line in format_transcript(t).lines() {
        report.line(line)?;
    }
    Ok(())
}

pub fn repair(args: &RepairArgs, report: &mut Report) -> Result<bool, CliError> {
    let src = load_graph(&args.graph)?;
    let g = &src.graph;
    let n = g.n();
    let k = args.k;
    if args.failed >= n {
        return Err(CliError::Param(format!(
            "failed vertex {} is not in the graph",
            args.failed
        )));
    }
    let d = match args.code {
        CodeKind::Pm => 2 * k.max(1) - 2,
        CodeKind::Dm => n.saturating_sub(1),
    };
    if let Some(given) = args.d {
        if given != d {
            return Err(CliError::Param(format!(
                "this code supports only d = {d}, got {given}"
            )));
        }
    }
    report.section("config")?;
    report.kv("command", "repair")?;
    report.kv("graph", &src.name)?;
    report.kv("failed", args.failed)?;
    report.kv("code", format!("{:?}", args.code).to_lowercase())?;
    report.kv("field", "GF(2^8)")?;
    report.kv("n", n)?;
    report.kv("k", k)?;
    report.kv("d", d)?;
    report.kv("protocol", format!("{:?}", args.protocol).to_lowercase())?;
    let seed = resolve_seed(&args.seed, report)?;
    let protocol = match args.protocol {
        ProtocolArg::Af => Protocol::Af,
        ProtocolArg::Ip => Protocol::Ip,
    };

    let (helpers, layers, tree, outcome, expected, l): (_, _, _, RepairOutcome<Gf256>, Vec<Gf256>, usize) =
        match args.code {
            CodeKind::Pm => {
                let code: PmCode<Gf256> = PmCode::new(PmParams::new(n, k)?);
                let (helpers, layers) = nearest_helpers(g, args.failed, d)?;
                let tree = build_repair_tree(g, args.failed, &helpers)?;
                let word = code.random_codeword(&mut rng_from_seed(seed));
                let adapter = PmAdapter::new(&code, &word, args.failed, &helpers)?;
                let outcome = run(&tree, &adapter, protocol)?;
                let expected = word.column(args.failed).to_vec();
                (helpers, layers, tree, outcome, expected, code.params().l())
            }
            CodeKind::Dm => {
                let params: DmParams<Gf256> = DmParams::new(n, k)?;
                let (helpers, layers) = nearest_helpers(g, args.failed, d)?;
                let tree = build_repair_tree(g, args.failed, &helpers)?;
                let word = params.sample(seed);
                let adapter = DmAdapter::new(&params, &word, args.failed)?;
                let outcome = run(&tree, &adapter, protocol)?;
                let expected = word.column(args.failed).to_vec();
                (helpers, layers, tree, outcome, expected, params.l())
            }
        };
    let profile = CodeProfile::new(n, k, d, ratio(l))?;
    let (reference_name, reference) = match protocol {
        Protocol::Af => ("af_formula", af_formula(&layers, &profile)),
        Protocol::Ip => ("tree_bound", tree_bound(&tree, &profile)?),
    };
    let total = outcome.transcript.total();
    let recovered = outcome.output == expected;

    report.section("result")?;
    report.kv("helpers", join(&helpers))?;
    report.kv("layer_sizes", join(&layers.sizes()))?;
    report.kv("l", l)?;
    report.kv("beta_total", total)?;
    report.kv(reference_name, &reference)?;
    report.kv("matches_reference", ok(ratio(total) == reference))?;
    report.kv("recovery", ok(recovered))?;
    print_edges(report, &outcome.transcript)?;
    if let Some(path) = &args.transcript {
        write_file(path, &format_transcript(&outcome.transcript))?;
    }
    report.status(recovered && ratio(total) == reference)
}

pub fn bound(args: &BoundArgs, report: &mut Report) -> Result<bool, CliError> {
    let src = load_graph(&args.graph)?;
    let g = &src.graph;
    let beta = parse_rational(&args.beta)?;
    report.section("config")?;
    report.kv("command", "bound")?;
    report.kv("graph", &src.name)?;
    report.kv("failed", args.failed)?;
    report.kv("k", args.k)?;
    report.kv("d", args.d)?;
    report.kv("beta", &beta)?;
    let profile = CodeProfile::with_beta(g.n(), args.k, args.d, beta)?;
    let (helpers, layers) = nearest_helpers(g, args.failed, args.d)?;
    let tree = build_repair_tree(g, args.failed, &helpers)?;
    report.section("result")?;
    report.kv("helpers", join(&helpers))?;
    report.kv("layer_sizes", join(&layers.sizes()))?;
    report.kv("l", &profile.l)?;
    let ip = tree_bound(&tree, &profile)?;
    let af = af_formula(&layers, &profile);
    report.kv("tree_bound", &ip)?;
    report.kv("af_formula", &af)?;
    report.kv("af_minus_ip", &af - &ip)?;
    let sizes = layers.sizes();
    for j in 1..=layers.t() {
        report.kv(
            &format!("layer_bound_{j}"),
            layer_bound(&profile, &sizes[j - 1..])?,
        )?;
    }
    print_tree(report, &tree)?;
    report.status(ip <= af)
}

pub fn lp(args: &LpArgs, report: &mut Report) -> Result<bool, CliError> {
    let src = load_graph(&args.graph)?;
    let g = &src.graph;
    let beta = parse_rational(&args.beta)?;
    let helpers = match parse_helpers(&args.helpers)? {
        Some(list) => {
            if let Some(d) = args.d {
                if d != list.len() {
                    return Err(CliError::Param(format!(
                        "{} helpers listed but d = {d}",
                        list.len()
                    )));
                }
            }
            list
        }
        None => nearest_helpers(g, args.failed, args.d.unwrap_or(g.n().saturating_sub(1)))?.0,
    };
    let d = helpers.len();
    report.section("config")?;
    report.kv("command", "lp")?;
    report.kv("graph", &src.name)?;
    report.kv("failed", args.failed)?;
    report.kv("helpers", join(&helpers))?;
    report.kv("k", args.k)?;
    report.kv("d", d)?;
    report.kv("beta", &beta)?;
    let profile = CodeProfile::with_beta(g.n(), args.k, d, beta)?;
    let (cut, sol) = lp_bound(g, args.failed, &helpers, &profile)?;
    let certified = cut.check(&sol);
    report.section("result")?;
    report.kv("directed_edges", cut.edges().len())?;
    report.kv("cut_rows", cut.rows().len())?;
    report.kv("lp_value", &sol.value)?;
    report.kv("certificates", ok(certified))?;
    match build_repair_tree(g, args.failed, &helpers) {
        Ok(tree) => {
            let ip = tree_bound(&tree, &profile)?;
            report.kv("tree_bound", &ip)?;
            report.kv("gap", &ip - &sol.value)?;
        }
        Err(_) => report.kv("tree_bound", "NA")?,
    }
    report.section("primal")?;
    for (&(u, v), x) in cut.edges().iter().zip(&sol.primal) {
        if *x != Rational::from_integer(0.into()) {
            report.line(format!("{u} -> {v} = {x}"))?;
        }
    }
    report.section("dual")?;
    for (mask, y) in &sol.dual {
        report.line(format!("{{{}}} = {y}", join(&cut.subset_of(*mask))))?;
    }
    report.status(certified)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Param(e.to_string()))
}

pub fn ensemble(args: &EnsembleArgs, report: &mut Report) -> Result<bool, CliError> {
    let family = match (args.family, args.p, args.r) {
        (FamilyArg::Gnp, Some(p), None) => Family::Gnp { p },
        (FamilyArg::Regular, None, Some(r)) => Family::Regular { r },
        (FamilyArg::Gnp, _, _) => return Err(CliError::Param("gnp needs --p (and no --r)".into())),
        (FamilyArg::Regular, _, _) => return Err(CliError::Param("regular needs --r (and no --p)".into())),
    };
    report.section("config")?;
    report.kv("command", "ensemble")?;
    report.kv("family", format!("{:?}", args.family).to_lowercase())?;
    report.kv("n", args.n)?;
    match family {
        Family::Gnp { p } => report.kv("p", p)?,
        Family::Regular { r } => report.kv("r", r)?,
    }
    report.kv("k", args.k)?;
    report.kv("d", args.d)?;
    report.kv("trials", args.trials)?;
    let seed = resolve_seed(&args.seed, report)?;
    let spec = EnsembleSpec {
        family,
        n: args.n,
        k: args.k,
        d: args.d,
        trials: args.trials,
        seed,
    };
    spec.validate()?;
    let records = pool(args.jobs)?.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| run_trial(&spec, i))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let summary = summarize(&spec, &records);
    let threshold = spec.threshold();

    report.section("threshold")?;
    report.kv(
        "predicted_t",
        threshold.t.map_or("NA".to_string(), |t| t.to_string()),
    )?;
    report.kv("target_ball", format!("{:.3}", threshold.target))?;
    let layers: Vec<String> = threshold
        .expected_layers
        .iter()
        .map(|x| format!("{x:.3}"))
        .collect();
    report.kv("expected_layers", layers.join(" "))?;
    report.kv("sparse", threshold.sparse)?;
    report.kv("growth_surrogate", threshold.growth)?;
    if let (Family::Gnp { .. }, Some(t)) = (family, threshold.t) {
        let window =
            gnp_window(args.n, args.d, t).map_or("empty".to_string(), |(a, b)| format!("{a:.6} {b:.6}"));
        report.kv("p_window", window)?;
    }

    let fmt = |x: Option<f64>| x.map_or("NA".to_string(), |v| format!("{v:.6}"));
    report.section("summary")?;
    report.kv("feasible", summary.feasible)?;
    report.kv("feasible_fraction", format!("{:.6}", summary.feasible_fraction()))?;
    report.kv("at_predicted_depth", summary.at_predicted_depth)?;
    report.kv("mean_beta_af", fmt(summary.mean_af))?;
    report.kv("mean_beta_ip", fmt(summary.mean_ip))?;
    report.kv("mean_ratio", fmt(summary.mean_ratio()))?;
    report.kv("ip_below_af", fmt(summary.ip_below_af))?;
    for (name, q) in [("beta_af", summary.af), ("beta_ip", summary.ip)] {
        if let Some(q) = q {
            report.kv(
                &format!("{name}_quantiles"),
                format!("{} {} {} {} {}", q.min, q.q25, q.median, q.q75, q.max),
            )?;
        }
    }
    let ordered = records.iter().all(|r| r.beta_ip <= r.beta_af);
    let csv = format_csv(&records, spec.n, family.param(), spec.d, spec.k);
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            report.kv("csv", path.display())?;
        }
        None => {
            report.section("csv")?;
            for line in csv.lines() {
                report.line(line)?;
            }
        }
    }
    report.status(ordered)
}

pub fn gw(args: &GwArgs, report: &mut Report) -> Result<bool, CliError> {
    report.section("config")?;
    report.kv("command", "gw")?;
    report.kv("p", args.p)?;
    report.kv("depth", args.depth)?;
    report.kv("switch", args.switch_depth)?;
    report.kv("d", args.d)?;
    report.kv("k", args.k)?;
    report.kv("trials", args.trials)?;
    let seed = resolve_seed(&args.seed, report)?;
    let spec = GwSpec {
        p: args.p,
        depth: args.depth,
        switch_depth: args.switch_depth,
        d: args.d,
        k: args.k,
        trials: args.trials,
        seed,
    };
    spec.validate()?;
    let results = pool(args.jobs)?.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| gw_trial(&spec, i))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let r = gw_summarize(&spec, &results);
    report.section("result")?;
    report.kv("mean_beta_af", format!("{:.6}", r.mean_af))?;
    report.kv("se_beta_af", format!("{:.6}", r.se_af))?;
    report.kv("expected_beta_af", format!("{:.6}", r.expected_af))?;
    report.kv("af_within_3se", ok(r.af_within()))?;
    report.kv("mean_gap", format!("{:.6}", r.mean_gap))?;
    report.kv("se_gap", format!("{:.6}", r.se_gap))?;
    report.kv("expected_gap", format!("{:.6}", r.expected_gap))?;
    report.kv("gap_within_3se", ok(r.gap_within()))?;
    report.kv("min_gap", r.min_gap)?;
    report.status(r.passes())
}

pub fn appendix(args: &AppendixArgs, report: &mut Report) -> Result<bool, CliError> {
    let graph_name = args.graph.clone().unwrap_or_else(|| format!("fig3:{}", args.k));
    let src = load_graph(&graph_name)?;
    report.section("config")?;
    report.kv("command", "appendix")?;
    report.kv("graph", &src.name)?;
    report.kv("n", args.n)?;
    report.kv("k", args.k)?;
    let seed = resolve_seed(&args.seed, report)?;
    let params: TwoNbrParams<Gf256> = TwoNbrParams::new(args.n, args.k)?;
    let word = params.sample(seed);
    let (column, transcript) = params.repair(&word, &src.graph)?;
    let recovered = column == word.column(0);
    let expected = (params.d() + 1) * params.beta();
    report.section("result")?;
    report.kv("l", params.l())?;
    report.kv("beta", params.beta())?;
    report.kv("total", transcript.total())?;
    report.kv("expected_total", expected)?;
    report.kv("recovery", ok(recovered))?;
    print_edges(report, &transcript)?;
    if let Some(path) = &args.transcript {
        write_file(path, &format_transcript(&transcript))?;
    }
    report.status(recovered && transcript.total() == expected)
}

pub fn coop(args: &CoopArgs, report: &mut Report) -> Result<bool, CliError> {
    let graph_name = args
        .graph
        .clone()
        .unwrap_or_else(|| format!("fig2:{}:{}", args.n, args.k));
    let src = load_graph(&graph_name)?;
    let helpers = match &args.helpers {
        Some(s) => parse_helpers(s)?.ok_or_else(|| CliError::Param("list the helpers explicitly".into()))?,
        None => (2..=args.k + 2).collect(),
    };
    report.section("config")?;
    report.kv("command", "coop")?;
    report.kv("graph", &src.name)?;
    report.kv("n", args.n)?;
    report.kv("k", args.k)?;
    report.kv("w", args.w)?;
    report.kv("helpers", join(&helpers))?;
    let seed = resolve_seed(&args.seed, report)?;
    let params: CoopParams<Gf256> = CoopParams::new(args.n, args.k)?;
    let word = params.sample(seed);
    let out = graphrepair_core::repair::run_multi_ip(&params, &word, &src.graph, args.w, &helpers)?;
    let profile = CodeProfile::new(args.n, args.k, params.d(), ratio(params.l()))?.with_failures(2)?;
    let bound = multi_tree_bound(&out.helper_tree, &profile)?;
    let rec0 = out.columns[0] == word.column(0);
    let rec1 = out.columns[1] == word.column(1);
    report.section("result")?;
    report.kv("l", params.l())?;
    report.kv("helper_total", out.helper_total)?;
    report.kv("multi_tree_bound", &bound)?;
    report.kv("matches_bound", ok(ratio(out.helper_total) == bound))?;
    report.kv("total", out.transcript.total())?;
    report.kv("recovery_0", ok(rec0))?;
    report.kv("recovery_1", ok(rec1))?;
    print_tree(report, &out.helper_tree)?;
    print_edges(report, &out.transcript)?;
    if let Some(path) = &args.transcript {
        write_file(path, &format_transcript(&out.transcript))?;
    }
    report.status(rec0 && rec1 && ratio(out.helper_total) == bound)
}
