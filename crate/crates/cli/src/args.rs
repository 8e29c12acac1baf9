use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "graphrepair",
    version,
    about = "Node repair of regenerating codes on graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Repair one failed vertex with a product-matrix or diagonal-matrix code.
    Repair(RepairArgs),
    /// Tree and layer bounds for the BFS repair tree of a failed vertex.
    Bound(BoundArgs),
    /// Cut linear program over the repair graph, with exact certificates.
    Lp(LpArgs),
    /// Random-graph experiment; writes one CSV row per trial.
    Ensemble(EnsembleArgs),
    /// Branching-process trees against the closed-form expectations.
    Gw(GwArgs),
    /// Two-neighbour repair scheme with helper exchange.
    Appendix(AppendixArgs),
    /// Cooperative repair of two failed vertices through one helper.
    Coop(CoopArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    /// Random seed; without it GRAPHREPAIR_SEED is used, else a fresh seed
    /// is drawn and printed.
    #[arg(long, env = "GRAPHREPAIR_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    Pm,
    Dm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Af,
    Ip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Gnp,
    Regular,
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    /// Graph file or builtin (star:D, path:D, complete:M, fig3:K, fig4, fig2:N:K).
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 0)]
    pub failed: usize,
    #[arg(long, value_enum, default_value = "pm")]
    pub code: CodeKind,
    #[arg(long)]
    pub k: usize,
    /// Defaults to 2k - 2 (pm) or n - 1 (dm), the only values supported.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum, default_value = "ip")]
    pub protocol: ProtocolArg,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Write per-edge symbol counts here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 0)]
    pub failed: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: usize,
    /// Per-helper download as p/q.
    #[arg(long, default_value = "1")]
    pub beta: String,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 0)]
    pub failed: usize,
    /// `auto` (nearest d vertices) or a comma-separated list.
    #[arg(long, default_value = "auto")]
    pub helpers: String,
    #[arg(long)]
    pub k: usize,
    /// Checked against an explicit helper list; with `auto` it defaults to
    /// n - 1.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value = "1")]
    pub beta: String,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Edge probability (gnp).
    #[arg(long)]
    pub p: Option<f64>,
    /// Degree (regular).
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    /// CSV destination; printed after the summary when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct GwArgs {
    /// Probability of a single child.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Deepest layer allowed to combine.
    #[arg(long = "switch", default_value_t = 1)]
    pub switch_depth: usize,
    #[arg(long, default_value_t = 12)]
    pub d: usize,
    #[arg(long, default_value_t = 11)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct AppendixArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Defaults to fig3:K.
    #[arg(long)]
    pub graph: Option<String>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoopArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Defaults to fig2:N:K.
    #[arg(long)]
    pub graph: Option<String>,
    /// Helper that reaches the failed vertices.
    #[arg(long, default_value_t = 2)]
    pub w: usize,
    /// Defaults to 2..=k+2.
    #[arg(long)]
    pub helpers: Option<String>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}
