// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `build`, `route`, `analyze`, `compare` and
//! `export`.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 invariant
//! violation or failed bound check, 4 I/O error. Relative `--output`
//! paths are resolved against `PAPILLON_OUTPUT_DIR` when it is set.

mod export;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    analyze, greedy_detours, hop_phases, sampled_stats, AnalysisOptions, DEFAULT_BUDGET,
};
use crate::ring_metrics::{Metric, NodeId};
use crate::routing::{route, Route, Strategy, StrategyConfig, DEFAULT_SEED};
use crate::topology::{BuildOptions, Family, Topology, TopologyParams, DEFAULT_MAX_NODES};
use crate::{Error, Result};

pub use export::{export_graph, EdgeFilter, GraphFormat};
pub use report::{
    bound_checks, Check, LoadDigest, Mode, Report, ReportEntry, TopologySummary,
    REPORT_SCHEMA_VERSION,
};

pub const OUTPUT_DIR_ENV: &str = "PAPILLON_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "papillon",
    version,
    about = "Butterfly networks on a ring: build, route, analyze"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a topology and print its summary.
    Build(BuildArgs),
    /// Route one message and print every hop.
    Route(RouteArgs),
    /// Exhaustive statistics, edge loads and bound checks for one strategy.
    Analyze(AnalyzeArgs),
    /// Side-by-side analysis of several strategies, with greedy detours.
    Compare(CompareArgs),
    /// Write the graph as an edge list, DOT or JSON.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Clockwise,
    Absolute,
    Xor,
    Chord,
    ChordBidirectional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Hypercubic,
    CfRandom,
    CfDeterministic,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Greedy => Strategy::Greedy,
            StrategyArg::Hypercubic => Strategy::Hypercubic,
            StrategyArg::CfRandom => Strategy::CongestionFreeRandom,
            StrategyArg::CfDeterministic => Strategy::CongestionFreeDeterministic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Clockwise,
    Absolute,
    Xor,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Clockwise => Metric::Clockwise,
            MetricArg::Absolute => Metric::Absolute,
            MetricArg::Xor => Metric::Xor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormatArg {
    Edgelist,
    Dot,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct TopologyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Radix of `B_clockwise`.
    #[arg(long)]
    pub kappa: Option<u64>,
    /// Digit range [-k, k] of `B_absolute`.
    #[arg(short = 'k', long = "k")]
    pub k: Option<u64>,
    /// Radix of `B_xor` (power of two).
    #[arg(long)]
    pub lambda: Option<u64>,
    /// Number of levels.
    #[arg(short = 'm', long = "m")]
    pub m: Option<u64>,
    /// Chord ring of 2^b nodes.
    #[arg(short = 'b', long = "b")]
    pub b: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: u64,
}

impl TopologyArgs {
    pub fn params(&self) -> Result<TopologyParams> {
        let need = |v: Option<u64>, flag: &str| {
            v.ok_or_else(|| {
                Error::Parameter(format!("--family {} needs {flag}", self.family_name()))
            })
        };
        let b = || {
            self.b.ok_or_else(|| {
                Error::Parameter(format!("--family {} needs -b", self.family_name()))
            })
        };
        let params = match self.family {
            FamilyArg::Clockwise => TopologyParams::Clockwise {
                kappa: need(self.kappa, "--kappa")?,
                m: need(self.m, "-m")?,
            },
            FamilyArg::Absolute => TopologyParams::Absolute {
                k: need(self.k, "-k")?,
                m: need(self.m, "-m")?,
            },
            FamilyArg::Xor => TopologyParams::Xor {
                lambda: need(self.lambda, "--lambda")?,
                m: need(self.m, "-m")?,
            },
            FamilyArg::Chord => TopologyParams::ChordClockwise { b: b()? },
            FamilyArg::ChordBidirectional => TopologyParams::ChordBidirectional { b: b()? },
        };
        params.validate()?;
        Ok(params)
    }

    fn family_name(&self) -> String {
        self.family
            .to_possible_value()
            .map_or_else(String::new, |v| v.get_name().to_string())
    }

    pub fn build(&self) -> Result<Topology> {
        Topology::build(
            self.params()?,
            &BuildOptions {
                max_nodes: self.max_nodes,
            },
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct StrategyArgs {
    /// Distance function for greedy routing; defaults to the family's own.
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,
    /// Full second phase even when the first phase lands on the target.
    /// Defaults to on for analyze/compare and off for route.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub strict_loop: Option<bool>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Safety cap on route length; defaults to 4m (4b on Chord).
    #[arg(long)]
    pub max_hops: Option<usize>,
}

impl StrategyArgs {
    fn config(&self, strategy: Strategy, family: Family, strict_default: bool) -> StrategyConfig {
        let metric = self.metric.map_or(family.natural_metric(), Metric::from);
        let congestion_free = matches!(
            strategy,
            Strategy::CongestionFreeRandom | Strategy::CongestionFreeDeterministic
        );
        let strict = congestion_free && self.strict_loop.unwrap_or(strict_default);
        StrategyConfig {
            strategy,
            metric,
            strict_loop: strict,
            seed: self.seed,
            max_hops: self.max_hops,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct AnalysisArgs {
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Count `s == t` routes toward edge loads. Defaults to the strict-loop setting.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub self_pairs: Option<bool>,
    /// Maximum route evaluations for exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub topology: TopologyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RouteArgs {
    #[command(flatten)]
    pub topology: TopologyArgs,
    #[arg(long, value_enum, default_value = "greedy")]
    pub strategy: StrategyArg,
    #[command(flatten)]
    pub strategy_args: StrategyArgs,
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub topology: TopologyArgs,
    #[arg(long, value_enum, default_value = "greedy")]
    pub strategy: StrategyArg,
    #[command(flatten)]
    pub strategy_args: StrategyArgs,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Monte Carlo sampling instead of exhaustive enumeration.
    #[arg(long)]
    pub samples: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub topology: TopologyArgs,
    /// Strategies to compare; defaults to every one defined on the family.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub strategies: Vec<StrategyArg>,
    #[command(flatten)]
    pub strategy_args: StrategyArgs,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub topology: TopologyArgs,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: GraphFormatArg,
    /// Comma-separated edge kinds to keep (short, long, back, finger).
    #[arg(long)]
    pub kinds: Option<String>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code. Results go to `out` or to `--output`;
/// diagnostics go to `err`.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_)
        | Error::Size { .. }
        | Error::ShortOnly { .. }
        | Error::LevelMismatch { .. }
        | Error::BudgetExceeded { .. } => EXIT_USAGE,
        Error::NonTermination { .. }
        | Error::MissingEdge { .. }
        | Error::InvariantViolation(_)
        | Error::UndefinedPi { .. } => EXIT_INVARIANT,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_IO,
    }
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build(args) => {
            let topo = args.topology.build()?;
            let text = match args.output.format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Text => build_text(&topo),
                OutputFormat::Json => json(&BuildSummary {
                    params: *topo.params(),
                    topology: TopologySummary::of(&topo),
                })?,
                OutputFormat::Csv => build_csv(&topo)?,
            };
            emit(&text, args.output.output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Route(args) => {
            let topo = args.topology.build()?;
            let config = args
                .strategy_args
                .config(args.strategy.into(), topo.family(), false);
            config.validate_for(&topo)?;
            let mut r = route(&topo, &config, NodeId::new(args.from), NodeId::new(args.to))?;
            annotate_phases(&topo, &config, &mut r)?;
            let text = match args.output.format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Text => route_text(&r),
                OutputFormat::Json => json(&RouteDoc {
                    params: *topo.params(),
                    config,
                    hops: r.len(),
                    route: &r,
                })?,
                OutputFormat::Csv => route_csv(&r)?,
            };
            emit(&text, args.output.output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Analyze(args) => {
            let topo = args.topology.build()?;
            let config = args
                .strategy_args
                .config(args.strategy.into(), topo.family(), true);
            config.validate_for(&topo)?;
            let options = analysis_options(&args.analysis, config.strict_loop);
            let entry = match args.samples {
                Some(samples) => {
                    let stats = sampled_stats(&topo, &config, samples, config.seed, &options)?;
                    ReportEntry::sampled(&topo, config, samples, stats)
                }
                None => ReportEntry::exhaustive(&topo, analyze(&topo, &config, &options)?),
            };
            let report = Report::new(
                "analyze",
                &topo,
                options.include_self_pairs,
                vec![entry],
                None,
            );
            finish_report(&report, &args.output, out, err)
        }
        Command::Compare(args) => {
            let topo = args.topology.build()?;
            let family = topo.family();
            let strategies: Vec<Strategy> = if args.strategies.is_empty() {
                default_strategies(family)
            } else {
                args.strategies.iter().map(|&s| s.into()).collect()
            };
            let configs: Vec<StrategyConfig> = strategies
                .iter()
                .map(|&s| args.strategy_args.config(s, family, true))
                .collect();
            for c in &configs {
                c.validate_for(&topo)?;
            }
            let strict = configs.iter().any(|c| c.strict_loop);
            let options = analysis_options(&args.analysis, strict);
            let entries = configs
                .iter()
                .map(|c| Ok(ReportEntry::exhaustive(&topo, analyze(&topo, c, &options)?)))
                .collect::<Result<Vec<_>>>()?;
            let detours = configs
                .iter()
                .find(|c| c.strategy == Strategy::Greedy)
                .map(|c| greedy_detours(&topo, c.metric, &options))
                .transpose()?;
            let report = Report::new(
                "compare",
                &topo,
                options.include_self_pairs,
                entries,
                detours,
            );
            finish_report(&report, &args.output, out, err)
        }
        Command::Export(args) => {
            let topo = args.topology.build()?;
            let filter = match &args.kinds {
                Some(kinds) => kinds.parse()?,
                None => EdgeFilter::all(),
            };
            let format = match args.format {
                GraphFormatArg::Edgelist => GraphFormat::EdgeList,
                GraphFormatArg::Dot => GraphFormat::Dot,
                GraphFormatArg::Json => GraphFormat::Json,
            };
            let text = export_graph(&topo, format, &filter)?;
            emit(&text, args.output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

fn default_strategies(family: Family) -> Vec<Strategy> {
    match family {
        Family::Clockwise => vec![
            Strategy::Greedy,
            Strategy::Hypercubic,
            Strategy::CongestionFreeRandom,
        ],
        Family::Absolute => vec![
            Strategy::Greedy,
            Strategy::Hypercubic,
            Strategy::CongestionFreeRandom,
            Strategy::CongestionFreeDeterministic,
        ],
        _ => vec![Strategy::Greedy],
    }
}

fn analysis_options(args: &AnalysisArgs, strict: bool) -> AnalysisOptions {
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    AnalysisOptions {
        workers,
        budget: args.budget as u128,
        include_self_pairs: args.self_pairs.unwrap_or(strict),
    }
}

/// Fills in phase labels for greedy routes on the ring families.
fn annotate_phases(topo: &Topology, config: &StrategyConfig, r: &mut Route) -> Result<()> {
    let labelled = config.strategy == Strategy::Greedy
        && topo.family().is_ring_butterfly()
        && config.metric == topo.family().natural_metric();
    if labelled {
        let labels = hop_phases(r, topo)?;
        for (hop, label) in r.hops.iter_mut().zip(labels) {
            hop.phase = Some(label);
        }
    }
    Ok(())
}

fn finish_report(
    report: &Report,
    output: &OutputArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let text = match output.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => report.to_json()?,
        OutputFormat::Csv => report.to_csv()?,
        OutputFormat::Text => report.to_text(),
    };
    emit(&text, output.output.as_ref(), out)?;
    let mut code = EXIT_OK;
    for (config, check) in report.failed_checks() {
        writeln!(
            err,
            "check failed: {} {}: bound {}, observed {}",
            config.strategy, check.name, check.bound, check.observed
        )?;
        code = EXIT_INVARIANT;
    }
    Ok(code)
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, text)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Relative paths land under `PAPILLON_OUTPUT_DIR` when it is set.
pub fn resolve_output(path: &std::path::Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct BuildSummary {
    params: TopologyParams,
    topology: TopologySummary,
}

#[derive(Serialize)]
struct RouteDoc<'a> {
    params: TopologyParams,
    config: StrategyConfig,
    hops: usize,
    route: &'a Route,
}

fn build_text(topo: &Topology) -> String {
    let mut s = format!(
        "{}: {} nodes, {} edges\n",
        topo.params(),
        topo.n(),
        topo.edge_count()
    );
    if let Some(m) = topo.params().levels() {
        s.push_str(&format!("levels: {m}\n"));
    }
    for (degree, count) in topo.degree_histogram() {
        s.push_str(&format!("out-degree {degree}: {count} nodes\n"));
    }
    for w in topo.warnings() {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

fn build_csv(topo: &Topology) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["out_degree", "nodes"])?;
    for (degree, count) in topo.degree_histogram() {
        w.write_record([degree.to_string(), count.to_string()])?;
    }
    csv_string(w)
}

fn route_text(r: &Route) -> String {
    let mut s = format!("{} ({} hops)\n", r.path_string(), r.len());
    for hop in &r.hops {
        let phase = hop.phase.map_or("-".to_string(), |p| p.to_string());
        s.push_str(&format!(
            "  {} -> {} {} remaining {} phase {}\n",
            hop.from, hop.to, hop.kind, hop.remaining, phase
        ));
    }
    s
}

fn route_csv(r: &Route) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["from", "to", "kind", "remaining", "phase"])?;
    for hop in &r.hops {
        w.write_record([
            hop.from.to_string(),
            hop.to.to_string(),
            hop.kind.to_string(),
            hop.remaining.to_string(),
            hop.phase.map_or(String::new(), |p| p.to_string()),
        ])?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
