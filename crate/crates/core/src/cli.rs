//! The `satcache` command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 bad arguments or unreadable
//! configuration, 3 infeasible instance, 4 enumeration budget exceeded.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forwarding::{static_average_path, ForwardingMode};
use crate::grid::{Coord, GridSpec};
use crate::placement::{
    axes_total_cost, exhaustive_axes_placement, max_caches, optimize_with, regular_placement, AxesSearch,
    Placement, PlacementFile, PlacementReport, DEFAULT_ENUMERATION_BUDGET,
};
use crate::sim::{run_replications, summarize, write_node_tx_csv, write_requests_csv, SimConfig, SimSummary};
use crate::sweep::{run_sweep, write_sweep_csv, SweepSpec, SweepVar};

pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidGrid(_)
        | Error::InvalidPlacement(_)
        | Error::InvalidArgument(_)
        | Error::InvalidConfig(_)
        | Error::Json(_) => EXIT_USAGE,
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Io(_) | Error::Csv(_) | Error::Forwarding { .. } | Error::SimInvariant(_) => EXIT_RUNTIME,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "satcache",
    version,
    about = "Cache placement and NDN simulation on torus constellations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a placement and write it as JSON.
    Optimize(OptimizeArgs),
    /// Exhaustively search in-axes placements and compare with the optimizer.
    Oracle(OracleArgs),
    /// Simulate requests against a placement.
    Simulate(SimulateArgs),
    /// Sweep clients, duration or cache budget and write a long-format CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Axes,
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    Exact,
    Advance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ForwardingArg {
    CacheAware,
    NearestAxis,
}

impl From<ForwardingArg> for ForwardingMode {
    fn from(f: ForwardingArg) -> Self {
        match f {
            ForwardingArg::CacheAware => ForwardingMode::CacheAware,
            ForwardingArg::NearestAxis => ForwardingMode::NearestAxis,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepVarArg {
    Clients,
    Duration,
    Budget,
}

impl From<SweepVarArg> for SweepVar {
    fn from(v: SweepVarArg) -> Self {
        match v {
            SweepVarArg::Clients => SweepVar::Clients,
            SweepVarArg::Duration => SweepVar::Duration,
            SweepVarArg::Budget => SweepVar::Budget,
        }
    }
}

/// Which placement to build, shared by `optimize` and `simulate`.
#[derive(Clone, Debug, Args)]
pub struct PlacementArgs {
    /// Grid as PLANESxSATS, e.g. 60x42.
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Axes)]
    pub strategy: StrategyArg,
    /// In-axes caches per quadrant.
    #[arg(long, conflicts_with_all = ["network_budget", "r"])]
    pub caches: Option<usize>,
    /// In-axes caches across the whole network; must be even (N = B / 2).
    #[arg(long, conflicts_with = "r")]
    pub network_budget: Option<u64>,
    /// Regular subdivision factor.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, value_enum, default_value_t = SearchArg::Exact)]
    pub search: SearchArg,
}

impl PlacementArgs {
    fn grid(&self) -> Result<GridSpec> {
        self.grid
            .ok_or_else(|| Error::InvalidArgument("--grid is required".into()))
    }

    fn build(&self) -> Result<(GridSpec, Placement, PlacementReport)> {
        let g = self.grid()?;
        match self.strategy {
            StrategyArg::Regular => {
                if self.caches.is_some() || self.network_budget.is_some() {
                    return Err(Error::InvalidArgument("regular placements take --r".into()));
                }
                let r = self
                    .r
                    .ok_or_else(|| Error::InvalidArgument("--strategy regular needs --r".into()))?;
                let l = regular_placement(&g, r)?;
                Ok((g, Placement::Regular(l.placement), l.report))
            }
            StrategyArg::Axes => {
                if self.r.is_some() {
                    return Err(Error::InvalidArgument(
                        "--r only applies to --strategy regular".into(),
                    ));
                }
                let n = match (self.caches, self.network_budget) {
                    (Some(n), None) => n,
                    (None, Some(b)) if b % 2 == 0 => (b / 2) as usize,
                    (None, Some(b)) => {
                        return Err(Error::Infeasible(format!(
                            "network budget {b} is odd; in-axes caches come in mirrored pairs"
                        )))
                    }
                    _ => return Err(Error::InvalidArgument("give --caches or --network-budget".into())),
                };
                let search = match self.search {
                    SearchArg::Exact => AxesSearch::Exact,
                    SearchArg::Advance => AxesSearch::CoordinateAdvance,
                };
                let p = optimize_with(&g, n, search)?;
                let report = axes_total_cost(&p, &g);
                Ok((g, Placement::InAxes(p), report))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub placement: PlacementArgs,
    /// Where to write the placement JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Grid as PLANESxSATS, e.g. 60x42.
    #[arg(long)]
    pub grid: GridSpec,
    /// Caches per quadrant.
    #[arg(long)]
    pub caches: usize,
    /// Enumerate every split between the axes, not only interleaved ones.
    #[arg(long)]
    pub all: bool,
    /// Largest number of placements to evaluate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1000)]
    pub clients: usize,
    /// Requests are spread uniformly over [0, duration].
    #[arg(long, default_value_t = 0.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hop_latency: f64,
    #[arg(long, default_value_t = 1)]
    pub replications: u32,
    #[arg(long, env = "SATCACHE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Producer node as X,Y.
    #[arg(long, default_value = "0,0", value_parser = parse_coord)]
    pub producer: Coord,
    #[arg(long, value_enum, default_value_t = ForwardingArg::CacheAware)]
    pub forwarding: ForwardingArg,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Placement JSON written by `optimize`; replaces the inline flags.
    #[arg(long, conflicts_with_all = ["grid", "caches", "network_budget", "r"])]
    pub placement_file: Option<PathBuf>,
    #[command(flatten)]
    pub placement: PlacementArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Output directory for nodes.csv, requests.csv and summary.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Grid as PLANESxSATS, e.g. 60x42.
    #[arg(long)]
    pub grid: GridSpec,
    #[arg(long = "var", value_enum)]
    pub var: SweepVarArg,
    /// Comma-separated sweep values; empty for none.
    #[arg(long, default_value = "")]
    pub values: String,
    /// Comma-separated per-quadrant cache counts, one series each.
    #[arg(long, default_value = "0")]
    pub caches: String,
    #[command(flatten)]
    pub run: RunArgs,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_coord(s: &str) -> std::result::Result<Coord, String> {
    let (x, y) = s.split_once(',').ok_or("expected X,Y")?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?;
    Ok(Coord::new(x, y))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} value {t:?}")))
        })
        .collect()
}

fn ratio_str(r: num_rational::Ratio<u64>) -> String {
    let f = *r.numer() as f64 / *r.denom() as f64;
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{r} ({f:.4})")
    }
}

fn print_report(out: &mut dyn Write, g: &GridSpec, p: &Placement, report: &PlacementReport) -> Result<()> {
    writeln!(out, "grid            {g}")?;
    match p {
        Placement::InAxes(a) => {
            writeln!(out, "strategy        axes")?;
            writeln!(out, "horizontal      {:?}", a.horizontal())?;
            writeln!(out, "vertical        {:?}", a.vertical())?;
        }
        Placement::Regular(r) => {
            writeln!(out, "strategy        regular")?;
            writeln!(out, "r               {}", r.r())?;
        }
    }
    writeln!(out, "total_cost      {}", report.total_cost)?;
    writeln!(out, "average         {}", ratio_str(report.average_distance))?;
    writeln!(out, "network_caches  {}", report.cache_count_full_network)?;
    Ok(())
}

fn cmd_optimize(a: &OptimizeArgs, out: &mut dyn Write) -> Result<()> {
    let (g, p, report) = a.placement.build()?;
    print_report(out, &g, &p, &report)?;
    if let Some(path) = &a.out {
        PlacementFile::new(g, &p).write(path)?;
        writeln!(out, "wrote           {}", path.display())?;
    }
    Ok(())
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<()> {
    let g = a.grid;
    if a.caches > max_caches(&g) {
        return Err(Error::Infeasible(format!(
            "{} in-axes caches per quadrant do not fit on {g}",
            a.caches
        )));
    }
    let o = exhaustive_axes_placement(&g, a.caches, !a.all, a.budget)?;
    let opt = optimize_with(&g, a.caches, AxesSearch::Exact)?;
    let opt_cost = axes_total_cost(&opt, &g).total_cost;
    let mode = if a.all { "all splits" } else { "interleaved" };
    writeln!(
        out,
        "oracle          {} ({mode}, {} evaluated)",
        o.placement, o.evaluated
    )?;
    writeln!(out, "oracle_cost     {}", o.report.total_cost)?;
    writeln!(out, "average         {}", ratio_str(o.report.average_distance))?;
    writeln!(out, "optimizer       {opt}")?;
    writeln!(out, "optimizer_cost  {opt_cost}")?;
    writeln!(
        out,
        "interleaved     {}",
        if o.placement.is_strictly_interleaved() {
            "yes"
        } else {
            "no"
        }
    )?;
    if opt_cost == o.report.total_cost {
        writeln!(out, "MATCH")?;
        Ok(())
    } else {
        writeln!(out, "MISMATCH")?;
        Err(Error::SimInvariant(format!(
            "optimizer cost {opt_cost} differs from exhaustive optimum {}",
            o.report.total_cost
        )))
    }
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    format: &'static str,
    placement: &'a PlacementFile,
    producer: Coord,
    clients: usize,
    duration: f64,
    hop_latency: f64,
    seed: u64,
    forwarding: String,
    theoretical_path_len: f64,
    summary: &'a SimSummary,
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let (g, placement) = match &a.placement_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            let f = PlacementFile::from_json(&text)?;
            (f.grid, f.placement()?)
        }
        None => {
            let (g, p, _) = a.placement.build()?;
            (g, p)
        }
    };
    let r = &a.run;
    let cfg = SimConfig {
        grid: g,
        placement,
        producer: r.producer,
        num_clients: r.clients,
        duration: r.duration,
        hop_latency: r.hop_latency,
        rng_seed: r.seed,
        replications: r.replications,
        mode: r.forwarding.into(),
    };
    cfg.validate()?;
    let theory = static_average_path(&cfg.context()?);
    let theory_f = *theory.numer() as f64 / *theory.denom() as f64;
    let runs = run_replications(&cfg)?;
    let summary = summarize(&runs)?;

    writeln!(out, "grid            {g}")?;
    writeln!(out, "placement       {}", cfg.placement)?;
    writeln!(out, "replications    {}", summary.replications)?;
    writeln!(out, "mean_path_len   {:.4}", summary.mean_path_len)?;
    match summary.stdev_path_len {
        Some(s) => writeln!(out, "stdev           {s:.4}")?,
        None => writeln!(out, "stdev           NA")?,
    }
    writeln!(out, "theoretical     {}", ratio_str(theory))?;
    writeln!(out, "producer_hits   {}", summary.producer_hits)?;
    writeln!(out, "cache_hits      {}", summary.cache_hits)?;
    writeln!(out, "coalesced       {}", summary.coalesced_requests)?;

    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        write_node_tx_csv(
            BufWriter::new(File::create(dir.join("nodes.csv"))?),
            &g,
            &summary.per_node_tx,
        )?;
        write_requests_csv(BufWriter::new(File::create(dir.join("requests.csv"))?), &runs)?;
        let doc = SummaryDoc {
            format: "satcache summary v1",
            placement: &PlacementFile::new(g, &cfg.placement),
            producer: cfg.producer,
            clients: cfg.num_clients,
            duration: cfg.duration,
            hop_latency: cfg.hop_latency,
            seed: cfg.rng_seed,
            forwarding: cfg.mode.to_string(),
            theoretical_path_len: theory_f,
            summary: &summary,
        };
        fs::write(
            dir.join("summary.json"),
            serde_json::to_string_pretty(&doc)? + "\n",
        )?;
        writeln!(out, "wrote           {}", dir.display())?;
    }
    Ok(())
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let var: SweepVar = a.var.into();
    let mut spec = SweepSpec::new(a.grid, var, parse_list(&a.values, "sweep")?);
    spec.caches = parse_list(&a.caches, "caches")?;
    spec.producer = a.run.producer;
    spec.clients = a.run.clients;
    spec.duration = a.run.duration;
    spec.hop_latency = a.run.hop_latency;
    spec.replications = a.run.replications;
    spec.seed = a.run.seed;
    spec.mode = a.run.forwarding.into();
    let rows = run_sweep(&spec)?;
    match &a.out {
        Some(path) => {
            write_sweep_csv(BufWriter::new(File::create(path)?), var, &rows)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_sweep_csv(out, var, &rows)?,
    }
    Ok(())
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Optimize(a) => cmd_optimize(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
