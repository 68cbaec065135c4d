//! Parameter sweeps producing long-format rows, one per sweep point,
//! placement and replication.
//!
//! Every point reuses the same master seed, so points differ only in the
//! swept parameter (common random numbers).

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forwarding::{static_average_path, ForwardingMode};
use crate::grid::{Coord, GridSpec};
use crate::placement::{compare_strategies, optimize_axes_placement, Placement, Strategy, StrategyOutcome};
use crate::sim::{run_replications, summarize, SimConfig, SimSummary};

pub const SWEEP_HEADER: &str = "# satcache sweep v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepVar {
    Clients,
    Duration,
    /// Whole-network cache budget, both strategies.
    Budget,
}

impl SweepVar {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVar::Clients => "clients",
            SweepVar::Duration => "duration",
            SweepVar::Budget => "budget",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clients" => Ok(SweepVar::Clients),
            "duration" => Ok(SweepVar::Duration),
            "budget" => Ok(SweepVar::Budget),
            _ => Err(Error::InvalidArgument(format!("unknown sweep variable {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub grid: GridSpec,
    pub producer: Coord,
    pub var: SweepVar,
    pub values: Vec<f64>,
    /// In-axes caches per quadrant, one series each. Ignored by budget sweeps.
    pub caches: Vec<usize>,
    pub clients: usize,
    pub duration: f64,
    pub hop_latency: f64,
    pub replications: u32,
    pub seed: u64,
    pub mode: ForwardingMode,
}

impl SweepSpec {
    pub fn new(grid: GridSpec, var: SweepVar, values: Vec<f64>) -> Self {
        SweepSpec {
            grid,
            producer: Coord::ORIGIN,
            var,
            values,
            caches: vec![0],
            clients: 1000,
            duration: 0.0,
            hop_latency: 1.0,
            replications: 1,
            seed: 0,
            mode: ForwardingMode::CacheAware,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub var: SweepVar,
    pub value: f64,
    /// `2xN` label of the placement series (clients and duration sweeps).
    pub caches: Option<String>,
    /// Strategy (budget sweeps).
    pub strategy: Option<Strategy>,
    pub replication: u32,
    /// `None` when the budget is unreachable for the strategy.
    pub mean_path_len: Option<f64>,
    /// Exact whole-torus static average path.
    pub theoretical: Option<f64>,
    /// Quadrant average-distance reduction against the cache-free baseline.
    pub reduction: Option<f64>,
}

fn to_f64(r: num_rational::Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn integral(var: SweepVar, v: f64) -> Result<u64> {
    if v.fract() != 0.0 || v < 0.0 || !v.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{var} values must be non-negative integers, got {v}"
        )));
    }
    Ok(v as u64)
}

struct Point {
    value: f64,
    caches: Option<String>,
    strategy: Option<Strategy>,
    reduction: Option<f64>,
    cfg: Option<SimConfig>,
}

fn points(spec: &SweepSpec) -> Result<Vec<Point>> {
    let g = spec.grid;
    let base = |placement: Placement| SimConfig {
        grid: g,
        placement,
        producer: spec.producer,
        num_clients: spec.clients,
        duration: spec.duration,
        hop_latency: spec.hop_latency,
        rng_seed: spec.seed,
        replications: spec.replications,
        mode: spec.mode,
    };
    let mut out = Vec::new();
    match spec.var {
        SweepVar::Clients | SweepVar::Duration => {
            let placements = spec
                .caches
                .iter()
                .map(|&n| Ok((n, Placement::InAxes(optimize_axes_placement(&g, n)?))))
                .collect::<Result<Vec<_>>>()?;
            for &value in &spec.values {
                for (n, p) in &placements {
                    let mut cfg = base(p.clone());
                    if spec.var == SweepVar::Clients {
                        cfg.num_clients = integral(spec.var, value)? as usize;
                    } else {
                        cfg.duration = value;
                    }
                    cfg.validate()?;
                    out.push(Point {
                        value,
                        caches: Some(format!("2x{n}")),
                        strategy: None,
                        reduction: None,
                        cfg: Some(cfg),
                    });
                }
            }
        }
        SweepVar::Budget => {
            let budgets = spec
                .values
                .iter()
                .map(|&v| integral(spec.var, v))
                .collect::<Result<Vec<_>>>()?;
            for row in compare_strategies(&g, &budgets) {
                let (cfg, reduction) = match row.outcome {
                    StrategyOutcome::Reachable {
                        placement, reduction, ..
                    } => {
                        let cfg = base(placement);
                        cfg.validate()?;
                        (Some(cfg), Some(reduction))
                    }
                    StrategyOutcome::Unreachable { .. } => (None, None),
                };
                out.push(Point {
                    value: row.budget as f64,
                    caches: None,
                    strategy: Some(row.strategy),
                    reduction,
                    cfg,
                });
            }
        }
    }
    Ok(out)
}

/// Runs every point of the sweep. Rows come out ordered by sweep value, then
/// series, then replication, regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.replications == 0 {
        return Err(Error::InvalidConfig("replications must be positive".into()));
    }
    let points = points(spec)?;
    let results: Vec<Option<(f64, SimSummary)>> = points
        .par_iter()
        .map(|p| {
            p.cfg
                .as_ref()
                .map(|cfg| -> Result<_> {
                    let theoretical = to_f64(static_average_path(&cfg.context()?));
                    Ok((theoretical, summarize(&run_replications(cfg)?)?))
                })
                .transpose()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(points.len() * spec.replications as usize);
    for (p, res) in points.iter().zip(results) {
        for k in 0..spec.replications {
            rows.push(SweepRow {
                var: spec.var,
                value: p.value,
                caches: p.caches.clone(),
                strategy: p.strategy,
                replication: k,
                mean_path_len: res.as_ref().map(|(_, s)| s.replication_means[k as usize]),
                theoretical: res.as_ref().map(|(t, _)| *t),
                reduction: p.reduction,
            });
        }
    }
    Ok(rows)
}

fn na(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

/// Long-format CSV. Budget sweeps carry `strategy` and `reduction` in place
/// of the `caches` series label.
pub fn write_sweep_csv<W: Write>(mut w: W, var: SweepVar, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    let mut csv = csv::Writer::from_writer(w);
    if var == SweepVar::Budget {
        csv.write_record([
            "sweep_var",
            "value",
            "strategy",
            "replication",
            "mean_path_len",
            "theoretical",
            "reduction",
        ])?;
    } else {
        csv.write_record([
            "sweep_var",
            "value",
            "caches",
            "replication",
            "mean_path_len",
            "theoretical",
        ])?;
    }
    for r in rows {
        let mut rec = vec![r.var.to_string(), r.value.to_string()];
        if var == SweepVar::Budget {
            rec.push(r.strategy.map_or_else(|| "NA".into(), |s| s.to_string()));
        } else {
            rec.push(r.caches.clone().unwrap_or_else(|| "NA".into()));
        }
        rec.push(r.replication.to_string());
        rec.push(na(r.mean_path_len));
        rec.push(na(r.theoretical));
        if var == SweepVar::Budget {
            rec.push(na(r.reduction));
        }
        csv.write_record(&rec)?;
    }
    csv.flush()?;
    Ok(())
}
