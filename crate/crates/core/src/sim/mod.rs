//! Discrete-event simulation of Interest/Data exchange for one content
//! prefix, with PIT coalescing and content stores on designated caches.
//!
//! Every replication draws its own request schedule from a ChaCha8 stream:
//! the generator is seeded with `rng_seed` and its stream id is set to the
//! replication index, so replication `k` is reproducible on its own and
//! replications can run in any order or in parallel.

mod engine;
mod output;
mod summary;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forwarding::{ForwardingContext, ForwardingMode};
use crate::grid::{Coord, GridSpec};
use crate::placement::Placement;

pub use engine::simulate_requests;
pub use output::{write_node_tx_csv, write_requests_csv, NODE_TX_HEADER, REQUESTS_HEADER};
pub use summary::{summarize, SimSummary};

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub grid: GridSpec,
    pub placement: Placement,
    pub producer: Coord,
    pub num_clients: usize,
    /// Requests are issued uniformly over `[0, duration]`.
    pub duration: f64,
    /// Time per link traversal.
    pub hop_latency: f64,
    pub rng_seed: u64,
    pub replications: u32,
    pub mode: ForwardingMode,
}

impl SimConfig {
    /// One replication of 1000 clients issuing at `t = 0`, producer at the
    /// origin, unit hop latency.
    pub fn new(grid: GridSpec, placement: Placement) -> Self {
        SimConfig {
            grid,
            placement,
            producer: Coord::ORIGIN,
            num_clients: 1000,
            duration: 0.0,
            hop_latency: 1.0,
            rng_seed: 0,
            replications: 1,
            mode: ForwardingMode::CacheAware,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.num_clients == 0 {
            return bad("num_clients must be positive".into());
        }
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return bad(format!("duration must be finite and >= 0, got {}", self.duration));
        }
        if !(self.hop_latency.is_finite() && self.hop_latency > 0.0) {
            return bad(format!(
                "hop_latency must be finite and > 0, got {}",
                self.hop_latency
            ));
        }
        if self.replications == 0 {
            return bad("replications must be positive".into());
        }
        self.context().map(|_| ())
    }

    pub fn context(&self) -> Result<ForwardingContext> {
        Ok(ForwardingContext::new(self.grid, self.producer, self.placement.clone())?.with_mode(self.mode))
    }
}

/// A consumer's single Interest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Request {
    pub time: f64,
    pub consumer: Coord,
}

/// Where a request's forwarding stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SatisfiedBy {
    Producer,
    Cache,
    Coalesced,
}

impl SatisfiedBy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SatisfiedBy::Producer => "producer",
            SatisfiedBy::Cache => "cache",
            SatisfiedBy::Coalesced => "coalesced",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RequestRecord {
    pub consumer: Coord,
    /// Node where forwarding stopped: the producer, a cache, or the
    /// coalescing node.
    pub stopped_at: Coord,
    pub t_request: f64,
    /// Interest hops from the consumer to where forwarding stopped.
    pub path_len: u32,
    pub satisfied_by: SatisfiedBy,
    /// When the Data reached the consumer.
    pub t_delivered: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimMetrics {
    pub replication: u32,
    /// Interest plus Data link transmissions, indexed by [`GridSpec::index`].
    pub per_node_tx: Vec<u64>,
    /// In issue order (the schedule's order).
    pub requests: Vec<RequestRecord>,
    pub cache_hits: u64,
    pub producer_hits: u64,
    pub coalesced_requests: u64,
    pub interest_tx: u64,
    pub data_tx: u64,
}

impl SimMetrics {
    pub fn mean_path_len(&self) -> f64 {
        if self.requests.is_empty() {
            return 0.0;
        }
        let total: u64 = self.requests.iter().map(|r| r.path_len as u64).sum();
        total as f64 / self.requests.len() as f64
    }
}

/// Generator for replication `replication` of a run seeded with `seed`.
pub fn replication_rng(seed: u64, replication: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication as u64);
    rng
}

/// Consumers uniform over all nodes (with replacement), request times
/// uniform over `[0, duration]`.
pub fn schedule_requests(cfg: &SimConfig, replication: u32) -> Vec<Request> {
    let mut rng = replication_rng(cfg.rng_seed, replication);
    let n = cfg.grid.node_count();
    (0..cfg.num_clients)
        .map(|_| {
            let consumer = cfg.grid.from_index(rng.random_range(0..n));
            let time = if cfg.duration > 0.0 {
                rng.random_range(0.0..=cfg.duration)
            } else {
                0.0
            };
            Request { time, consumer }
        })
        .collect()
}

/// Runs replication `replication` of `cfg`.
pub fn run_replication(cfg: &SimConfig, replication: u32) -> Result<SimMetrics> {
    cfg.validate()?;
    let ctx = cfg.context()?;
    let requests = schedule_requests(cfg, replication);
    let mut m = simulate_requests(&ctx, cfg.hop_latency, &requests)?;
    m.replication = replication;
    Ok(m)
}

/// First replication of `cfg`.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimMetrics> {
    run_replication(cfg, 0)
}

/// All replications, in replication order. Runs in parallel.
pub fn run_replications(cfg: &SimConfig) -> Result<Vec<SimMetrics>> {
    cfg.validate()?;
    (0..cfg.replications)
        .into_par_iter()
        .map(|k| run_replication(cfg, k))
        .collect()
}
