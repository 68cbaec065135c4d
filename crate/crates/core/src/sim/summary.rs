use serde::Serialize;

use super::SimMetrics;
use crate::error::{Error, Result};

/// Aggregate of several replications of one configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimSummary {
    pub replications: usize,
    pub replication_means: Vec<f64>,
    pub mean_path_len: f64,
    /// Sample standard deviation of the per-replication means; absent for a
    /// single replication.
    pub stdev_path_len: Option<f64>,
    /// `stdev / sqrt(replications)`.
    pub std_error: Option<f64>,
    pub requests: u64,
    pub cache_hits: u64,
    pub producer_hits: u64,
    pub coalesced_requests: u64,
    /// Transmissions per node summed over replications, grid index order.
    #[serde(skip)]
    pub per_node_tx: Vec<u64>,
}

pub fn summarize(runs: &[SimMetrics]) -> Result<SimSummary> {
    let Some(first) = runs.first() else {
        return Err(Error::InvalidArgument("nothing to summarize".into()));
    };
    let means: Vec<f64> = runs.iter().map(SimMetrics::mean_path_len).collect();
    let n = means.len() as f64;
    let mean = means.iter().sum::<f64>() / n;
    let stdev = (means.len() > 1).then(|| {
        let ss: f64 = means.iter().map(|m| (m - mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    });
    let mut per_node_tx = vec![0u64; first.per_node_tx.len()];
    for m in runs {
        if m.per_node_tx.len() != per_node_tx.len() {
            return Err(Error::InvalidArgument(
                "replications come from different grids".into(),
            ));
        }
        for (acc, v) in per_node_tx.iter_mut().zip(&m.per_node_tx) {
            *acc += v;
        }
    }
    Ok(SimSummary {
        replications: runs.len(),
        mean_path_len: mean,
        stdev_path_len: stdev,
        std_error: stdev.map(|s| s / n.sqrt()),
        replication_means: means,
        requests: runs.iter().map(|m| m.requests.len() as u64).sum(),
        cache_hits: runs.iter().map(|m| m.cache_hits).sum(),
        producer_hits: runs.iter().map(|m| m.producer_hits).sum(),
        coalesced_requests: runs.iter().map(|m| m.coalesced_requests).sum(),
        per_node_tx,
    })
}
