use std::io::Write;

use super::SimMetrics;
use crate::error::Result;
use crate::grid::GridSpec;

pub const NODE_TX_HEADER: &str = "# satcache node-tx v1";
pub const REQUESTS_HEADER: &str = "# satcache requests v1";

/// Per-node transmission counts as `x,y,tx_count`, one row per node.
pub fn write_node_tx_csv<W: Write>(mut w: W, g: &GridSpec, per_node_tx: &[u64]) -> Result<()> {
    writeln!(w, "{NODE_TX_HEADER}")?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["x", "y", "tx_count"])?;
    for c in g.nodes() {
        let tx = per_node_tx.get(g.index(c)).copied().unwrap_or(0);
        csv.write_record([c.x.to_string(), c.y.to_string(), tx.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// One row per request of every replication.
pub fn write_requests_csv<W: Write>(mut w: W, runs: &[SimMetrics]) -> Result<()> {
    writeln!(w, "{REQUESTS_HEADER}")?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record([
        "replication",
        "consumer_x",
        "consumer_y",
        "t_request",
        "path_len",
        "satisfied_by",
    ])?;
    for m in runs {
        for r in &m.requests {
            csv.write_record([
                m.replication.to_string(),
                r.consumer.x.to_string(),
                r.consumer.y.to_string(),
                r.t_request.to_string(),
                r.path_len.to_string(),
                r.satisfied_by.as_str().to_string(),
            ])?;
        }
    }
    csv.flush()?;
    Ok(())
}
