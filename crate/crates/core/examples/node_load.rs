//! Where transmissions concentrate: per-node load of one replication, shown
//! as a coarse character map of the constellation.

use satcache::placement::optimize_axes_placement;
use satcache::sim::{run_simulation, SimConfig};
use satcache::{Coord, GridSpec, Placement};

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(24, 24)?;
    let mut cfg = SimConfig::new(g, Placement::InAxes(optimize_axes_placement(&g, 3)?));
    cfg.num_clients = 2000;
    cfg.duration = 5000.0;
    let m = run_simulation(&cfg)?;
    let peak = *m.per_node_tx.iter().max().unwrap_or(&1).max(&1);
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    for y in (0..g.sats_per_plane()).rev() {
        let line: String = (0..g.planes())
            .map(|x| {
                let tx = m.per_node_tx[g.index(Coord::new(x, y))];
                shades[(tx * (shades.len() as u64 - 1) / peak) as usize]
            })
            .collect();
        println!("{line}");
    }
    println!(
        "peak {peak} transmissions, {} cache hits, {} coalesced",
        m.cache_hits, m.coalesced_requests
    );
    Ok(())
}
