//! Optimal in-axes placements on 60x42, next to the greedy coordinate-advance
//! loop started from both parities.

use satcache::placement::{axes_total_cost, coordinate_advance, optimize_axes_placement, Parity};
use satcache::GridSpec;

fn main() -> satcache::Result<()> {
    let g: GridSpec = "60x42".parse()?;
    for n in [1, 2, 5, 10] {
        let p = optimize_axes_placement(&g, n)?;
        let report = axes_total_cost(&p, &g);
        println!(
            "N={n:<2} H={:?} V={:?} average {:.4} ({} caches network-wide)",
            p.horizontal(),
            p.vertical(),
            report.average(),
            report.cache_count_full_network
        );
        for parity in Parity::BOTH {
            let a = coordinate_advance(&g, n, parity)?;
            let gap = a.cost as f64 / report.total_cost as f64 - 1.0;
            println!(
                "      greedy {parity:?}: {:?} cost {} (+{:.2}%), {} evaluations",
                a.positions,
                a.cost,
                100.0 * gap,
                a.evaluations
            );
        }
    }
    Ok(())
}
