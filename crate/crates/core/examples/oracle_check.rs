//! Exhaustive enumeration against the optimizer on grids small enough to
//! enumerate every placement.

use satcache::placement::{
    axes_total_cost, exhaustive_axes_placement, max_caches, optimize_axes_placement,
    DEFAULT_ENUMERATION_BUDGET,
};
use satcache::GridSpec;

fn main() -> satcache::Result<()> {
    for (p, s) in [(10, 10), (16, 12), (20, 26)] {
        let g = GridSpec::new(p, s)?;
        for n in 1..=max_caches(&g).min(4) {
            let fast = axes_total_cost(&optimize_axes_placement(&g, n)?, &g);
            let all = exhaustive_axes_placement(&g, n, false, DEFAULT_ENUMERATION_BUDGET)?;
            let verdict = if all.report.total_cost == fast.total_cost {
                "MATCH"
            } else {
                "MISMATCH"
            };
            println!(
                "{g} N={n}: optimizer {} exhaustive {} over {} placements {verdict}",
                fast.total_cost, all.report.total_cost, all.evaluated
            );
        }
    }
    Ok(())
}
