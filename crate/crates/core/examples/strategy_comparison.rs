//! In-axes against regular placement for whole-network cache budgets on a
//! 24x24 constellation.

use satcache::placement::{compare_strategies, StrategyOutcome};
use satcache::GridSpec;

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(24, 24)?;
    println!(
        "{:>6} {:>8} {:>10} {:>10}  placement",
        "budget", "strategy", "average", "reduction"
    );
    for row in compare_strategies(&g, &[4, 8, 16, 24, 48]) {
        match &row.outcome {
            StrategyOutcome::Reachable {
                placement,
                report,
                reduction,
            } => println!(
                "{:>6} {:>8} {:>10.4} {:>9.1}%  {placement:?}",
                row.budget,
                row.strategy,
                report.average(),
                100.0 * reduction
            ),
            StrategyOutcome::Unreachable { reason } => {
                println!(
                    "{:>6} {:>8} {:>10} {:>10}  {reason}",
                    row.budget, row.strategy, "-", "-"
                )
            }
        }
    }
    Ok(())
}
