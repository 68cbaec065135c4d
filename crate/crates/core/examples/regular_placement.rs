//! Regular r x r layouts on a 24x24 constellation: cache count, average and
//! worst-case distance.

use satcache::placement::{baseline_average, regular_placement};
use satcache::GridSpec;

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(24, 24)?;
    let base = baseline_average(&g);
    println!("no caches: average {base}");
    println!("{:>3} {:>7} {:>10} {:>8}", "r", "caches", "average", "max");
    for r in [1, 2, 3, 4, 6, 12] {
        let layout = regular_placement(&g, r)?;
        println!(
            "{r:>3} {:>7} {:>10.4} {:>8}",
            layout.report.cache_count_full_network,
            layout.report.average(),
            layout.max_distance
        );
    }
    // 5 does not divide 12
    println!("r = 5: {}", regular_placement(&g, 5).unwrap_err());
    Ok(())
}
