//! Mean path length as requests spread out in time: simultaneous requests
//! coalesce in PITs, long spreads approach the static average.

use satcache::placement::optimize_axes_placement;
use satcache::sim::{run_replications, summarize, SimConfig};
use satcache::{static_average_path, GridSpec, Placement};

fn main() -> satcache::Result<()> {
    let g: GridSpec = "60x42".parse()?;
    let durations = [0.0, 10.0, 100.0, 1e3, 1e4, 1e5];
    print!("{:>6}", "caches");
    for d in durations {
        print!(" {d:>9}");
    }
    println!(" {:>9}", "static");
    for n in [0, 5] {
        let mut cfg = SimConfig::new(g, Placement::InAxes(optimize_axes_placement(&g, n)?));
        cfg.replications = 10;
        cfg.rng_seed = 7;
        print!("{:>6}", format!("2x{n}"));
        for d in durations {
            cfg.duration = d;
            print!(" {:>9.3}", summarize(&run_replications(&cfg)?)?.mean_path_len);
        }
        let r = static_average_path(&cfg.context()?);
        println!(" {:>9.3}", *r.numer() as f64 / *r.denom() as f64);
    }
    Ok(())
}
