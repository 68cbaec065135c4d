//! Simulated mean path length on a 60x42 constellation against the static
//! prediction, for 2x{0,1,5,10} in-axes caches and requests spread over
//! 100, 1000 and 10000 times the network diameter. Short spreads undershoot
//! because concurrent Interests coalesce in PITs.

use satcache::placement::optimize_axes_placement;
use satcache::sim::{run_replications, summarize, SimConfig};
use satcache::{static_average_path, GridSpec, Placement};

fn main() -> satcache::Result<()> {
    let g: GridSpec = "60x42".parse()?;
    for multiple in [100.0, 1000.0, 10_000.0] {
        println!("duration {multiple} x diameter");
        println!(
            "{:>6} {:>10} {:>10} {:>8} {:>8}",
            "caches", "simulated", "static", "stderr", "gap%"
        );
        for n in [0, 1, 5, 10] {
            let placement = Placement::InAxes(optimize_axes_placement(&g, n)?);
            let mut cfg = SimConfig::new(g, placement);
            cfg.duration = multiple * g.diameter() as f64;
            cfg.replications = 25;
            cfg.rng_seed = 2024;
            let s = summarize(&run_replications(&cfg)?)?;
            let r = static_average_path(&cfg.context()?);
            let theory = *r.numer() as f64 / *r.denom() as f64;
            println!(
                "{:>6} {:>10.3} {:>10.3} {:>8.3} {:>+8.2}",
                format!("2x{n}"),
                s.mean_path_len,
                theory,
                s.std_error.unwrap_or(0.0),
                100.0 * (s.mean_path_len - theory) / theory
            );
        }
    }
    Ok(())
}
