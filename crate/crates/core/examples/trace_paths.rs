//! Hop-by-hop Interest paths under cache-aware and nearest-axis forwarding.

use satcache::placement::InAxesPlacement;
use satcache::{
    static_average_path, trace_path, Coord, ForwardingContext, ForwardingMode, GridSpec, Placement,
};

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(24, 24)?;
    let p = InAxesPlacement::new(vec![6], vec![8], &g)?;
    for mode in [ForwardingMode::CacheAware, ForwardingMode::NearestAxis] {
        let ctx = ForwardingContext::new(g, Coord::ORIGIN, Placement::InAxes(p.clone()))?.with_mode(mode);
        println!("{mode}: static average {}", static_average_path(&ctx));
        for consumer in [Coord::new(12, 14), Coord::new(5, 20), Coord::new(3, 3)] {
            let path = trace_path(consumer, &ctx)?;
            let hops: Vec<String> = path.iter().map(|c| c.to_string()).collect();
            println!("  {} hops: {}", path.len() - 1, hops.join(" -> "));
        }
    }
    Ok(())
}
