//! Torus distances and producer-centred offsets on a small constellation.

use satcache::{modular_distance, neighbors, normalize_offset, Coord, GridSpec};

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(8, 6)?;
    println!("{g}: quadrant {}x{}, diameter {}", g.h(), g.v(), g.diameter());

    let a = Coord::new(1, 1);
    for b in [Coord::new(7, 5), Coord::new(4, 3), Coord::new(1, 4)] {
        println!("d({a}, {b}) = {}", modular_distance(a, b, &g));
    }

    // offsets are taken around a producer and wrap at the half-way point
    let producer = Coord::new(2, 2);
    for node in [Coord::new(0, 0), Coord::new(7, 5), Coord::new(6, 2)] {
        let o = normalize_offset(node, producer, &g);
        println!("{node} seen from {producer}: {o} ({} hops)", o.magnitude());
    }
    let around: Vec<String> = neighbors(Coord::ORIGIN, &g)
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("neighbors of (0,0): {}", around.join(" "));
    Ok(())
}
