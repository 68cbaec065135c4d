//! Writing a placement to JSON and reading it back.

use satcache::placement::{optimize_axes_placement, PlacementFile};
use satcache::{GridSpec, Placement};

fn main() -> satcache::Result<()> {
    let g = GridSpec::new(60, 42)?;
    let file = PlacementFile::new(g, &Placement::InAxes(optimize_axes_placement(&g, 5)?));
    let json = file.to_json();
    println!("{json}");
    let back = PlacementFile::from_json(&json)?;
    assert_eq!(back, file);
    println!("round trip ok: {:?}", back.placement()?);
    Ok(())
}
