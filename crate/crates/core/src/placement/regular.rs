use super::{region_cost, PlacementReport, RegularPlacement};
use crate::error::Result;
use crate::grid::{GridSpec, Offset};

/// Regular `r x r` subdivision of a quadrant and its exact cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularLayout {
    pub placement: RegularPlacement,
    /// Cache offsets in one quadrant, producer excluded, ordered by `(x, y)`.
    pub caches: Vec<Offset>,
    pub report: PlacementReport,
    /// Farthest any quadrant node is from its nearest copy, `(h + v) / r - 2`.
    pub max_distance: u32,
}

pub fn regular_placement(g: &GridSpec, r: u32) -> Result<RegularLayout> {
    let placement = RegularPlacement::new(r, g)?;
    let (sx, sy) = placement.steps();
    let caches = (0..r)
        .flat_map(|a| (0..r).map(move |b| Offset::new((a * sx) as i32, (b * sy) as i32)))
        .filter(|o| *o != Offset::ZERO)
        .collect();
    // r^2 identical sub-rectangles, each with its cache on the lower-left corner.
    let total = (r as u64 * r as u64) * region_cost(0, sx, sy);
    Ok(RegularLayout {
        placement,
        caches,
        report: PlacementReport::new(total, g, placement.network_cache_count()),
        max_distance: sx + sy - 2,
    })
}
