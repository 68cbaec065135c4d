use std::ops::Range;

use super::{Axis, InAxesPlacement, PlacementReport, Server};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Offset};

/// Sum of distances to the anchor `(a1, 0)` over the rectangle
/// `[a1, a2) x [0, b)`, i.e. `b (a2 - a1) (a2 - a1 + b - 2) / 2`.
///
/// The same value applies with the axes swapped, for a vertical anchor.
pub fn region_cost(a1: u32, a2: u32, b: u32) -> u64 {
    debug_assert!(a1 <= a2);
    let w = (a2 - a1) as i64;
    let b = b as i64;
    // w + b - 2 is only negative when w * b == 0
    ((b * w * (w + b - 2)) / 2).max(0) as u64
}

/// Checked variant of [`region_cost`] for untrusted arguments.
pub fn try_region_cost(a1: i64, a2: i64, b: i64) -> Result<u64> {
    if a2 < a1 || a1 < 0 || b < 0 {
        return Err(Error::InvalidArgument(format!(
            "region_cost needs 0 <= a1 <= a2 and b >= 0, got ({a1}, {a2}, {b})"
        )));
    }
    let max = u32::MAX as i64;
    if a2 > max || b > max {
        return Err(Error::InvalidArgument("region_cost argument too large".into()));
    }
    Ok(region_cost(a1 as u32, a2 as u32, b as u32))
}

/// A rectangle of quadrant nodes, all forwarded to the same server.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub x: Range<u32>,
    pub y: Range<u32>,
    pub server: Server,
}

impl Region {
    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.x.contains(&x) && self.y.contains(&y)
    }

    pub fn len(&self) -> u64 {
        (self.x.end - self.x.start) as u64 * (self.y.end - self.y.start) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of distances from the region's nodes to its server.
    pub fn cost(&self) -> u64 {
        match self.server {
            Server::Producer => region_cost(0, self.x.end, self.y.end),
            Server::Cache(Offset { dy: 0, .. }) => region_cost(self.x.start, self.x.end, self.y.end),
            Server::Cache(_) => region_cost(self.y.start, self.y.end, self.x.end),
        }
    }
}

/// Splits the quadrant `[0, h) x [0, v)` into the rectangles served by the
/// producer and by each cache, in merged-sequence order.
///
/// A horizontal cache at `p` serves `[p, next horizontal) x [0, first vertical > p)`;
/// a vertical cache at `q` serves `[0, first horizontal > q) x [q, next vertical)`.
/// Missing neighbours fall back to the sentinels `(h, 0)` and `(0, v)`.
pub fn axes_region_decomposition(p: &InAxesPlacement, g: &GridSpec) -> Vec<Region> {
    let (h, v) = (g.h(), g.v());
    let hs = p.horizontal();
    let vs = p.vertical();
    let first_above = |list: &[u32], limit: u32, sentinel: u32| {
        list.iter().copied().find(|&q| q > limit).unwrap_or(sentinel)
    };

    let mut regions = Vec::with_capacity(p.len() + 1);
    regions.push(Region {
        x: 0..hs.first().copied().unwrap_or(h),
        y: 0..vs.first().copied().unwrap_or(v),
        server: Server::Producer,
    });
    for c in p.merged() {
        let region = match c.axis {
            Axis::Horizontal => Region {
                x: c.position..first_above(hs, c.position, h),
                y: 0..first_above(vs, c.position, v),
                server: Server::Cache(c.offset()),
            },
            Axis::Vertical => Region {
                x: 0..first_above(hs, c.position, h),
                y: c.position..first_above(vs, c.position, v),
                server: Server::Cache(c.offset()),
            },
        };
        regions.push(region);
    }
    regions
}

/// Quadrant cost of an in-axes placement, summed region by region.
pub fn axes_total_cost(p: &InAxesPlacement, g: &GridSpec) -> PlacementReport {
    let total = axes_region_decomposition(p, g).iter().map(Region::cost).sum();
    PlacementReport::new(total, g, p.network_cache_count())
}
