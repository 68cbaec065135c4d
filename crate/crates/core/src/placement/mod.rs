//! Designated-cache placements for a single content prefix.
//!
//! All placement reasoning happens in one quadrant: offsets `(x, y)` with
//! `0 <= x < h`, `0 <= y < v` from the producer at `(0, 0)`. The same layout
//! is mirrored into the other three quadrants, so a cache on a semi-axis is
//! shared by the two quadrants that border it.
//!
//! Two families are supported:
//!
//! * [`RegularPlacement`]: caches on the corners of an `r x r` subdivision.
//! * [`InAxesPlacement`]: caches only on the producer's row and column.

mod compare;
mod file;
mod optimize;
mod oracle;
mod regions;
mod regular;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Offset};

pub use compare::{compare_strategies, Strategy, StrategyOutcome, StrategyRow};
pub use file::PlacementFile;
pub use optimize::{
    assign_axes, coordinate_advance, max_caches, optimize_axes_placement, optimize_with, AdvanceOutcome,
    AxesSearch, Parity,
};
pub use oracle::{exhaustive_axes_placement, OracleResult, DEFAULT_ENUMERATION_BUDGET};
pub use regions::{axes_region_decomposition, axes_total_cost, region_cost, try_region_cost, Region};
pub use regular::{regular_placement, RegularLayout};

/// Which axis an in-axes cache sits on. `Horizontal` caches are at `(p, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }

    /// Exclusive upper bound for positions on this axis.
    pub fn bound(self, g: &GridSpec) -> u32 {
        match self {
            Axis::Horizontal => g.h(),
            Axis::Vertical => g.v(),
        }
    }
}

/// One entry of the merged, sorted cache sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisCache {
    pub position: u32,
    pub axis: Axis,
}

impl AxisCache {
    pub fn offset(&self) -> Offset {
        match self.axis {
            Axis::Horizontal => Offset::new(self.position as i32, 0),
            Axis::Vertical => Offset::new(0, self.position as i32),
        }
    }
}

/// The node answering for a region: the producer itself or a designated cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Server {
    Producer,
    Cache(Offset),
}

impl Server {
    pub fn offset(&self) -> Offset {
        match self {
            Server::Producer => Offset::ZERO,
            Server::Cache(o) => *o,
        }
    }

    fn from_point(x: u32, y: u32) -> Server {
        if x == 0 && y == 0 {
            Server::Producer
        } else {
            Server::Cache(Offset::new(x as i32, y as i32))
        }
    }
}

impl fmt::Display for Server {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Server::Producer => f.write_str("PRODUCER"),
            Server::Cache(o) => write!(f, "({},{})", o.dx, o.dy),
        }
    }
}

/// Caches on the producer's axes, `horizontal` at `(p, 0)` and `vertical` at
/// `(0, p)`.
///
/// Positions are strictly increasing within an axis and never shared between
/// the two axes, so the merged sequence is strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InAxesPlacement {
    horizontal: Vec<u32>,
    vertical: Vec<u32>,
}

impl InAxesPlacement {
    pub fn new(horizontal: Vec<u32>, vertical: Vec<u32>, g: &GridSpec) -> Result<Self> {
        for (name, list, bound) in [("horizontal", &horizontal, g.h()), ("vertical", &vertical, g.v())] {
            if let Some(&p) = list.iter().find(|&&p| p == 0 || p >= bound) {
                return Err(Error::InvalidPlacement(format!(
                    "{name} position {p} outside (0, {bound}) on {g}"
                )));
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidPlacement(format!(
                    "{name} positions must be strictly increasing: {list:?}"
                )));
            }
        }
        if let Some(p) = horizontal.iter().find(|p| vertical.binary_search(p).is_ok()) {
            return Err(Error::InvalidPlacement(format!("position {p} used on both axes")));
        }
        Ok(InAxesPlacement { horizontal, vertical })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn horizontal(&self) -> &[u32] {
        &self.horizontal
    }

    pub fn vertical(&self) -> &[u32] {
        &self.vertical
    }

    /// Caches per quadrant.
    pub fn len(&self) -> usize {
        self.horizontal.len() + self.vertical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The merged sequence sorted by position, each entry tagged with its axis.
    pub fn merged(&self) -> Vec<AxisCache> {
        let mut all: Vec<AxisCache> = self
            .horizontal
            .iter()
            .map(|&position| AxisCache {
                position,
                axis: Axis::Horizontal,
            })
            .chain(self.vertical.iter().map(|&position| AxisCache {
                position,
                axis: Axis::Vertical,
            }))
            .collect();
        all.sort();
        all
    }

    /// Whether the merged sequence alternates between the axes.
    pub fn is_strictly_interleaved(&self) -> bool {
        self.merged().windows(2).all(|w| w[0].axis != w[1].axis)
    }

    /// Designated nodes across the whole torus: every semi-axis gets a copy.
    pub fn network_cache_count(&self) -> u64 {
        2 * self.len() as u64
    }

    fn best_below(list: &[u32], limit: u32) -> u32 {
        match list.partition_point(|&p| p <= limit) {
            0 => 0,
            i => list[i - 1],
        }
    }

    fn best_strictly_below(list: &[u32], limit: u32) -> u32 {
        match list.partition_point(|&p| p < limit) {
            0 => 0,
            i => list[i - 1],
        }
    }
}

impl fmt::Display for InAxesPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H={:?} V={:?}", self.horizontal, self.vertical)
    }
}

/// Caches at `(a * h / r, b * v / r)` for `a, b` in `[0, r)`, except the
/// producer's own corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegularPlacement {
    r: u32,
    step_x: u32,
    step_y: u32,
}

impl RegularPlacement {
    pub fn new(r: u32, g: &GridSpec) -> Result<Self> {
        if r == 0 {
            return Err(Error::Infeasible("subdivision factor r must be >= 1".into()));
        }
        let (h, v) = (g.h(), g.v());
        if h % r != 0 || v % r != 0 {
            return Err(Error::Infeasible(format!(
                "r={r} does not divide the quadrant extents h={h}, v={v} of {g}"
            )));
        }
        Ok(RegularPlacement {
            r,
            step_x: h / r,
            step_y: v / r,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn steps(&self) -> (u32, u32) {
        (self.step_x, self.step_y)
    }

    /// `4r(r-1)`: designated nodes across the whole torus.
    pub fn network_cache_count(&self) -> u64 {
        let r = self.r as u64;
        4 * r * (r - 1)
    }

    fn lattice_floor(&self, ax: u32, ay: u32) -> (u32, u32) {
        let a = (ax / self.step_x).min(self.r - 1);
        let b = (ay / self.step_y).min(self.r - 1);
        (a, b)
    }
}

/// A placement of one prefix's designated caches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    Regular(RegularPlacement),
    InAxes(InAxesPlacement),
}

impl Placement {
    pub fn none() -> Self {
        Placement::InAxes(InAxesPlacement::empty())
    }

    pub fn network_cache_count(&self) -> u64 {
        match self {
            Placement::Regular(p) => p.network_cache_count(),
            Placement::InAxes(p) => p.network_cache_count(),
        }
    }

    /// Checks that the placement was built for a grid with the same quadrant
    /// extents as `g`.
    pub fn validate(&self, g: &GridSpec) -> Result<()> {
        match self {
            Placement::InAxes(p) => {
                InAxesPlacement::new(p.horizontal.clone(), p.vertical.clone(), g).map(|_| ())
            }
            Placement::Regular(p) => {
                let q = RegularPlacement::new(p.r, g)?;
                if q != *p {
                    return Err(Error::InvalidPlacement(format!(
                        "regular r={} was built for a different grid than {g}",
                        p.r
                    )));
                }
                Ok(())
            }
        }
    }

    /// Designated cache positions in the first quadrant, producer excluded.
    pub fn quadrant_caches(&self) -> Vec<(u32, u32)> {
        match self {
            Placement::InAxes(p) => p
                .merged()
                .iter()
                .map(|c| {
                    let o = c.offset();
                    (o.dx as u32, o.dy as u32)
                })
                .collect(),
            Placement::Regular(p) => (0..p.r)
                .flat_map(|a| (0..p.r).map(move |b| (a * p.step_x, b * p.step_y)))
                .filter(|&pt| pt != (0, 0))
                .collect(),
        }
    }

    /// Whether the node at quadrant magnitudes `(ax, ay)` is a designated cache.
    pub fn is_designated(&self, ax: u32, ay: u32) -> bool {
        match self {
            Placement::InAxes(p) => {
                (ay == 0 && ax > 0 && p.horizontal.binary_search(&ax).is_ok())
                    || (ax == 0 && ay > 0 && p.vertical.binary_search(&ay).is_ok())
            }
            Placement::Regular(p) => {
                (ax, ay) != (0, 0)
                    && ax.is_multiple_of(p.step_x)
                    && ay.is_multiple_of(p.step_y)
                    && ax / p.step_x < p.r
                    && ay / p.step_y < p.r
            }
        }
    }

    /// Closest cache (or the producer) reachable from `(ax, ay)` without moving
    /// away from the producer: the dominated designated point maximizing
    /// `x + y`, ties to the larger `x`.
    pub fn serving_point(&self, ax: u32, ay: u32) -> (u32, u32) {
        match self {
            Placement::InAxes(p) => {
                let hx = InAxesPlacement::best_below(&p.horizontal, ax);
                let vy = InAxesPlacement::best_below(&p.vertical, ay);
                if hx == 0 && vy == 0 {
                    (0, 0)
                } else if hx >= vy {
                    (hx, 0)
                } else {
                    (0, vy)
                }
            }
            Placement::Regular(p) => {
                let (a, b) = p.lattice_floor(ax, ay);
                (a * p.step_x, b * p.step_y)
            }
        }
    }

    /// Like [`serving_point`](Self::serving_point) but never returns
    /// `(ax, ay)` itself; used when a designated cache must forward a miss.
    pub fn upstream_point(&self, ax: u32, ay: u32) -> (u32, u32) {
        if !self.is_designated(ax, ay) {
            return self.serving_point(ax, ay);
        }
        match self {
            Placement::InAxes(p) => {
                if ay == 0 {
                    (InAxesPlacement::best_strictly_below(&p.horizontal, ax), 0)
                } else {
                    (0, InAxesPlacement::best_strictly_below(&p.vertical, ay))
                }
            }
            Placement::Regular(p) => {
                let (a, b) = (ax / p.step_x, ay / p.step_y);
                let left = (a > 0).then(|| ((a - 1) * p.step_x, b * p.step_y));
                let down = (b > 0).then(|| (a * p.step_x, (b - 1) * p.step_y));
                match (left, down) {
                    (Some(l), Some(d)) => {
                        if (d.0 + d.1, d.0) >= (l.0 + l.1, l.0) {
                            d
                        } else {
                            l
                        }
                    }
                    (Some(l), None) => l,
                    (None, Some(d)) => d,
                    (None, None) => (0, 0),
                }
            }
        }
    }

    pub fn serving_server(&self, ax: u32, ay: u32) -> Server {
        let (x, y) = self.serving_point(ax, ay);
        Server::from_point(x, y)
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Regular(p) => write!(f, "regular r={}", p.r),
            Placement::InAxes(p) => write!(f, "axes {p}"),
        }
    }
}

/// Cost summary of a placement over one quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlacementReport {
    /// Sum of hop distances from every quadrant node to its serving point.
    pub total_cost: u64,
    /// `total_cost / (h * v)`.
    pub average_distance: Ratio<u64>,
    pub cache_count_full_network: u64,
}

impl PlacementReport {
    pub(crate) fn new(total_cost: u64, g: &GridSpec, cache_count_full_network: u64) -> Self {
        let nodes = g.h() as u64 * g.v() as u64;
        PlacementReport {
            total_cost,
            average_distance: Ratio::new(total_cost, nodes.max(1)),
            cache_count_full_network,
        }
    }

    pub fn average(&self) -> f64 {
        *self.average_distance.numer() as f64 / *self.average_distance.denom() as f64
    }
}

/// Average quadrant distance with no caches at all, `(h + v) / 2 - 1`.
pub fn baseline_average(g: &GridSpec) -> Ratio<u64> {
    PlacementReport::new(region_cost(0, g.h(), g.v()), g, 0).average_distance
}
