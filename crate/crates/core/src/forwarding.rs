//! Hop-by-hop forwarding toward a prefix's producer.
//!
//! Two rules govern every hop: never increase the distance to the producer,
//! and steer toward the closest designated cache reachable under the first
//! rule. Everything here works on producer-relative [`Offset`]s; a node's
//! quadrant is given by the signs of its offset and its position inside the
//! quadrant by the magnitudes.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::grid::{normalize_offset, Coord, GridSpec, Offset};
use crate::placement::{Placement, Server};

/// How a node picks its serving cache.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ForwardingMode {
    /// Head for the closest dominated cache.
    #[default]
    CacheAware,
    /// Walk to the nearest axis first, then along it toward the producer,
    /// stopping at the first designated node met.
    NearestAxis,
}

impl fmt::Display for ForwardingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForwardingMode::CacheAware => "cache-aware",
            ForwardingMode::NearestAxis => "nearest-axis",
        })
    }
}

impl FromStr for ForwardingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cache-aware" => Ok(ForwardingMode::CacheAware),
            "nearest-axis" => Ok(ForwardingMode::NearestAxis),
            _ => Err(Error::InvalidArgument(format!("unknown forwarding mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardingContext {
    grid: GridSpec,
    producer: Coord,
    placement: Placement,
    mode: ForwardingMode,
}

impl ForwardingContext {
    pub fn new(grid: GridSpec, producer: Coord, placement: Placement) -> Result<Self> {
        if !grid.contains(producer) {
            return Err(Error::InvalidArgument(format!(
                "producer {producer} outside {grid}"
            )));
        }
        placement.validate(&grid)?;
        Ok(ForwardingContext {
            grid,
            producer,
            placement,
            mode: ForwardingMode::default(),
        })
    }

    pub fn with_mode(mut self, mode: ForwardingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn producer(&self) -> Coord {
        self.producer
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn mode(&self) -> ForwardingMode {
        self.mode
    }

    pub fn offset_of(&self, node: Coord) -> Offset {
        normalize_offset(node, self.producer, &self.grid)
    }

    pub fn coord_of(&self, node: Offset) -> Coord {
        node.resolve(self.producer, &self.grid)
    }

    /// Whether `node` is one of the prefix's designated caches.
    pub fn is_designated(&self, node: Offset) -> bool {
        let (ax, ay) = node.abs();
        self.placement.is_designated(ax, ay)
    }

    /// One step of the nearest-axis walk; `None` at the producer.
    fn axis_step(node: Offset) -> Option<Offset> {
        let (ax, ay) = node.abs();
        let (nx, ny) = match (ax, ay) {
            (0, 0) => return None,
            (0, _) => (0, ay - 1),
            (_, 0) => (ax - 1, 0),
            _ if ax <= ay => (ax - 1, ay),
            _ => (ax, ay - 1),
        };
        Some(node.with_magnitudes(nx, ny))
    }

    fn first_designated_on_walk(&self, mut node: Offset) -> Offset {
        while node != Offset::ZERO && !self.is_designated(node) {
            node = Self::axis_step(node).expect("nonzero offset has a step");
        }
        node
    }

    /// Cache (or producer) that answers Interests issued at `node`.
    pub fn serving_cache(&self, node: Offset) -> Server {
        let at = match self.mode {
            ForwardingMode::CacheAware => {
                let (ax, ay) = node.abs();
                let (sx, sy) = self.placement.serving_point(ax, ay);
                node.with_magnitudes(sx, sy)
            }
            ForwardingMode::NearestAxis => self.first_designated_on_walk(node),
        };
        if at == Offset::ZERO {
            Server::Producer
        } else {
            Server::Cache(at)
        }
    }

    /// Hops from `node` to its serving cache.
    pub fn serving_distance(&self, node: Offset) -> u32 {
        node.magnitude() - self.serving_cache(node).offset().magnitude()
    }

    /// Neighbor that moves `node` one hop closer to both the producer and
    /// `target`, a point `node` dominates. Both-admissible ties go to the
    /// coordinate with the larger remaining gap, then to `x`.
    fn step_toward(&self, node: Offset, target: Offset) -> Result<Offset> {
        let (ax, ay) = node.abs();
        let (tx, ty) = target.abs();
        if tx > ax || ty > ay || target.with_magnitudes(tx, ty) != node.with_magnitudes(tx, ty) {
            return Err(self.violation(
                node,
                format!("target {target} is not on a shortest path toward the producer"),
            ));
        }
        let (gx, gy) = (ax - tx, ay - ty);
        if gx == 0 && gy == 0 {
            return Err(self.violation(node, format!("already at target {target}")));
        }
        Ok(if gx >= gy {
            node.with_magnitudes(ax - 1, ay)
        } else {
            node.with_magnitudes(ax, ay - 1)
        })
    }

    fn violation(&self, node: Offset, detail: String) -> Error {
        Error::Forwarding {
            node: format!("{} {}", self.coord_of(node), node),
            detail,
        }
    }

    /// Next hop of an Interest at `node`, which must not be its own server.
    pub fn next_hop(&self, node: Offset) -> Result<Offset> {
        match self.mode {
            ForwardingMode::CacheAware => self.step_toward(node, self.serving_cache(node).offset()),
            ForwardingMode::NearestAxis => {
                if self.first_designated_on_walk(node) == node {
                    return Err(self.violation(node, "node is its own server".into()));
                }
                Ok(Self::axis_step(node).expect("non-producer node has a step"))
            }
        }
    }

    /// Next hop of an Interest at a designated cache that does not hold the
    /// Data yet: continue toward the closest cache upstream of it.
    pub fn miss_hop(&self, node: Offset) -> Result<Offset> {
        if !self.is_designated(node) {
            return Err(self.violation(node, "miss_hop called on a non-designated node".into()));
        }
        match self.mode {
            ForwardingMode::CacheAware => {
                let (ax, ay) = node.abs();
                let (ux, uy) = self.placement.upstream_point(ax, ay);
                self.step_toward(node, node.with_magnitudes(ux, uy))
            }
            ForwardingMode::NearestAxis => {
                Ok(Self::axis_step(node).expect("designated node is not the producer"))
            }
        }
    }
}

/// Free-function form of [`ForwardingContext::serving_cache`].
pub fn serving_cache(node: Offset, ctx: &ForwardingContext) -> Server {
    ctx.serving_cache(node)
}

/// Free-function form of [`ForwardingContext::next_hop`].
pub fn next_hop(node: Offset, ctx: &ForwardingContext) -> Result<Offset> {
    ctx.next_hop(node)
}

/// Absolute nodes visited from `consumer` to its serving cache, both ends
/// included; the hop count is `len() - 1`.
pub fn trace_path(consumer: Coord, ctx: &ForwardingContext) -> Result<Vec<Coord>> {
    let mut node = ctx.offset_of(consumer);
    let goal = ctx.serving_cache(node).offset();
    let mut path = vec![ctx.coord_of(node)];
    while node != goal {
        node = ctx.next_hop(node)?;
        path.push(ctx.coord_of(node));
    }
    Ok(path)
}

/// Exact mean, over every node of the torus, of the hop count to its serving
/// cache.
pub fn static_average_path(ctx: &ForwardingContext) -> Ratio<u64> {
    let g = ctx.grid();
    let total: u64 = g
        .nodes()
        .map(|c| ctx.serving_distance(ctx.offset_of(c)) as u64)
        .sum();
    Ratio::new(total, g.node_count() as u64)
}
