//! Torus model of a constellation with four inter-satellite links per node.
//!
//! Nodes are addressed by `(plane, slot)` coordinates kept reduced modulo the
//! grid dimensions. Distances use the wrap-around taxicab metric, and every
//! per-prefix computation works on [`Offset`]s taken relative to the node that
//! serves as the prefix's exit point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Dimensions of the constellation grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridSpec {
    planes: u32,
    sats_per_plane: u32,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    planes: u32,
    sats_per_plane: u32,
}

impl TryFrom<RawGrid> for GridSpec {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self, Error> {
        GridSpec::new(raw.planes, raw.sats_per_plane)
    }
}

impl From<GridSpec> for RawGrid {
    fn from(g: GridSpec) -> Self {
        RawGrid {
            planes: g.planes,
            sats_per_plane: g.sats_per_plane,
        }
    }
}

impl GridSpec {
    pub fn new(planes: u32, sats_per_plane: u32) -> Result<Self, Error> {
        if planes < 2 || sats_per_plane < 2 {
            return Err(Error::InvalidGrid(format!(
                "{planes}x{sats_per_plane}: both dimensions must be at least 2"
            )));
        }
        Ok(GridSpec {
            planes,
            sats_per_plane,
        })
    }

    pub fn planes(&self) -> u32 {
        self.planes
    }

    pub fn sats_per_plane(&self) -> u32 {
        self.sats_per_plane
    }

    /// Horizontal quadrant extent, `planes / 2`.
    pub fn h(&self) -> u32 {
        self.planes / 2
    }

    /// Vertical quadrant extent, `sats_per_plane / 2`.
    pub fn v(&self) -> u32 {
        self.sats_per_plane / 2
    }

    pub fn node_count(&self) -> usize {
        self.planes as usize * self.sats_per_plane as usize
    }

    /// Largest distance between two nodes.
    pub fn diameter(&self) -> u32 {
        self.h() + self.v()
    }

    /// Builds a coordinate, reducing both components modulo the dimensions.
    pub fn coord(&self, x: i64, y: i64) -> Coord {
        Coord {
            x: x.rem_euclid(self.planes as i64) as u32,
            y: y.rem_euclid(self.sats_per_plane as i64) as u32,
        }
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x < self.planes && c.y < self.sats_per_plane
    }

    /// Dense index of a node, row-major by plane.
    pub fn index(&self, c: Coord) -> usize {
        c.x as usize * self.sats_per_plane as usize + c.y as usize
    }

    pub fn from_index(&self, idx: usize) -> Coord {
        let s = self.sats_per_plane as usize;
        Coord {
            x: (idx / s) as u32,
            y: (idx % s) as u32,
        }
    }

    /// All nodes in index order.
    pub fn nodes(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.planes).flat_map(move |x| (0..self.sats_per_plane).map(move |y| Coord { x, y }))
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.planes, self.sats_per_plane)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `PLANESxSATS`, e.g. `60x42`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidGrid(format!("{s:?}: expected PLANESxSATS, e.g. 60x42"));
        let (p, q) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        let planes = p.trim().parse().map_err(|_| bad())?;
        let sats = q.trim().parse().map_err(|_| bad())?;
        GridSpec::new(planes, sats)
    }
}

/// Absolute node coordinate: `x` is the orbital plane, `y` the slot in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord {
    pub x: u32,
    pub y: u32,
}

impl Coord {
    pub const ORIGIN: Coord = Coord { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Coord { x, y }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Signed displacement of a node from a center, along the shorter wrap
/// direction of each dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Offset {
    pub dx: i32,
    pub dy: i32,
}

impl Offset {
    pub const ZERO: Offset = Offset { dx: 0, dy: 0 };

    pub fn new(dx: i32, dy: i32) -> Self {
        Offset { dx, dy }
    }

    /// Hop count back to the center.
    pub fn magnitude(&self) -> u32 {
        self.dx.unsigned_abs() + self.dy.unsigned_abs()
    }

    /// Component magnitudes, i.e. the position in the first quadrant.
    pub fn abs(&self) -> (u32, u32) {
        (self.dx.unsigned_abs(), self.dy.unsigned_abs())
    }

    /// Taxicab distance between two offsets that sit in the same quadrant.
    pub fn distance_to(&self, other: Offset) -> u32 {
        self.dx.abs_diff(other.dx) + self.dy.abs_diff(other.dy)
    }

    /// Absolute coordinate of this offset around `center`.
    pub fn resolve(&self, center: Coord, g: &GridSpec) -> Coord {
        g.coord(center.x as i64 + self.dx as i64, center.y as i64 + self.dy as i64)
    }

    /// Builds the offset with magnitudes `(ax, ay)` carrying the signs of `self`.
    pub fn with_magnitudes(&self, ax: u32, ay: u32) -> Offset {
        let sx = if self.dx < 0 { -1 } else { 1 };
        let sy = if self.dy < 0 { -1 } else { 1 };
        Offset {
            dx: sx * ax as i32,
            dy: sy * ay as i32,
        }
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+},{:+})", self.dx, self.dy)
    }
}

fn ring_sub(a: u32, b: u32, m: u32) -> u32 {
    (a + m - b) % m
}

/// Wrap-around taxicab distance between two nodes.
pub fn modular_distance(a: Coord, b: Coord, g: &GridSpec) -> u32 {
    let (np, ns) = (g.planes, g.sats_per_plane);
    let dx = ring_sub(a.x, b.x, np).min(ring_sub(b.x, a.x, np));
    let dy = ring_sub(a.y, b.y, ns).min(ring_sub(b.y, a.y, ns));
    dx + dy
}

fn signed_component(node: u32, center: u32, m: u32) -> i32 {
    let fwd = ring_sub(node, center, m);
    let back = m - fwd;
    if fwd == 0 || fwd <= back {
        fwd as i32
    } else {
        -(back as i32)
    }
}

/// Offset of `node` relative to `center`. Antipodal ties take the positive sign.
pub fn normalize_offset(node: Coord, center: Coord, g: &GridSpec) -> Offset {
    Offset {
        dx: signed_component(node.x, center.x, g.planes),
        dy: signed_component(node.y, center.y, g.sats_per_plane),
    }
}

/// The four ISL neighbors: `+x`, `-x`, `+y`, `-y`.
///
/// On a dimension of size 2 the two neighbors along it coincide.
pub fn neighbors(node: Coord, g: &GridSpec) -> [Coord; 4] {
    let (x, y) = (node.x as i64, node.y as i64);
    [
        g.coord(x + 1, y),
        g.coord(x - 1, y),
        g.coord(x, y + 1),
        g.coord(x, y - 1),
    ]
}
