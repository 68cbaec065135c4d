//! Cache placement, cache-aware forwarding and NDN simulation on torus-shaped
//! satellite constellations.

pub mod error;
pub mod forwarding;
pub mod grid;
pub mod placement;

pub use error::{Error, Result};
pub use forwarding::{static_average_path, trace_path, ForwardingContext, ForwardingMode};
pub use grid::{modular_distance, neighbors, normalize_offset, Coord, GridSpec, Offset};
pub use placement::{InAxesPlacement, Placement, PlacementReport, RegularPlacement, Server};
pub mod cli;
pub mod sim;
pub mod sweep;
