//! Ramp pruning regions, box tests and the octree search for pairs of
//! closest approach.

mod distance;
mod ramp;
mod search;

pub use distance::aabb_segment_distance;
pub use ramp::{aabb_intersects_ramp, ramp_for_edge, Ramp};
pub(crate) use search::finish;
pub use search::{
    find_pocas, find_pocas_in, search_edge, PocaSearch, SearchCounters, SearchOptions, SearchState,
};
