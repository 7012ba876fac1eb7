//! Thickness and ropelength of polygonal space curves.
//!
//! The thickness of a polygon is `min(2·minRad, POCA)`: twice the smallest
//! polygonal radius of curvature, or the length of the shortest chord that
//! is a nontrivial local minimum of the distance between points of the
//! curve, whichever is smaller. [`find_pocas`] finds those chords with an
//! octree over edge midpoints that prunes boxes by distance and by a
//! per-edge "ramp" region; [`poca_naive`] checks all pairs.
//!
//! ```
//! use ropelength::{gen_trefoil, thickness, SearchOptions};
//!
//! let knot = gen_trefoil(256).unwrap();
//! let report = thickness(&knot, &SearchOptions::default());
//! assert!(report.thickness > 0.0);
//! println!("ropelength {}", report.ropelength);
//! ```

pub mod error;
pub mod geometry;
pub mod knotgen;
pub mod poca;
pub mod spatial_index;
pub mod thickness;

pub use error::{Error, Result};
pub use geometry::{
    cone_slack, curve_length, edge_pair_pocas, min_rad, point_at, segment_closest, tangents_at,
    turning_angle, Component, CurvePos, Edge, EdgeId, Poca, PocaKind, PolyCurve, SegmentClosest,
    TangentPair, Vec3,
};
pub use knotgen::{
    gen_hopf_pentagons, gen_hopf_pentagons_exact, gen_random_in_box, gen_random_walk, gen_trefoil,
    Family, GenSpec,
};
pub use poca::{find_pocas, find_pocas_in, PocaSearch, SearchCounters, SearchOptions};
pub use spatial_index::{build, default_levels, leaf_capacity, Aabb, Octree, OctreeNode};
pub use thickness::{
    poca_naive, poca_naive_all, ropelength, thickness, SearchReport, Status, ThicknessTerm,
};
