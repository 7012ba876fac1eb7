//! Vector and segment primitives, polygonal curves, minRad, and the
//! classification of locally minimal chords.

mod classify;
mod closest;
mod curve;
mod vec3;

pub(crate) use classify::check_edge_pair;
pub use classify::{cone_slack, edge_pair_pocas, Poca, PocaKind};
pub use closest::{segment_closest, SegmentClosest};
pub use curve::{
    curve_length, min_rad, point_at, tangents_at, turning_angle, Component, CurvePos, Edge, EdgeId,
    PolyCurve, TangentPair,
};
pub use vec3::Vec3;
