use super::Vec3;
use crate::error::{Error, Result};

/// Closest pair of points between two segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentClosest {
    /// Parameter on the first segment, `p0 + s (p1 - p0)`.
    pub s: f64,
    /// Parameter on the second segment, `q0 + t (q1 - q0)`.
    pub t: f64,
    pub dist: f64,
}

// sin² of the angle below which two segments are handled as parallel.
const PARALLEL_SIN2: f64 = 1e-14;

/// Global minimum of `|p(s) - q(t)|` over `[0,1]²`.
///
/// When the minimum is attained on a segment of parameter pairs (parallel
/// overlapping edges) the center of that set is returned.
pub fn segment_closest(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> Result<SegmentClosest> {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    if a == 0.0 || e == 0.0 || !a.is_finite() || !e.is_finite() {
        return Err(Error::DegenerateSegment);
    }
    let r = p0 - q0;
    let b = d1.dot(d2);
    let c = d1.dot(r);
    let f = d2.dot(r);
    let denom = a * e - b * b;

    let (s, t) = if denom <= PARALLEL_SIN2 * a * e {
        parallel_params(p0, d1, a, q0, d2, e)
    } else {
        // Convex quadratic on the unit square: clamp s, solve t, re-clamp s.
        let mut s = ((b * f - c * e) / denom).clamp(0.0, 1.0);
        let mut t = (b * s + f) / e;
        if t < 0.0 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else if t > 1.0 {
            t = 1.0;
            s = ((b - c) / a).clamp(0.0, 1.0);
        }
        (s, t)
    };
    let dist = (p0 + d1 * s).distance(q0 + d2 * t);
    Ok(SegmentClosest { s, t, dist })
}

fn parallel_params(p0: Vec3, d1: Vec3, a: f64, q0: Vec3, d2: Vec3, e: f64) -> (f64, f64) {
    // Project the second segment onto the first segment's parameter line.
    let sq0 = (q0 - p0).dot(d1) / a;
    let sq1 = (q0 + d2 - p0).dot(d1) / a;
    let lo = sq0.min(sq1).max(0.0);
    let hi = sq0.max(sq1).min(1.0);
    if lo <= hi {
        let s = 0.5 * (lo + hi);
        let t = ((p0 + d1 * s - q0).dot(d2) / e).clamp(0.0, 1.0);
        return (s, t);
    }
    // Disjoint projections: the nearest endpoints realize the minimum.
    let s = if sq0.max(sq1) < 0.0 { 0.0 } else { 1.0 };
    let t = if (sq0 - s).abs() <= (sq1 - s).abs() {
        0.0
    } else {
        1.0
    };
    (s, t)
}
