use crate::geometry::{EdgeId, PolyCurve, Vec3};
use crate::spatial_index::Aabb;

/// Region that must contain the far end of any chord whose near end lies on
/// the half-open edge `e_i − {v_{i+1}}`.
///
/// It is the union of the slab `lo ≤ w·u ≤ hi` swept by the planes normal to
/// the edge, and the wedge at `v_i` bounded by the incoming and outgoing
/// tangent half-spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ramp {
    pub u: Vec3,
    pub lo: f64,
    pub hi: f64,
    pub apex: Vec3,
    /// Incoming tangent at `v_i`; `None` at the start of an open component,
    /// where the wedge widens to the half-space `w·u ≤ lo`.
    pub t_in: Option<Vec3>,
    /// The edge ends an open component, so `v_{i+1}` belongs to it and the
    /// half-space `w·u ≥ hi` is part of the ramp.
    pub owns_end: bool,
}

/// The ramp of edge `i`.
pub fn ramp_for_edge(curve: &PolyCurve, i: EdgeId) -> Ramp {
    let e = curve.edge(i);
    let comp = curve.component(e.component);
    let u = e.direction();
    Ramp {
        u,
        lo: e.start.dot(u),
        hi: e.end.dot(u),
        apex: e.start,
        t_in: comp.incoming_edge(e.index).map(|k| comp.edge_direction(k)),
        owns_end: !comp.is_closed() && e.index + 1 == comp.edge_count(),
    }
}

impl Ramp {
    /// Membership with every inequality relaxed by `slack`.
    pub fn contains(&self, w: Vec3, slack: f64) -> bool {
        let p = w.dot(self.u);
        if p >= self.lo - slack && p <= self.hi + slack {
            return true;
        }
        if self.owns_end && p >= self.hi - slack {
            return true;
        }
        let d = w - self.apex;
        d.dot(self.u) <= slack && self.t_in.is_none_or(|t| d.dot(t) >= -slack)
    }
}

/// Conservative box test: false only if no point of the box lies in the ramp
/// relaxed by `slack`.
///
/// The slab test is exact. The wedge is rejected only when all eight corners
/// violate the same bounding inequality.
pub fn aabb_intersects_ramp(b: &Aabb, ramp: &Ramp, slack: f64) -> bool {
    let corners = b.corners();
    let (mut pmin, mut pmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in &corners {
        let p = c.dot(ramp.u);
        pmin = pmin.min(p);
        pmax = pmax.max(p);
    }
    if pmax >= ramp.lo - slack && pmin <= ramp.hi + slack {
        return true;
    }
    if ramp.owns_end && pmax >= ramp.hi - slack {
        return true;
    }
    // The plane w·u = lo bounds the wedge on the far side.
    if pmin - ramp.lo > slack {
        return false;
    }
    match ramp.t_in {
        None => true,
        Some(t) => corners.iter().any(|&c| (c - ramp.apex).dot(t) >= -slack),
    }
}
