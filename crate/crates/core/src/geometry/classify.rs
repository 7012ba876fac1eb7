use std::fmt;

use super::closest::segment_closest;
use super::curve::{CurvePos, Edge, EdgeId, PolyCurve};
use super::Vec3;
use crate::error::{Error, Result};

/// Which points of the two edges realize the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PocaKind {
    EdgeEdge,
    VertexEdge,
    VertexVertex,
}

/// A pair of closest approach: a chord realizing a nontrivial local minimum
/// of the self-distance function.
///
/// A zero `length` marks a self-intersection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poca {
    pub a: CurvePos,
    pub b: CurvePos,
    pub length: f64,
    pub kind: PocaKind,
}

impl Poca {
    pub fn swapped(self) -> Poca {
        Poca {
            a: self.b,
            b: self.a,
            ..self
        }
    }

    /// Same chord with the endpoint on the lower (component, edge) first.
    pub fn canonical(self) -> Poca {
        if (self.b.component, self.b.edge) < (self.a.component, self.a.edge) {
            self.swapped()
        } else {
            self
        }
    }
}

impl fmt::Display for Poca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -- {} length {}", self.a, self.b, self.length)
    }
}

// Parameters this close to an edge end are treated as the vertex itself.
const PARAM_SNAP: f64 = 1e-12;

// Absolute allowance for rounding in the chord, in units of ε times the
// coordinate magnitude of the two edges.
pub(crate) const ROUNDING_ULPS: f64 = 16.0;

fn coord_scale(e: &Edge) -> f64 {
    [e.start, e.end]
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()).max(p.z.abs()))
        .fold(0.0, f64::max)
}

/// Slack allowed in each tangent-cone inequality for a chord of `length`
/// between two edges.
pub fn cone_slack(tol: f64, length: f64, a: &Edge, b: &Edge) -> f64 {
    tol * length + rounding_allowance(a, b)
}

fn rounding_allowance(a: &Edge, b: &Edge) -> f64 {
    ROUNDING_ULPS * f64::EPSILON * coord_scale(a).max(coord_scale(b))
}

fn snap(s: f64) -> f64 {
    if s <= PARAM_SNAP {
        0.0
    } else if s >= 1.0 - PARAM_SNAP {
        1.0
    } else {
        s
    }
}

/// Whether the point at parameter `s` belongs to this edge under the
/// half-open convention: `v_{i+1}` belongs to the next edge unless the edge
/// ends an open component.
fn owns(curve: &PolyCurve, e: &Edge, s: f64) -> bool {
    if s < 1.0 {
        return true;
    }
    let comp = curve.component(e.component);
    !comp.is_closed() && e.index + 1 == comp.edge_count()
}

fn point_on(e: &Edge, s: f64) -> Vec3 {
    if s == 0.0 {
        e.start
    } else if s == 1.0 {
        e.end
    } else {
        e.start.lerp(e.end, s)
    }
}

/// Tests the two tangent-cone inequalities at one end of a chord, where
/// `w` points from this end to the other.
fn cone_holds(curve: &PolyCurve, e: &Edge, s: f64, w: Vec3, slack: f64) -> bool {
    let comp = curve.component(e.component);
    let dir = e.direction();
    let (t_in, t_out) = if s == 0.0 {
        (
            comp.incoming_edge(e.index).map(|k| comp.edge_direction(k)),
            Some(dir),
        )
    } else if s == 1.0 {
        let next = comp.outgoing_edge((e.index + 1) % comp.vertex_count());
        (Some(dir), next.map(|k| comp.edge_direction(k)))
    } else {
        return dir.dot(w).abs() <= slack;
    };
    t_in.is_none_or(|t| t.dot(w) >= -slack) && t_out.is_none_or(|t| t.dot(w) <= slack)
}

/// Checks one nonadjacent edge pair for a pair of closest approach.
///
/// Callers must ensure the edges do not share a vertex. The result is
/// independent of argument order up to swapping the chord's endpoints.
pub(crate) fn check_edge_pair(curve: &PolyCurve, i: EdgeId, j: EdgeId, tol: f64) -> Option<Poca> {
    if i > j {
        return check_edge_pair(curve, j, i, tol).map(Poca::swapped);
    }
    let ea = curve.edge(i);
    let eb = curve.edge(j);
    let c = segment_closest(ea.start, ea.end, eb.start, eb.end).ok()?;
    let s = snap(c.s);
    let t = snap(c.t);
    if !owns(curve, &ea, s) || !owns(curve, &eb, t) {
        return None;
    }
    let x = point_on(&ea, s);
    let y = point_on(&eb, t);
    let w = y - x;
    // Chords below rounding level are crossings.
    let length = Some(w.norm())
        .filter(|&l| l > rounding_allowance(&ea, &eb))
        .unwrap_or(0.0);
    let slack = cone_slack(tol, length, &ea, &eb);
    if !cone_holds(curve, &ea, s, w, slack) || !cone_holds(curve, &eb, t, -w, slack) {
        return None;
    }
    let at_vertex = |p: f64| p == 0.0 || p == 1.0;
    let kind = match (at_vertex(s), at_vertex(t)) {
        (false, false) => PocaKind::EdgeEdge,
        (true, true) => PocaKind::VertexVertex,
        _ => PocaKind::VertexEdge,
    };
    Some(Poca {
        a: CurvePos::new(ea.component, ea.index, s),
        b: CurvePos::new(eb.component, eb.index, t),
        length,
        kind,
    })
}

/// Every pair of closest approach between points of edges `i` and `j`.
///
/// The minimum of the distance on `e_i × e_j` is classified as edge-edge,
/// vertex-edge or vertex-vertex and accepted when the tangent-cone
/// inequalities of the whole curve hold at both ends, with slack
/// [`cone_slack`]: `tol · length` plus a rounding allowance. Vertices are assigned to the edge they start (except the
/// final vertex of an open component), so a chord ending at a vertex is
/// reported by exactly one edge pair. Parallel edges with a continuum of
/// minimizers yield the center of the continuum.
pub fn edge_pair_pocas(curve: &PolyCurve, i: EdgeId, j: EdgeId, tol: f64) -> Result<Vec<Poca>> {
    let n = curve.edge_count();
    for id in [i, j] {
        if id.0 >= n {
            return Err(Error::InvalidPosition {
                component: usize::MAX,
                edge: id.0,
                t: 0.0,
            });
        }
    }
    if curve.edges_adjacent(i, j) {
        return Err(Error::SharedVertex(i.0, j.0));
    }
    Ok(check_edge_pair(curve, i, j, tol).into_iter().collect())
}
