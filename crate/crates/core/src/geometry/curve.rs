use std::fmt;

use super::Vec3;
use crate::error::{Error, Result};

/// One connected polygonal piece: an ordered vertex list, open or closed.
///
/// Edge `i` runs from vertex `i` to vertex `i + 1`; on a closed component the
/// last edge wraps back to vertex 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    vertices: Vec<Vec3>,
    closed: bool,
}

impl Component {
    /// Builds a component without validation; [`PolyCurve::new`] checks it.
    pub fn new(vertices: Vec<Vec3>, closed: bool) -> Self {
        Component { vertices, closed }
    }

    pub fn closed(vertices: Vec<Vec3>) -> Self {
        Component::new(vertices, true)
    }

    pub fn open(vertices: Vec<Vec3>) -> Self {
        Component::new(vertices, false)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len().saturating_sub(1)
        }
    }

    /// Endpoints of edge `i`.
    #[inline]
    pub fn edge(&self, i: usize) -> (Vec3, Vec3) {
        let a = self.vertices[i];
        let b = if i + 1 == self.vertices.len() {
            self.vertices[0]
        } else {
            self.vertices[i + 1]
        };
        (a, b)
    }

    #[inline]
    pub fn edge_direction(&self, i: usize) -> Vec3 {
        let (a, b) = self.edge(i);
        (b - a).normalized()
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        a.distance(b)
    }

    /// Edge ending at vertex `v`, if any.
    #[inline]
    pub fn incoming_edge(&self, v: usize) -> Option<usize> {
        if v > 0 {
            Some(v - 1)
        } else if self.closed {
            Some(self.vertices.len() - 1)
        } else {
            None
        }
    }

    /// Edge starting at vertex `v`, if any.
    #[inline]
    pub fn outgoing_edge(&self, v: usize) -> Option<usize> {
        if v < self.edge_count() {
            Some(v)
        } else {
            None
        }
    }

    fn validate(&self, component: usize) -> Result<()> {
        let invalid = |reason: String| Error::InvalidComponent { component, reason };
        let min = if self.closed { 3 } else { 2 };
        if self.vertices.len() < min {
            return Err(invalid(format!(
                "{} component needs at least {min} vertices, got {}",
                if self.closed { "closed" } else { "open" },
                self.vertices.len()
            )));
        }
        if let Some(vertex) = self.vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { component, vertex });
        }
        for i in 0..self.edge_count() {
            let (a, b) = self.edge(i);
            if a == b {
                return Err(invalid(format!("edge {i} has zero length")));
            }
        }
        Ok(())
    }
}

/// Global edge index across all components of a [`PolyCurve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A resolved edge with its location and endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub component: usize,
    pub index: usize,
    pub start: Vec3,
    pub end: Vec3,
}

impl Edge {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn midpoint(&self) -> Vec3 {
        self.start.midpoint(self.end)
    }

    pub fn direction(&self) -> Vec3 {
        (self.end - self.start).normalized()
    }
}

/// A polygonal curve made of one or more components.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve {
    components: Vec<Component>,
    // offsets[c] is the global id of component c's first edge; last entry is n.
    offsets: Vec<usize>,
}

impl PolyCurve {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyCurve);
        }
        for (c, comp) in components.iter().enumerate() {
            comp.validate(c)?;
        }
        let mut offsets = Vec::with_capacity(components.len() + 1);
        let mut total = 0;
        for comp in &components {
            offsets.push(total);
            total += comp.edge_count();
        }
        offsets.push(total);
        Ok(PolyCurve {
            components,
            offsets,
        })
    }

    pub fn single(component: Component) -> Result<Self> {
        PolyCurve::new(vec![component])
    }

    pub fn closed_polygon(vertices: Vec<Vec3>) -> Result<Self> {
        PolyCurve::single(Component::closed(vertices))
    }

    pub fn open_polyline(vertices: Vec<Vec3>) -> Result<Self> {
        PolyCurve::single(Component::open(vertices))
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    pub fn edge_count(&self) -> usize {
        *self.offsets.last().expect("offsets is never empty")
    }

    pub fn edge_id(&self, component: usize, index: usize) -> EdgeId {
        EdgeId(self.offsets[component] + index)
    }

    /// Component and local index of a global edge id.
    pub fn locate(&self, id: EdgeId) -> (usize, usize) {
        // offsets is sorted; the owning component is the last start <= id.
        let c = self.offsets.partition_point(|&o| o <= id.0) - 1;
        (c, id.0 - self.offsets[c])
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        let (component, index) = self.locate(id);
        let (start, end) = self.components[component].edge(index);
        Edge {
            id,
            component,
            index,
            start,
            end,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(move |(c, comp)| {
                let base = self.offsets[c];
                (0..comp.edge_count()).map(move |i| {
                    let (start, end) = comp.edge(i);
                    Edge {
                        id: EdgeId(base + i),
                        component: c,
                        index: i,
                        start,
                        end,
                    }
                })
            })
    }

    /// True when the two edges are equal or share a vertex.
    pub fn edges_adjacent(&self, a: EdgeId, b: EdgeId) -> bool {
        let (ca, ia) = self.locate(a);
        let (cb, ib) = self.locate(b);
        if ca != cb {
            return false;
        }
        let comp = &self.components[ca];
        let gap = ia.abs_diff(ib);
        gap <= 1 || (comp.is_closed() && gap == comp.edge_count() - 1)
    }

    /// Applies `f` to every vertex, keeping topology.
    pub fn map_vertices(&self, mut f: impl FnMut(Vec3) -> Vec3) -> Result<PolyCurve> {
        let components = self
            .components
            .iter()
            .map(|c| Component::new(c.vertices.iter().map(|&v| f(v)).collect(), c.closed))
            .collect();
        PolyCurve::new(components)
    }
}

/// A point on the curve: edge `edge` of component `component` at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePos {
    pub component: usize,
    pub edge: usize,
    pub t: f64,
}

impl CurvePos {
    pub fn new(component: usize, edge: usize, t: f64) -> Self {
        CurvePos { component, edge, t }
    }

    fn check(&self, curve: &PolyCurve) -> Result<()> {
        let ok = self.component < curve.components.len()
            && self.edge < curve.components[self.component].edge_count()
            && (0.0..=1.0).contains(&self.t);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPosition {
                component: self.component,
                edge: self.edge,
                t: self.t,
            })
        }
    }
}

impl fmt::Display for CurvePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.component, self.edge, self.t)
    }
}

/// One-sided tangents at a curve point. A side is `None` at the free end of
/// an open component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentPair {
    pub t_in: Option<Vec3>,
    pub t_out: Option<Vec3>,
}

pub fn point_at(curve: &PolyCurve, p: CurvePos) -> Result<Vec3> {
    p.check(curve)?;
    let (a, b) = curve.components[p.component].edge(p.edge);
    Ok(if p.t == 0.0 {
        a
    } else if p.t == 1.0 {
        b
    } else {
        a.lerp(b, p.t)
    })
}

pub fn tangents_at(curve: &PolyCurve, p: CurvePos) -> Result<TangentPair> {
    p.check(curve)?;
    let comp = &curve.components[p.component];
    let here = comp.edge_direction(p.edge);
    Ok(if p.t == 0.0 {
        TangentPair {
            t_in: comp.incoming_edge(p.edge).map(|e| comp.edge_direction(e)),
            t_out: Some(here),
        }
    } else if p.t == 1.0 {
        let v = (p.edge + 1) % comp.vertex_count();
        TangentPair {
            t_in: Some(here),
            t_out: comp.outgoing_edge(v).map(|e| comp.edge_direction(e)),
        }
    } else {
        TangentPair {
            t_in: Some(here),
            t_out: Some(here),
        }
    })
}

/// Turning (exterior) angle at a vertex: 0 for a straight continuation, π
/// when the curve doubles back.
pub fn turning_angle(curve: &PolyCurve, component: usize, vertex: usize) -> Result<f64> {
    let comp = curve
        .components
        .get(component)
        .filter(|c| vertex < c.vertex_count())
        .ok_or(Error::InvalidPosition {
            component,
            edge: vertex,
            t: 0.0,
        })?;
    match (comp.incoming_edge(vertex), comp.outgoing_edge(vertex)) {
        (Some(a), Some(b)) => {
            let u = comp.edge_direction(a);
            let w = comp.edge_direction(b);
            Ok(u.cross(w).norm().atan2(u.dot(w)))
        }
        _ => Err(Error::NoTurningAngle { component, vertex }),
    }
}

/// Polygonal radius of curvature at one vertex, `+∞` for a straight vertex.
fn vertex_min_rad(comp: &Component, incoming: usize, outgoing: usize) -> f64 {
    let (a0, a1) = comp.edge(incoming);
    let (b0, b1) = comp.edge(outgoing);
    let u = (a1 - a0).normalized();
    let w = (b1 - b0).normalized();
    let shorter = a0.distance(a1).min(b0.distance(b1));
    // 1 / tan(α/2) = (1 + cos α) / sin α
    let sin = u.cross(w).norm();
    let one_plus_cos = 1.0 + u.dot(w);
    if sin == 0.0 {
        return if one_plus_cos > 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
    }
    shorter * one_plus_cos / (2.0 * sin)
}

/// Minimum over turning vertices of `min(|e_in|, |e_out|) / (2 tan(α/2))`.
///
/// Free endpoints of open components are skipped; a curve with no turning
/// vertices returns `+∞`. A vertex where the curve doubles back gives 0.
pub fn min_rad(curve: &PolyCurve) -> f64 {
    let mut best = f64::INFINITY;
    for comp in &curve.components {
        for v in 0..comp.vertex_count() {
            if let (Some(a), Some(b)) = (comp.incoming_edge(v), comp.outgoing_edge(v)) {
                best = best.min(vertex_min_rad(comp, a, b));
            }
        }
    }
    best
}

pub fn curve_length(curve: &PolyCurve) -> f64 {
    curve.edges().map(|e| e.length()).sum()
}
