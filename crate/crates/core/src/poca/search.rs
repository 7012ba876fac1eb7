use std::ops::AddAssign;

use rayon::prelude::*;

use super::distance::aabb_segment_distance;
use super::ramp::{aabb_intersects_ramp, ramp_for_edge, Ramp};
use crate::geometry::{check_edge_pair, min_rad, EdgeId, Poca, PolyCurve, Vec3};
use crate::spatial_index::{Octree, OctreeNode};

/// Tuning for the closest-approach search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Octree depth; `None` picks the default for the edge count.
    pub levels: Option<u32>,
    /// Relative tolerance for the tangent-cone tests and for ties between
    /// minima. Must be positive.
    pub tol: f64,
    /// Start the cutoff at `2·minRad` instead of `+∞`. Chords longer than
    /// that cannot change the thickness and are not reported.
    pub seed_cutoff: bool,
    /// Report every pair of closest approach, not only the shortest.
    /// Disables distance pruning.
    pub report_all: bool,
    /// Search edges concurrently with private cutoffs.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            levels: None,
            tol: 1e-10,
            seed_cutoff: false,
            report_all: false,
            parallel: false,
        }
    }
}

impl SearchOptions {
    pub fn with_levels(levels: u32) -> Self {
        SearchOptions {
            levels: Some(levels),
            ..Self::default()
        }
    }
}

/// Work counters of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SearchCounters {
    pub edge_edge_checks: u64,
    pub box_ramp_checks: u64,
    pub box_distance_checks: u64,
}

impl AddAssign for SearchCounters {
    fn add_assign(&mut self, o: Self) {
        self.edge_edge_checks += o.edge_edge_checks;
        self.box_ramp_checks += o.box_ramp_checks;
        self.box_distance_checks += o.box_distance_checks;
    }
}

/// Running cutoff, retained chords and counters.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub cutoff: f64,
    pub pocas: Vec<Poca>,
    pub counters: SearchCounters,
    tol: f64,
    report_all: bool,
}

impl SearchState {
    pub fn new(cutoff: f64, tol: f64, report_all: bool) -> Self {
        SearchState {
            cutoff: if report_all { f64::INFINITY } else { cutoff },
            pocas: Vec::new(),
            counters: SearchCounters::default(),
            tol,
            report_all,
        }
    }

    fn threshold(&self) -> f64 {
        self.cutoff * (1.0 + self.tol)
    }

    /// Adds a chord if it is within tolerance of the shortest so far.
    pub fn offer(&mut self, p: Poca) {
        if self.report_all {
            self.pocas.push(p);
            return;
        }
        if p.length > self.threshold() {
            return;
        }
        if p.length < self.cutoff {
            self.cutoff = p.length;
            let t = self.threshold();
            self.pocas.retain(|q| q.length <= t);
        }
        self.pocas.push(p);
    }
}

/// Outcome of a search over all edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PocaSearch {
    /// Shortest chord length, `+∞` if there is none.
    pub min_length: f64,
    /// Chords within tolerance of the minimum (or all of them), sorted by
    /// edge pair.
    pub pocas: Vec<Poca>,
    pub counters: SearchCounters,
    pub levels: u32,
    pub capacity: usize,
}

/// Sorts chords by their (lower, higher) edge pair and drops those outside
/// tolerance of the final cutoff.
pub(crate) fn finish(
    mut pocas: Vec<Poca>,
    cutoff: f64,
    tol: f64,
    report_all: bool,
) -> (f64, Vec<Poca>) {
    let min = pocas.iter().map(|p| p.length).fold(f64::INFINITY, f64::min);
    if !report_all {
        let t = cutoff.min(min) * (1.0 + tol);
        pocas.retain(|p| p.length <= t);
    }
    let mut pocas: Vec<Poca> = pocas.into_iter().map(Poca::canonical).collect();
    pocas.sort_by_key(|p| (p.a.component, p.a.edge, p.b.component, p.b.edge));
    (min, pocas)
}

/// Coordinate magnitude, for absolute rounding allowances.
fn curve_scale(curve: &PolyCurve) -> f64 {
    curve
        .components()
        .iter()
        .flat_map(|c| c.vertices())
        .map(|v| v.x.abs().max(v.y.abs()).max(v.z.abs()))
        .fold(0.0, f64::max)
}

struct EdgeQuery<'a> {
    tree: &'a Octree,
    curve: &'a PolyCurve,
    edge: EdgeId,
    rank: usize,
    start: Vec3,
    end: Vec3,
    length: f64,
    ramp: Ramp,
    round: f64,
}

impl EdgeQuery<'_> {
    fn ramp_slack(&self, node: &OctreeNode, tol: f64) -> f64 {
        let b = &node.bounds;
        let chord = self.start.distance(b.center()) + 0.5 * b.diagonal() + self.length;
        2.0 * tol * chord + self.round
    }

    fn visit(&self, node: &OctreeNode, state: &mut SearchState) {
        for child in self.tree.children(node) {
            // Children are in rank order; later ones only hold later edges.
            if child.lowest_rank() >= self.rank {
                break;
            }
            if !state.report_all && state.cutoff.is_finite() {
                state.counters.box_distance_checks += 1;
                let d = aabb_segment_distance(&child.bounds, self.start, self.end);
                if d > state.threshold() + self.round {
                    continue;
                }
            }
            state.counters.box_ramp_checks += 1;
            if !aabb_intersects_ramp(&child.bounds, &self.ramp, self.ramp_slack(child, state.tol)) {
                continue;
            }
            if child.is_leaf() {
                self.check_leaf(child, state);
            } else {
                self.visit(child, state);
            }
        }
    }

    fn check_leaf(&self, leaf: &OctreeNode, state: &mut SearchState) {
        let by_oct = self.tree.by_oct();
        let end = (leaf.first + leaf.count).min(self.rank);
        for rec in by_oct.get(leaf.first..end).unwrap_or_default() {
            let other = rec.edge;
            if self.curve.edges_adjacent(self.edge, other) {
                continue;
            }
            state.counters.edge_edge_checks += 1;
            if let Some(p) = check_edge_pair(self.curve, self.edge, other, state.tol) {
                state.offer(p);
            }
        }
    }
}

fn query<'a>(tree: &'a Octree, curve: &'a PolyCurve, rank: usize, round: f64) -> EdgeQuery<'a> {
    let rec = &tree.by_oct()[rank];
    EdgeQuery {
        tree,
        curve,
        edge: rec.edge,
        rank,
        start: rec.start,
        end: rec.end,
        length: rec.length,
        ramp: ramp_for_edge(curve, rec.edge),
        round,
    }
}

/// Compares edge `i` against every earlier edge in traversal order that
/// survives the distance and ramp tests.
pub fn search_edge(tree: &Octree, curve: &PolyCurve, i: EdgeId, state: &mut SearchState) {
    let round = 64.0 * f64::EPSILON * curve_scale(curve);
    search_rank(tree, curve, tree.rank(i), round, state);
}

fn search_rank(tree: &Octree, curve: &PolyCurve, rank: usize, round: f64, state: &mut SearchState) {
    let q = query(tree, curve, rank, round);
    if tree.root().is_leaf() {
        q.check_leaf(tree.root(), state);
    } else {
        q.visit(tree.root(), state);
    }
}

/// Shortest pairs of closest approach, building the octree first.
pub fn find_pocas(curve: &PolyCurve, opts: &SearchOptions) -> PocaSearch {
    let tree = Octree::build(curve, opts.levels);
    find_pocas_in(&tree, curve, opts)
}

/// Shortest pairs of closest approach over a prebuilt octree.
pub fn find_pocas_in(tree: &Octree, curve: &PolyCurve, opts: &SearchOptions) -> PocaSearch {
    let seed = if opts.seed_cutoff {
        2.0 * min_rad(curve)
    } else {
        f64::INFINITY
    };
    let round = 64.0 * f64::EPSILON * curve_scale(curve);
    let run = |rank: usize, state: &mut SearchState| search_rank(tree, curve, rank, round, state);

    let (cutoff, pocas, counters) = if opts.parallel {
        let parts: Vec<SearchState> = (0..tree.edge_count())
            .into_par_iter()
            .map(|rank| {
                let mut s = SearchState::new(seed, opts.tol, opts.report_all);
                run(rank, &mut s);
                s
            })
            .collect();
        let mut counters = SearchCounters::default();
        let mut cutoff = if opts.report_all { f64::INFINITY } else { seed };
        let mut pocas = Vec::new();
        for s in parts {
            counters += s.counters;
            cutoff = cutoff.min(s.cutoff);
            pocas.extend(s.pocas);
        }
        (cutoff, pocas, counters)
    } else {
        let mut s = SearchState::new(seed, opts.tol, opts.report_all);
        for rank in 0..tree.edge_count() {
            run(rank, &mut s);
        }
        (s.cutoff, s.pocas, s.counters)
    };

    let (min_length, pocas) = finish(pocas, cutoff, opts.tol, opts.report_all);
    PocaSearch {
        min_length,
        pocas,
        counters,
        levels: tree.levels(),
        capacity: tree.capacity(),
    }
}
