//! Traversal-ordered octree over edge midpoints.
//!
//! Edges are sorted by midpoint x, y and z; each sorted array is cut into
//! sections of `m` edges, and the three section numbers are bit-interleaved
//! into an [`OctalTag`]. Sorting by tag puts the edges in the order of a
//! least-first traversal of the full octree, and the tree is then built in a
//! single pass over that order, keeping only the current root-to-leaf limb
//! open.

mod reference;
mod tags;

use std::collections::VecDeque;
use std::ops::Range;

use crate::geometry::{EdgeId, PolyCurve, Vec3};

pub use reference::build_recursive_reference;
pub use tags::{
    default_levels, edge_label, leaf_capacity, octal_tags, spread_bits, tag_table, EdgeTag,
    OctalTag, MAX_LEVELS,
};

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        Aabb { min, max }
    }

    /// The empty box; `union` with it is the identity.
    pub fn empty() -> Self {
        Aabb {
            min: Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            max: Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn from_points(points: impl IntoIterator<Item = Vec3>) -> Self {
        points
            .into_iter()
            .fold(Aabb::empty(), |b, p| b.including(p))
    }

    pub fn including(self, p: Vec3) -> Self {
        Aabb::new(self.min.min(p), self.max.max(p))
    }

    pub fn union(self, o: Aabb) -> Self {
        Aabb::new(self.min.min(o.min), self.max.max(o.max))
    }

    pub fn contains(&self, p: Vec3) -> bool {
        (0..3).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }

    pub fn center(&self) -> Vec3 {
        self.min.midpoint(self.max)
    }

    pub fn diagonal(&self) -> f64 {
        self.min.distance(self.max)
    }

    pub fn corners(&self) -> [Vec3; 8] {
        let (a, b) = (self.min, self.max);
        [
            Vec3::new(a.x, a.y, a.z),
            Vec3::new(b.x, a.y, a.z),
            Vec3::new(a.x, b.y, a.z),
            Vec3::new(b.x, b.y, a.z),
            Vec3::new(a.x, a.y, b.z),
            Vec3::new(b.x, a.y, b.z),
            Vec3::new(a.x, b.y, b.z),
            Vec3::new(b.x, b.y, b.z),
        ]
    }
}

/// One edge as stored in the traversal-ordered array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord {
    pub edge: EdgeId,
    pub component: usize,
    pub index: usize,
    pub start: Vec3,
    pub end: Vec3,
    pub midpoint: Vec3,
    pub length: f64,
    pub tag: OctalTag,
}

/// A box of the tree. Its edges are `by_oct[first..first + count]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OctreeNode {
    /// Encloses every endpoint of every edge in the subtree.
    pub bounds: Aabb,
    pub first: usize,
    pub count: usize,
    children: Range<usize>,
}

impl OctreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Lowest `by_oct` rank in the subtree.
    pub fn lowest_rank(&self) -> usize {
        self.first
    }

    pub fn ranks(&self) -> Range<usize> {
        self.first..self.first + self.count
    }

    pub fn child_count(&self) -> usize {
        self.children.len()
    }
}

/// Work done while building, for scaling checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub comparisons: u64,
    pub tag_transitions: usize,
}

/// Pruned (or raw) octree plus the traversal-ordered edge array.
#[derive(Debug, Clone)]
pub struct Octree {
    // Root at index 0; each node's children are contiguous, in tag order.
    nodes: Vec<OctreeNode>,
    by_oct: Vec<EdgeRecord>,
    rank_of: Vec<usize>,
    levels: u32,
    capacity: usize,
    stats: BuildStats,
}

/// Builds the pruned octree; `levels` defaults to [`default_levels`].
pub fn build(curve: &PolyCurve, levels: Option<u32>) -> Octree {
    Octree::build(curve, levels)
}

/// Collapses every subtree holding at most `m` edges into a leaf and splices
/// out internal nodes left with a single child.
pub fn prune(tree: Octree) -> Octree {
    tree.pruned()
}

// A finished subtree waiting to be placed in the node arena.
#[derive(Debug)]
pub(crate) struct Draft {
    pub(crate) bounds: Aabb,
    pub(crate) first: usize,
    pub(crate) count: usize,
    pub(crate) children: Vec<Draft>,
}

// A box on the currently open limb.
struct OpenBox {
    first: usize,
    children: Vec<Draft>,
}

fn leaf_bounds(records: &[EdgeRecord]) -> Aabb {
    records
        .iter()
        .fold(Aabb::empty(), |b, r| b.including(r.start).including(r.end))
}

fn prune_draft(mut d: Draft, m: usize) -> Draft {
    if d.count <= m {
        d.children.clear();
        return d;
    }
    if d.children.len() == 1 {
        return d.children.pop().expect("one child");
    }
    d
}

impl Octree {
    pub fn build(curve: &PolyCurve, levels: Option<u32>) -> Octree {
        Octree::build_with(curve, levels, true)
    }

    /// The tree as built before any pruning: every box of the full octree
    /// that holds an edge, leaves at depth `levels - 1`.
    pub fn build_unpruned(curve: &PolyCurve, levels: Option<u32>) -> Octree {
        Octree::build_with(curve, levels, false)
    }

    fn build_with(curve: &PolyCurve, levels: Option<u32>, prune: bool) -> Octree {
        let n = curve.edge_count();
        let levels = levels
            .unwrap_or_else(|| default_levels(n))
            .clamp(1, MAX_LEVELS);
        let m = leaf_capacity(n, levels);
        let mut stats = BuildStats::default();

        let edges: Vec<_> = curve.edges().collect();
        let midpoints: Vec<Vec3> = edges.iter().map(|e| e.midpoint()).collect();
        let tags = tags::tags_for_midpoints(&midpoints, m, &mut stats.comparisons);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            stats.comparisons += 1;
            tags[a].tag.cmp(&tags[b].tag).then(a.cmp(&b))
        });
        let by_oct: Vec<EdgeRecord> = order
            .iter()
            .map(|&e| {
                let edge = &edges[e];
                EdgeRecord {
                    edge: edge.id,
                    component: edge.component,
                    index: edge.index,
                    start: edge.start,
                    end: edge.end,
                    midpoint: midpoints[e],
                    length: edge.length(),
                    tag: tags[e].tag,
                }
            })
            .collect();
        let mut rank_of = vec![0; n];
        for (rank, r) in by_oct.iter().enumerate() {
            rank_of[r.edge.0] = rank;
        }

        let root = build_limbs(&by_oct, levels, m, prune, &mut stats);
        Octree {
            nodes: flatten(root),
            by_oct,
            rank_of,
            levels,
            capacity: m,
            stats,
        }
    }

    pub(crate) fn from_parts(
        root: Draft,
        by_oct: Vec<EdgeRecord>,
        levels: u32,
        capacity: usize,
    ) -> Octree {
        let mut rank_of = vec![0; by_oct.len()];
        for (rank, r) in by_oct.iter().enumerate() {
            rank_of[r.edge.0] = rank;
        }
        Octree {
            nodes: flatten(root),
            by_oct,
            rank_of,
            levels,
            capacity,
            stats: BuildStats::default(),
        }
    }

    pub fn pruned(self) -> Octree {
        let m = self.capacity;
        let root = self.to_draft(0, &|d| prune_draft(d, m));
        Octree {
            nodes: flatten(root),
            ..self
        }
    }

    fn to_draft(&self, idx: usize, post: &dyn Fn(Draft) -> Draft) -> Draft {
        let node = &self.nodes[idx];
        let children = node
            .children
            .clone()
            .map(|c| self.to_draft(c, post))
            .collect();
        post(Draft {
            bounds: node.bounds,
            first: node.first,
            count: node.count,
            children,
        })
    }

    pub fn root(&self) -> &OctreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, idx: usize) -> &OctreeNode {
        &self.nodes[idx]
    }

    pub fn nodes(&self) -> &[OctreeNode] {
        &self.nodes
    }

    pub fn children(&self, node: &OctreeNode) -> &[OctreeNode] {
        &self.nodes[node.children.clone()]
    }

    pub fn by_oct(&self) -> &[EdgeRecord] {
        &self.by_oct
    }

    /// Position of an edge in the traversal-ordered array.
    pub fn rank(&self, edge: EdgeId) -> usize {
        self.rank_of[edge.0]
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    pub fn edge_count(&self) -> usize {
        self.by_oct.len()
    }

    /// Number of levels of boxes, counting the root as 1.
    pub fn depth(&self) -> usize {
        fn go(t: &Octree, n: &OctreeNode) -> usize {
            1 + t.children(n).iter().map(|c| go(t, c)).max().unwrap_or(0)
        }
        go(self, self.root())
    }

    /// Leaves in traversal order.
    pub fn leaves(&self) -> Vec<&OctreeNode> {
        fn go<'a>(t: &'a Octree, n: &'a OctreeNode, out: &mut Vec<&'a OctreeNode>) {
            if n.is_leaf() {
                out.push(n);
            } else {
                for c in t.children(n) {
                    go(t, c, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, self.root(), &mut out);
        out
    }

    /// Edge ids of each leaf in traversal order, each group sorted by id.
    pub fn leaf_groups(&self) -> Vec<Vec<EdgeId>> {
        self.leaves()
            .into_iter()
            .map(|leaf| {
                let mut g: Vec<EdgeId> = self.by_oct[leaf.ranks()].iter().map(|r| r.edge).collect();
                g.sort();
                g
            })
            .collect()
    }
}

/// Single pass over `by_oct`, keeping the open boxes of the current limb.
fn build_limbs(
    by_oct: &[EdgeRecord],
    levels: u32,
    m: usize,
    prune: bool,
    stats: &mut BuildStats,
) -> Draft {
    let digits = levels - 1;
    let close = |b: OpenBox, end: usize, depth: u32| -> Draft {
        let bounds = if b.children.is_empty() || depth == digits {
            leaf_bounds(&by_oct[b.first..end])
        } else {
            b.children
                .iter()
                .fold(Aabb::empty(), |a, c| a.union(c.bounds))
        };
        let d = Draft {
            bounds,
            first: b.first,
            count: end - b.first,
            children: b.children,
        };
        if prune {
            prune_draft(d, m)
        } else {
            d
        }
    };

    // limb[d] is the open box at depth d; depth `digits` boxes share a full tag.
    let mut limb: Vec<OpenBox> = (0..=digits)
        .map(|_| OpenBox {
            first: 0,
            children: Vec::new(),
        })
        .collect();
    for rank in 1..by_oct.len() {
        let (prev, tag) = (by_oct[rank - 1].tag.0, by_oct[rank].tag.0);
        if prev == tag {
            continue;
        }
        stats.tag_transitions += 1;
        // The most significant changed octal digit fixes how much of the limb closes.
        let high_bit = 63 - (prev ^ tag).leading_zeros();
        let keep = digits - 1 - high_bit / 3;
        for depth in (keep + 1..=digits).rev() {
            let open = std::mem::replace(
                &mut limb[depth as usize],
                OpenBox {
                    first: rank,
                    children: Vec::new(),
                },
            );
            let done = close(open, rank, depth);
            limb[depth as usize - 1].children.push(done);
        }
    }
    let end = by_oct.len();
    for depth in (1..=digits).rev() {
        let open = limb.pop().expect("limb holds every depth");
        let done = close(open, end, depth);
        limb[depth as usize - 1].children.push(done);
    }
    let root = limb.pop().expect("root box");
    close(root, end, 0)
}

/// Lays drafts out breadth-first so siblings are contiguous; root at 0.
fn flatten(root: Draft) -> Vec<OctreeNode> {
    let mut nodes = Vec::new();
    let mut queue: VecDeque<(usize, Draft)> = VecDeque::new();
    nodes.push(OctreeNode {
        bounds: root.bounds,
        first: root.first,
        count: root.count,
        children: 0..0,
    });
    queue.push_back((0, root));
    while let Some((idx, d)) = queue.pop_front() {
        let start = nodes.len();
        for c in d.children {
            let slot = nodes.len();
            nodes.push(OctreeNode {
                bounds: c.bounds,
                first: c.first,
                count: c.count,
                children: 0..0,
            });
            queue.push_back((slot, c));
        }
        nodes[idx].children = start..nodes.len();
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag(n: usize) -> PolyCurve {
        let verts = (0..=n)
            .map(|i| {
                let t = i as f64;
                Vec3::new(t, (t * 0.7).sin() * 3.0, (t * 0.3).cos() * 2.0)
            })
            .collect();
        PolyCurve::open_polyline(verts).unwrap()
    }

    #[test]
    fn single_edge_is_one_leaf() {
        let c = PolyCurve::open_polyline(vec![Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)]).unwrap();
        let t = build(&c, None);
        assert!(t.root().is_leaf());
        assert_eq!(t.root().count, 1);
        assert_eq!(t.by_oct()[0].tag, OctalTag(0));
    }

    #[test]
    fn small_curve_fits_in_one_leaf() {
        let c = zigzag(5);
        let t = build(&c, Some(1));
        assert!(t.root().is_leaf());
        assert_eq!(t.capacity(), 5);
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn structure_invariants() {
        for n in [2, 7, 30, 100, 333] {
            let c = zigzag(n);
            for levels in [1, 2, 3, default_levels(n), 8] {
                let raw = Octree::build_unpruned(&c, Some(levels));
                let t = build(&c, Some(levels));
                assert!(raw.depth() <= levels as usize);
                assert!(t.depth() <= raw.depth());
                for w in t.by_oct().windows(2) {
                    assert!(w[0].tag <= w[1].tag);
                }
                check_node(&t, t.root(), t.capacity(), true);
                check_node(&raw, raw.root(), raw.capacity(), false);
                let leaves = t.leaves();
                let mut next = 0;
                for leaf in &leaves {
                    assert_eq!(leaf.first, next);
                    next += leaf.count;
                }
                assert_eq!(next, n);
                assert_eq!(t.leaf_groups(), prune(raw).leaf_groups());
            }
        }
    }

    fn check_node(t: &Octree, node: &OctreeNode, m: usize, pruned: bool) {
        for r in &t.by_oct()[node.ranks()] {
            assert!(node.bounds.contains(r.start) && node.bounds.contains(r.end));
        }
        if node.is_leaf() {
            assert!(node.count >= 1 && node.count <= m);
            return;
        }
        if pruned {
            assert!(node.child_count() >= 2);
            assert!(node.count > m);
        }
        let mut next = node.first;
        for c in t.children(node) {
            assert_eq!(c.first, next);
            next += c.count;
            check_node(t, c, m, pruned);
        }
        assert_eq!(next, node.first + node.count);
    }

    #[test]
    fn at_most_m_edges_share_a_tag() {
        let c = zigzag(257);
        let t = build(&c, None);
        let m = t.capacity();
        let recs = t.by_oct();
        let mut i = 0;
        while i < recs.len() {
            let j = recs[i..]
                .iter()
                .take_while(|r| r.tag == recs[i].tag)
                .count();
            assert!(j <= m);
            i += j;
        }
    }

    #[test]
    fn prune_is_idempotent() {
        let c = zigzag(120);
        let once = build(&c, Some(6));
        let twice = prune(once.clone());
        assert_eq!(once.nodes(), twice.nodes());
    }

    #[test]
    fn single_child_chains_are_spliced() {
        // With far more levels than edges the top tag digits are all zero.
        let c = zigzag(3);
        let raw = Octree::build_unpruned(&c, Some(10));
        assert_eq!(raw.root().child_count(), 1);
        let t = build(&c, Some(10));
        assert!(t.root().is_leaf() || t.root().child_count() >= 2);
    }
}
