use super::{leaf_bounds, prune_draft, Aabb, Draft, EdgeRecord, OctalTag, Octree};
use crate::geometry::{PolyCurve, Vec3};

/// Top-down recursive octree construction over midpoint ranks.
///
/// Each box is a cube of rank space `[lo, lo + side)³` and is split at the
/// middle rank of every coordinate until the side reaches `m`. The root side
/// is `m · 2^(levels - 1)` with `levels` the least value for which that covers
/// all `n` ranks, so the leaf partition is the one the sort-based builder
/// produces. Subtrees are pruned with the same rule. Intended as a test
/// reference; it is quadratic in the worst case.
pub fn build_recursive_reference(curve: &PolyCurve, m: usize) -> Octree {
    let m = m.max(1);
    let edges: Vec<_> = curve.edges().collect();
    let n = edges.len();
    let midpoints: Vec<Vec3> = edges.iter().map(|e| e.midpoint()).collect();

    let mut ranks = vec![[0usize; 3]; n];
    for axis in 0..3 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            midpoints[a][axis]
                .partial_cmp(&midpoints[b][axis])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        for (r, e) in order.into_iter().enumerate() {
            ranks[e][axis] = r;
        }
    }

    let mut levels = 1u32;
    while m << (levels - 1) < n {
        levels += 1;
    }
    let side = m << (levels - 1);

    let records: Vec<EdgeRecord> = edges
        .iter()
        .enumerate()
        .map(|(e, edge)| EdgeRecord {
            edge: edge.id,
            component: edge.component,
            index: edge.index,
            start: edge.start,
            end: edge.end,
            midpoint: midpoints[e],
            length: edge.length(),
            tag: OctalTag::from_boxes(ranks[e].map(|r| (r / m) as u32)),
        })
        .collect();

    let mut by_oct = Vec::with_capacity(n);
    let all: Vec<usize> = (0..n).collect();
    let root = subdivide(&records, &ranks, all, [0; 3], side, m, &mut by_oct);
    Octree::from_parts(root, by_oct, levels, m)
}

fn subdivide(
    records: &[EdgeRecord],
    ranks: &[[usize; 3]],
    mut members: Vec<usize>,
    lo: [usize; 3],
    side: usize,
    m: usize,
    by_oct: &mut Vec<EdgeRecord>,
) -> Draft {
    let first = by_oct.len();
    if side <= m {
        members.sort_unstable();
        by_oct.extend(members.iter().map(|&e| records[e]));
        return Draft {
            bounds: leaf_bounds(&by_oct[first..]),
            first,
            count: members.len(),
            children: Vec::new(),
        };
    }
    let half = side / 2;
    let mut octants: [Vec<usize>; 8] = Default::default();
    for e in members {
        let bit = |axis: usize| usize::from(ranks[e][axis] >= lo[axis] + half);
        octants[bit(0) | bit(1) << 1 | bit(2) << 2].push(e);
    }
    let mut children = Vec::new();
    for (k, sub) in octants.into_iter().enumerate() {
        if sub.is_empty() {
            continue;
        }
        let child_lo = [0, 1, 2].map(|axis| lo[axis] + half * ((k >> axis) & 1));
        children.push(subdivide(records, ranks, sub, child_lo, half, m, by_oct));
    }
    let bounds = children
        .iter()
        .fold(Aabb::empty(), |b, c| b.union(c.bounds));
    prune_draft(
        Draft {
            bounds,
            first,
            count: by_oct.len() - first,
            children,
        },
        m,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial_index::{build, default_levels, leaf_capacity};

    #[test]
    fn single_edge() {
        let c = PolyCurve::open_polyline(vec![Vec3::ZERO, Vec3::new(0.0, 1.0, 0.0)]).unwrap();
        let t = build_recursive_reference(&c, 1);
        assert!(t.root().is_leaf());
        assert_eq!(t.root().count, 1);
    }

    #[test]
    fn matches_sort_builder_on_helix() {
        for n in [5, 16, 40, 129] {
            let verts = (0..=n)
                .map(|i| {
                    let t = i as f64 * 0.4;
                    Vec3::new(t.cos(), t.sin(), 0.1 * t)
                })
                .collect();
            let c = PolyCurve::open_polyline(verts).unwrap();
            let levels = default_levels(n);
            let fast = build(&c, Some(levels));
            let slow = build_recursive_reference(&c, leaf_capacity(n, levels));
            assert_eq!(fast.leaf_groups(), slow.leaf_groups());
            let ids = |t: &Octree| t.by_oct().iter().map(|r| r.edge).collect::<Vec<_>>();
            assert_eq!(ids(&fast), ids(&slow));
        }
    }
}
