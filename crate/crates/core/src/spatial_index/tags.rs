use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::geometry::{EdgeId, PolyCurve, Vec3};

/// Largest supported level count: `3 (levels - 1)` tag bits must fit in 64.
pub const MAX_LEVELS: u32 = 22;

/// Default tree depth, `⌈¾ log₂ n⌉`, at least 1.
pub fn default_levels(n: usize) -> u32 {
    // ⌈¾ log₂ n⌉ is the least L with 2^(4L) ≥ n³; search in integers to avoid
    // rounding at exact powers of two.
    let cube = (n.max(1) as u128).pow(3);
    let mut levels = 0u32;
    while (1u128 << (4 * levels)) < cube {
        levels += 1;
    }
    levels.clamp(1, MAX_LEVELS)
}

/// Leaf capacity `m = ⌈n / 2^(levels-1)⌉`.
pub fn leaf_capacity(n: usize, levels: u32) -> usize {
    let boxes = 1usize << (levels.clamp(1, MAX_LEVELS) - 1);
    n.div_ceil(boxes).max(1)
}

/// Inserts two zero bits between consecutive bits of `k` (21 bits max).
pub fn spread_bits(k: u32) -> u64 {
    let mut x = u64::from(k) & 0x1f_ffff;
    x = (x | (x << 32)) & 0x001f_0000_0000_ffff;
    x = (x | (x << 16)) & 0x001f_0000_ff00_00ff;
    x = (x | (x << 8)) & 0x100f_00f0_0f00_f00f;
    x = (x | (x << 4)) & 0x10c3_0c30_c30c_30c3;
    x = (x | (x << 2)) & 0x1249_2492_4924_9249;
    x
}

/// Interleaved box numbers `z₁y₁x₁ z₂y₂x₂ …` of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OctalTag(pub u64);

impl OctalTag {
    pub fn from_boxes(boxes: [u32; 3]) -> Self {
        OctalTag(spread_bits(boxes[0]) | spread_bits(boxes[1]) << 1 | spread_bits(boxes[2]) << 2)
    }

    /// Octal digit `d` counted from the most significant of `digits`.
    pub fn digit(self, d: u32, digits: u32) -> u32 {
        ((self.0 >> (3 * (digits - 1 - d))) & 7) as u32
    }

    /// Binary form, `3 (levels - 1)` digits wide.
    pub fn bits(self, levels: u32) -> String {
        let width = (3 * (levels.max(1) - 1)) as usize;
        format!("{:0width$b}", self.0, width = width.max(1))
    }

    /// Octal form, `levels - 1` digits wide.
    pub fn octal(self, levels: u32) -> String {
        let width = (levels.max(1) - 1) as usize;
        format!("{:0width$o}", self.0, width = width.max(1))
    }
}

/// Box numbers and tag of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTag {
    pub edge: EdgeId,
    /// Section of the sorted x, y and z arrays holding the edge's midpoint.
    pub boxes: [u32; 3],
    pub tag: OctalTag,
}

fn cmp_coord(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Edge order by one midpoint coordinate, ties broken by edge id.
pub(crate) fn sorted_by_axis(midpoints: &[Vec3], axis: usize, comparisons: &mut u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..midpoints.len()).collect();
    order.sort_by(|&a, &b| {
        *comparisons += 1;
        cmp_coord(midpoints[a][axis], midpoints[b][axis]).then(a.cmp(&b))
    });
    order
}

/// Tags for midpoints indexed by edge id, using sections of `m` ranks.
pub(crate) fn tags_for_midpoints(
    midpoints: &[Vec3],
    m: usize,
    comparisons: &mut u64,
) -> Vec<EdgeTag> {
    let mut boxes = vec![[0u32; 3]; midpoints.len()];
    #[allow(clippy::needless_range_loop)]
    for axis in 0..3 {
        for (rank, e) in sorted_by_axis(midpoints, axis, comparisons)
            .into_iter()
            .enumerate()
        {
            boxes[e][axis] = (rank / m) as u32;
        }
    }
    boxes
        .into_iter()
        .enumerate()
        .map(|(e, b)| EdgeTag {
            edge: EdgeId(e),
            boxes: b,
            tag: OctalTag::from_boxes(b),
        })
        .collect()
}

/// Per-edge octal tags of a curve's edge midpoints, indexed by edge id.
pub fn octal_tags(curve: &PolyCurve, levels: u32) -> Vec<EdgeTag> {
    let midpoints: Vec<Vec3> = curve.edges().map(|e| e.midpoint()).collect();
    let m = leaf_capacity(midpoints.len(), levels);
    tags_for_midpoints(&midpoints, m, &mut 0)
}

/// Label used for an edge in tag dumps: `e<component>.<index>`.
pub fn edge_label(curve: &PolyCurve, edge: EdgeId) -> String {
    let (c, i) = curve.locate(edge);
    format!("e{c}.{i}")
}

/// The tag table, sorted by tag, one line per edge:
/// `edge x-box y-box z-box bits octal decimal`.
pub fn tag_table(curve: &PolyCurve, levels: u32) -> String {
    let mut rows = octal_tags(curve, levels);
    rows.sort_by_key(|r| (r.tag, r.edge));
    let mut out = String::from("# edge x-box y-box z-box bits octal decimal\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            edge_label(curve, r.edge),
            r.boxes[0],
            r.boxes[1],
            r.boxes[2],
            r.tag.bits(levels),
            r.tag.octal(levels),
            r.tag.0
        );
    }
    out
}
