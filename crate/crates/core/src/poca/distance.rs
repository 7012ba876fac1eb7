use crate::geometry::Vec3;
use crate::spatial_index::Aabb;

fn point_box_dist2(b: &Aabb, p: Vec3) -> f64 {
    (0..3)
        .map(|k| {
            let d = (b.min[k] - p[k]).max(p[k] - b.max[k]).max(0.0);
            d * d
        })
        .sum()
}

/// Distance from a segment to an axis-aligned box (0 if they meet).
///
/// The squared distance along the segment is a convex piecewise quadratic
/// whose pieces end where a coordinate crosses a box face; each piece is
/// minimized in closed form.
pub fn aabb_segment_distance(b: &Aabb, p0: Vec3, p1: Vec3) -> f64 {
    let d = p1 - p0;
    let mut breaks = vec![0.0, 1.0];
    for k in 0..3 {
        if d[k] != 0.0 {
            for face in [b.min[k], b.max[k]] {
                let t = (face - p0[k]) / d[k];
                if t > 0.0 && t < 1.0 {
                    breaks.push(t);
                }
            }
        }
    }
    breaks.sort_by(f64::total_cmp);

    let at = |t: f64| p0 + d * t;
    let mut best = point_box_dist2(b, p0).min(point_box_dist2(b, p1));
    for w in breaks.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        best = best.min(point_box_dist2(b, at(t1)));
        if t1 <= t0 {
            continue;
        }
        // Within the piece each coordinate stays on one side of each face.
        let mid = at(0.5 * (t0 + t1));
        let (mut num, mut den) = (0.0, 0.0);
        for k in 0..3 {
            let face = if mid[k] < b.min[k] {
                b.min[k]
            } else if mid[k] > b.max[k] {
                b.max[k]
            } else {
                continue;
            };
            num += (p0[k] - face) * d[k];
            den += d[k] * d[k];
        }
        if den > 0.0 {
            let t = (-num / den).clamp(t0, t1);
            best = best.min(point_box_dist2(b, at(t)));
        } else {
            best = best.min(point_box_dist2(b, mid));
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    fn unit() -> Aabb {
        Aabb::new(Vec3::ZERO, v(1., 1., 1.))
    }

    #[test]
    fn inside_is_zero() {
        assert_eq!(
            aabb_segment_distance(&unit(), v(0.2, 0.2, 0.2), v(0.8, 0.5, 0.1)),
            0.0
        );
    }

    #[test]
    fn along_axis() {
        assert_eq!(
            aabb_segment_distance(&unit(), v(2., 0., 0.), v(3., 0., 0.)),
            1.0
        );
    }

    #[test]
    fn passing_an_edge_of_the_box() {
        // Line x + y = 3 at z = 0.5 passes the (1,1) box edge at distance 1/√2.
        let d = aabb_segment_distance(&unit(), v(3., 0., 0.5), v(0., 3., 0.5));
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn crossing_through_the_box() {
        assert_eq!(
            aabb_segment_distance(&unit(), v(-1., 0.5, 0.5), v(2., 0.5, 0.5)),
            0.0
        );
    }

    fn coord() -> impl Strategy<Value = f64> {
        -4.0..4.0f64
    }

    fn point() -> impl Strategy<Value = Vec3> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn lower_bound_of_sampled_distance(a in point(), c in point(), p0 in point(), p1 in point()) {
            prop_assume!(p0.distance(p1) > 1e-6);
            let b = Aabb::new(a.min(c), a.max(c));
            let exact = aabb_segment_distance(&b, p0, p1);
            let steps = 4000;
            let sampled = (0..=steps)
                .map(|i| point_box_dist2(&b, p0.lerp(p1, i as f64 / steps as f64)).sqrt())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(exact <= sampled + 1e-12);
            // Sampling can overshoot the true minimum by at most the step length.
            prop_assert!(sampled - exact <= p0.distance(p1) / steps as f64 + 1e-12);
        }
    }
}
