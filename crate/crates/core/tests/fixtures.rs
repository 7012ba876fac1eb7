use ropelength::spatial_index::{build_recursive_reference, tag_table, Octree};
use ropelength::*;

const HOPF_TAGS: &str = "\
# edge x-box y-box z-box bits octal decimal
e0.2 0 0 1 000100 04 4
e0.3 0 1 1 000110 06 6
e0.0 3 1 0 001011 13 11
e0.1 2 0 1 001100 14 12
e1.2 1 3 0 010011 23 19
e1.3 2 2 0 011000 30 24
e1.0 1 1 3 100111 47 39
e1.4 2 0 2 101000 50 40
e0.4 0 2 2 110000 60 48
e1.1 1 2 2 110001 61 49
";

fn ids(curve: &PolyCurve, pairs: &[(usize, usize)]) -> Vec<EdgeId> {
    pairs.iter().map(|&(c, i)| curve.edge_id(c, i)).collect()
}

fn hopf_leaf_groups(c: &PolyCurve) -> Vec<Vec<EdgeId>> {
    [
        vec![(0, 2), (0, 3)],
        vec![(0, 0), (0, 1)],
        vec![(1, 2)],
        vec![(1, 3)],
        vec![(1, 0)],
        vec![(1, 4)],
        vec![(0, 4), (1, 1)],
    ]
    .iter()
    .map(|g| ids(c, g))
    .collect()
}

#[test]
fn hopf_tag_table() {
    let c = gen_hopf_pentagons();
    assert_eq!(default_levels(c.edge_count()), 3);
    assert_eq!(leaf_capacity(c.edge_count(), 3), 3);
    assert_eq!(tag_table(&c, 3), HOPF_TAGS);
}

#[test]
fn hopf_midpoints() {
    let c = gen_hopf_pentagons();
    let mid = |comp, i| c.edge(c.edge_id(comp, i)).midpoint();
    let table = [
        ((0, 0), [19.0, 6.2, 0.0]),
        ((0, 1), [11.75, -16.15, 0.0]),
        ((0, 2), [-11.75, -16.15, 0.0]),
        ((0, 3), [-19.0, 6.2, 0.0]),
        ((0, 4), [0.0, 20.0, 0.0]),
        ((1, 0), [0.0, 13.8, 19.0]),
        ((1, 1), [0.0, 36.15, 11.75]),
        ((1, 2), [0.0, 36.15, -11.75]),
        ((1, 3), [0.0, 13.8, -19.0]),
        ((1, 4), [0.0, 0.0, 0.0]),
    ];
    for ((comp, i), want) in table {
        assert!(mid(comp, i).distance(Vec3::from(want)) < 1e-12);
    }
}

#[test]
fn hopf_tree_before_pruning() {
    let c = gen_hopf_pentagons();
    let raw = Octree::build_unpruned(&c, Some(3));
    let root = raw.root();
    assert_eq!(root.child_count(), 7);
    let groups: Vec<Vec<EdgeId>> = raw
        .children(root)
        .iter()
        .map(|b| {
            let mut g: Vec<EdgeId> = raw.by_oct()[b.ranks()].iter().map(|r| r.edge).collect();
            g.sort();
            g
        })
        .collect();
    assert_eq!(groups, hopf_leaf_groups(&c));
    // The box holding e_12 is a chain down to a single depth-2 box.
    let b2 = &raw.children(root)[2];
    assert_eq!(b2.child_count(), 1);
    // Two edges under the last box sit in two different depth-2 boxes.
    assert_eq!(raw.children(root)[6].child_count(), 2);
}

#[test]
fn hopf_tree_after_pruning() {
    let c = gen_hopf_pentagons();
    let t = build(&c, None);
    let root = t.root();
    assert_eq!(root.child_count(), 7);
    assert!(t.children(root).iter().all(|b| b.is_leaf()));
    assert_eq!(t.leaf_groups(), hopf_leaf_groups(&c));
    assert_eq!(
        build_recursive_reference(&c, 3).leaf_groups(),
        hopf_leaf_groups(&c)
    );
}

#[test]
fn exact_hopf_has_nine_midpoint_chords() {
    let c = gen_hopf_pentagons_exact();
    for report in [
        find_pocas(&c, &SearchOptions::default()),
        poca_naive(&c, 1e-10),
        find_pocas(&c, &SearchOptions::with_levels(1)),
    ] {
        assert_eq!(report.pocas.len(), 9);
        for p in &report.pocas {
            assert!((p.length - 20.0).abs() < 1e-12, "{p}");
            assert!((p.a.t - 0.5).abs() < 1e-9 && (p.b.t - 0.5).abs() < 1e-9);
            assert_ne!(p.a.component, p.b.component);
        }
        let mut pairs: Vec<(usize, usize)> =
            report.pocas.iter().map(|p| (p.a.edge, p.b.edge)).collect();
        pairs.sort();
        let mut expected: Vec<(usize, usize)> = (0..5)
            .map(|k| (k, 4))
            .chain((0..4).map(|k| (4, k)))
            .collect();
        expected.sort();
        assert_eq!(pairs, expected);
    }
    // Away from the two central edges the shortest chords are longer.
    let far = edge_pair_pocas(&c, c.edge_id(0, 0), c.edge_id(1, 2), 1e-10).unwrap();
    assert!(far.iter().all(|p| p.length > 20.0 + 1e-6));
}

#[test]
fn rounded_hopf_agrees_with_naive() {
    let c = gen_hopf_pentagons();
    let fast = find_pocas(&c, &SearchOptions::default());
    let slow = poca_naive(&c, 1e-10);
    assert_eq!(fast.pocas, slow.pocas);
    assert!(fast.min_length > 19.9 && fast.min_length <= 20.0);
    // Brute force covers every nonadjacent pair.
    assert_eq!(slow.counters.edge_edge_checks, 35);
}

#[test]
fn trefoil_ropelength_settles() {
    let r = |n| ropelength(&gen_trefoil(n).unwrap(), &SearchOptions::default()).unwrap();
    let values: Vec<f64> = [64, 128, 256, 512, 1024, 2048, 4096]
        .into_iter()
        .map(r)
        .collect();
    let steps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    for w in steps.windows(2) {
        assert!(w[1] < w[0], "{values:?}");
    }
    assert!((values[3] - values[6]).abs() / values[6] < 0.05);
}

#[test]
fn trefoils_are_embedded() {
    for n in [16, 100, 333, 1024] {
        let r = thickness(&gen_trefoil(n).unwrap(), &SearchOptions::default());
        assert!(r.thickness > 0.0 && !r.is_degenerate());
    }
}

#[test]
fn build_work_tracks_n_log_n() {
    // Comparisons per 3·n·log₂ n stay within a constant band over doublings.
    let mut ratios = Vec::new();
    for n in [512usize, 1024, 2048, 4096, 8192] {
        let c = gen_random_walk(n, 11, 1.0).unwrap();
        let t = build(&c, None);
        let nf = n as f64;
        ratios.push(t.stats().comparisons as f64 / (3.0 * nf * nf.log2()));
        assert!(t.stats().tag_transitions < n);
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo < 2.0, "{ratios:?}");
}
