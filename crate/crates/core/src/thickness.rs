//! Thickness and ropelength, and the all-pairs reference search.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::geometry::{check_edge_pair, curve_length, min_rad, EdgeId, Poca, PolyCurve};
use crate::poca::{find_pocas, finish, PocaSearch, SearchCounters, SearchOptions, SearchState};

/// Checks every nonadjacent edge pair once.
pub fn poca_naive(curve: &PolyCurve, tol: f64) -> PocaSearch {
    poca_naive_with(curve, tol, f64::INFINITY, false)
}

/// [`poca_naive`] with every local minimum reported, not only the shortest.
pub fn poca_naive_all(curve: &PolyCurve, tol: f64) -> PocaSearch {
    poca_naive_with(curve, tol, f64::INFINITY, true)
}

fn poca_naive_with(curve: &PolyCurve, tol: f64, seed: f64, report_all: bool) -> PocaSearch {
    let n = curve.edge_count();
    let mut state = SearchState::new(seed, tol, report_all);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (EdgeId(i), EdgeId(j));
            if curve.edges_adjacent(a, b) {
                continue;
            }
            state.counters.edge_edge_checks += 1;
            if let Some(p) = check_edge_pair(curve, a, b, tol) {
                state.offer(p);
            }
        }
    }
    let (min_length, pocas) = finish(state.pocas, state.cutoff, tol, report_all);
    PocaSearch {
        min_length,
        pocas,
        counters: state.counters,
        levels: 1,
        capacity: n,
    }
}

/// Which term of `min(2·minRad, POCA)` is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThicknessTerm {
    MinRad,
    Poca,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Thickness is zero: a straight reversal or a self-intersection.
    Degenerate,
}

/// Thickness, ropelength and the search that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub min_rad: f64,
    /// Shortest chord length, `+∞` if there is none.
    pub poca_length: f64,
    pub thickness: f64,
    pub length: f64,
    /// `+∞` when the thickness is zero.
    pub ropelength: f64,
    pub pocas: Vec<Poca>,
    pub counters: SearchCounters,
    pub elapsed: Duration,
    pub levels: u32,
    pub capacity: usize,
    pub status: Status,
}

impl SearchReport {
    pub fn limited_by(&self) -> ThicknessTerm {
        let mr = 2.0 * self.min_rad;
        if mr == self.poca_length {
            ThicknessTerm::Both
        } else if mr < self.poca_length {
            ThicknessTerm::MinRad
        } else {
            ThicknessTerm::Poca
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.status == Status::Degenerate
    }
}

/// `Thi = min(2·minRad, POCA)` with the octree search, or the all-pairs
/// search when the depth is forced to 1.
pub fn thickness(curve: &PolyCurve, opts: &SearchOptions) -> SearchReport {
    let start = Instant::now();
    let mr = min_rad(curve);
    let search = if opts.levels == Some(1) && !opts.parallel {
        let seed = if opts.seed_cutoff {
            2.0 * mr
        } else {
            f64::INFINITY
        };
        poca_naive_with(curve, opts.tol, seed, opts.report_all)
    } else {
        find_pocas(curve, opts)
    };
    let elapsed = start.elapsed();

    let thickness = (2.0 * mr).min(search.min_length);
    let length = curve_length(curve);
    let status = if thickness > 0.0 {
        Status::Ok
    } else {
        Status::Degenerate
    };
    SearchReport {
        min_rad: mr,
        poca_length: search.min_length,
        thickness,
        length,
        ropelength: if thickness > 0.0 {
            length / thickness
        } else {
            f64::INFINITY
        },
        pocas: search.pocas,
        counters: search.counters,
        elapsed,
        levels: search.levels,
        capacity: search.capacity,
        status,
    }
}

/// Length over thickness.
pub fn ropelength(curve: &PolyCurve, opts: &SearchOptions) -> Result<f64> {
    let r = thickness(curve, opts);
    if r.is_degenerate() {
        return Err(Error::DegenerateCurve);
    }
    Ok(r.ropelength)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;

    fn rect(w: f64, h: f64) -> PolyCurve {
        PolyCurve::closed_polygon(vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(w, 0., 0.),
            Vec3::new(w, h, 0.),
            Vec3::new(0., h, 0.),
        ])
        .unwrap()
    }

    #[test]
    fn unit_square() {
        let r = thickness(&rect(1.0, 1.0), &SearchOptions::default());
        assert_eq!(r.min_rad, 0.5);
        assert_eq!(r.poca_length, 1.0);
        assert_eq!(r.thickness, 1.0);
        assert_eq!(r.ropelength, 4.0);
        assert_eq!(r.limited_by(), ThicknessTerm::Both);
        assert_eq!(
            ropelength(&rect(1.0, 1.0), &SearchOptions::default()),
            Ok(4.0)
        );
    }

    #[test]
    fn flat_rectangle_ties() {
        let r = thickness(&rect(10.0, 0.1), &SearchOptions::default());
        assert!((r.min_rad - 0.05).abs() < 1e-15);
        assert!((r.poca_length - 0.1).abs() < 1e-15);
        assert!((r.thickness - 0.1).abs() < 1e-15);
    }

    #[test]
    fn naive_counts_closed_pairs() {
        for n in [4usize, 7, 30] {
            let c = PolyCurve::closed_polygon(
                (0..n)
                    .map(|i| {
                        let a = std::f64::consts::TAU * i as f64 / n as f64;
                        Vec3::new(a.cos(), a.sin(), 0.0)
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(
                poca_naive(&c, 1e-10).counters.edge_edge_checks,
                (n * (n - 3) / 2) as u64
            );
        }
    }

    #[test]
    fn straight_polyline_is_infinite() {
        let c = PolyCurve::open_polyline((0..6).map(|i| Vec3::new(i as f64, 0., 0.)).collect())
            .unwrap();
        let r = poca_naive(&c, 1e-10);
        assert_eq!(r.min_length, f64::INFINITY);
        let t = thickness(&c, &SearchOptions::default());
        assert_eq!(t.thickness, f64::INFINITY);
        assert_eq!(t.limited_by(), ThicknessTerm::Both);
    }

    #[test]
    fn reversal_is_degenerate() {
        let c = PolyCurve::open_polyline(vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(1., 0., 0.),
            Vec3::new(0.5, 0., 0.),
        ])
        .unwrap();
        let r = thickness(&c, &SearchOptions::default());
        assert!(r.is_degenerate());
        assert_eq!(r.thickness, 0.0);
        assert_eq!(
            ropelength(&c, &SearchOptions::default()),
            Err(Error::DegenerateCurve)
        );
    }

    #[test]
    fn depth_one_and_default_agree() {
        let c = rect(3.0, 2.0);
        let a = thickness(&c, &SearchOptions::default());
        let b = thickness(&c, &SearchOptions::with_levels(1));
        assert_eq!(a.thickness, b.thickness);
        assert_eq!(a.pocas, b.pocas);
    }
}
