//! Deterministic test curves.
//!
//! Random families draw from `ChaCha8Rng::seed_from_u64(seed)`. A unit
//! direction uses two uniforms `u1, u2` in `[0, 1)`: `z = 2 u1 − 1`,
//! `φ = 2π u2`, `(√(1 − z²) cos φ, √(1 − z²) sin φ, z)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Component, PolyCurve, Vec3};

/// Curve families the generators cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Trefoil,
    /// Two linked pentagons with coordinates rounded to one decimal.
    HopfPentagons,
    /// The same link with exact regular pentagons.
    HopfPentagonsExact,
    RandomWalk,
    RandomInBox,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Trefoil,
        Family::HopfPentagons,
        Family::HopfPentagonsExact,
        Family::RandomWalk,
        Family::RandomInBox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Trefoil => "trefoil",
            Family::HopfPentagons => "hopf-pentagons",
            Family::HopfPentagonsExact => "hopf-pentagons-exact",
            Family::RandomWalk => "random-walk",
            Family::RandomInBox => "random-in-box",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A family plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    /// Edge count; ignored by the fixed Hopf fixtures.
    pub n: usize,
    pub seed: u64,
    /// Random-walk step length.
    pub step: f64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenSpec {
            family,
            n,
            seed: 0,
            step: 1.0,
        }
    }

    pub fn generate(&self) -> Result<PolyCurve> {
        match self.family {
            Family::Trefoil => gen_trefoil(self.n),
            Family::HopfPentagons => Ok(gen_hopf_pentagons()),
            Family::HopfPentagonsExact => Ok(gen_hopf_pentagons_exact()),
            Family::RandomWalk => gen_random_walk(self.n, self.seed, self.step),
            Family::RandomInBox => gen_random_in_box(self.n, self.seed),
        }
    }
}

fn too_small(n: usize, min: usize) -> Error {
    Error::InvalidComponent {
        component: 0,
        reason: format!("need at least {min} edges, got {n}"),
    }
}

/// Trefoil point at parameter `θ`.
pub fn trefoil_point(theta: f64) -> Vec3 {
    let r = 1.0 + 2.0 / 3.0 * (3.0 * theta).cos();
    Vec3::new(
        r * (2.0 * theta).cos(),
        r * (2.0 * theta).sin(),
        2.0 / 3.0 * (3.0 * theta).sin(),
    )
}

/// Closed `n`-gon inscribed in the trefoil at equally spaced parameters.
pub fn gen_trefoil(n: usize) -> Result<PolyCurve> {
    if n < 3 {
        return Err(too_small(n, 3));
    }
    PolyCurve::closed_polygon(
        (0..n)
            .map(|k| trefoil_point(TAU * k as f64 / n as f64))
            .collect(),
    )
}

fn pts(coords: &[[f64; 3]]) -> Vec<Vec3> {
    coords.iter().copied().map(Vec3::from).collect()
}

/// Hopf link of two pentagons, coordinates rounded to one decimal.
pub fn gen_hopf_pentagons() -> PolyCurve {
    PolyCurve::new(vec![
        Component::closed(pts(&[
            [14.5, 20.0, 0.0],
            [23.5, -7.6, 0.0],
            [0.0, -24.7, 0.0],
            [-23.5, -7.6, 0.0],
            [-14.5, 20.0, 0.0],
        ])),
        Component::closed(pts(&[
            [0.0, 0.0, 14.5],
            [0.0, 27.6, 23.5],
            [0.0, 44.7, 0.0],
            [0.0, 27.6, -23.5],
            [0.0, 0.0, -14.5],
        ])),
    ])
    .expect("fixed fixture is valid")
}

/// The Hopf link with exact regular pentagons of apothem 20: the first in
/// `z = 0` about the origin, the second in `x = 0` about `(0, 20, 0)`.
/// Each passes through the other's center, so the nine shortest chords all
/// have length 20.
pub fn gen_hopf_pentagons_exact() -> PolyCurve {
    let r = 20.0 / (PI / 5.0).cos();
    let at = |deg: f64| {
        let a = deg.to_radians();
        (r * a.cos(), r * a.sin())
    };
    let first = [54.0, -18.0, -90.0, -162.0, 126.0]
        .map(|d| {
            let (x, y) = at(d);
            Vec3::new(x, y, 0.0)
        })
        .to_vec();
    let second = [144.0, 72.0, 0.0, -72.0, -144.0]
        .map(|d| {
            let (y, z) = at(d);
            Vec3::new(0.0, 20.0 + y, z)
        })
        .to_vec();
    PolyCurve::new(vec![Component::closed(first), Component::closed(second)])
        .expect("fixed fixture is valid")
}

/// Uniform random unit vector.
pub fn random_unit(rng: &mut impl Rng) -> Vec3 {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let phi = TAU * rng.random::<f64>();
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Open random walk of `n` steps of length `step` from the origin.
pub fn gen_random_walk(n: usize, seed: u64, step: f64) -> Result<PolyCurve> {
    if n < 1 {
        return Err(too_small(n, 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Vec3::ZERO;
    let mut verts = Vec::with_capacity(n + 1);
    verts.push(p);
    for _ in 0..n {
        p += random_unit(&mut rng) * step;
        verts.push(p);
    }
    PolyCurve::open_polyline(verts)
}

/// Closed polygon through `n` uniform points of the unit cube.
pub fn gen_random_in_box(n: usize, seed: u64) -> Result<PolyCurve> {
    if n < 3 {
        return Err(too_small(n, 3));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Vec3::new(rng.random(), rng.random(), rng.random());
    let mut verts: Vec<Vec3> = Vec::with_capacity(n);
    while verts.len() < n {
        let p = draw(&mut rng);
        let repeats_prev = verts.last() == Some(&p);
        let closes_on_first = verts.len() == n - 1 && verts.first() == Some(&p);
        if !repeats_prev && !closes_on_first {
            verts.push(p);
        }
    }
    PolyCurve::closed_polygon(verts)
}
