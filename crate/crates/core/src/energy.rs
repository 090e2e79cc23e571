//! Energy lower bound on the Dirichlet domain
//! `𝒟 = {|z ± 1/2| ≥ 1/2, |Re z| ≤ 1}` of Γ₀.
//!
//! A transition zone of length `L` and radius `R` has area `L sinh R` and
//! capacity `L / arctan(sinh R)`. Zones are admissible when
//! `2 e^L tanh³ R ≤ 1`, and the energy bound is
//!
//! ```text
//! E(L, R) = η A C / (2 Area(𝒟) (√(η A) + √C)²)
//! ```
//!
//! `E` increases in `L` at fixed `R`, so the maximum over the admissible
//! region sits on the curve `L = −ln(2 tanh³ R)` and the search is one
//! dimensional.

use std::f64::consts::PI;

use crate::hyperbolic::{dist, HPoint};

/// Zone length and radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZoneParams {
    pub length: f64,
    pub radius: f64,
}

impl ZoneParams {
    pub fn new(length: f64, radius: f64) -> Self {
        Self { length, radius }
    }
}

/// Spectral gap and domain area entering the energy formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyConfig {
    pub eta: f64,
    pub domain_area: f64,
}

impl Default for EnergyConfig {
    /// `η = 1/2`, `Area(𝒟) = 2π`.
    fn default() -> Self {
        Self {
            eta: 0.5,
            domain_area: 2.0 * PI,
        }
    }
}

/// `2 e^L tanh³ R`.
pub fn admissibility_value(p: ZoneParams) -> f64 {
    2.0 * p.length.exp() * p.radius.tanh().powi(3)
}

pub fn is_admissible(p: ZoneParams) -> bool {
    admissibility_value(p) <= 1.0
}

/// The stricter rule `2 e^L tanh² R ≤ 1`, which is what containment of the
/// zone corners in `T(1, i, ∞)` actually requires (see [`transition_point`]).
pub fn is_admissible_strict(p: ZoneParams) -> bool {
    2.0 * p.length.exp() * p.radius.tanh().powi(2) <= 1.0
}

/// `(L sinh R, L / arctan(sinh R))`.
pub fn area_capacity(p: ZoneParams) -> (f64, f64) {
    let s = p.radius.sinh();
    (p.length * s, p.length / s.atan())
}

/// The energy bound at `(L, R)`; admissibility is not checked.
pub fn energy(p: ZoneParams, cfg: &EnergyConfig) -> f64 {
    let (a, c) = area_capacity(p);
    let ea = cfg.eta * a;
    let denom = ea.sqrt() + c.sqrt();
    ea * c / (denom * denom) / (2.0 * cfg.domain_area)
}

#[derive(Clone, Copy, Debug)]
pub struct EnergyMaximum {
    pub params: ZoneParams,
    pub energy: f64,
    /// `2 e^{L*} tanh³ R*`.
    pub constraint_value: f64,
}

/// Maximizes the energy over `2 e^L tanh³ R ≤ 1`.
pub fn maximize_energy(cfg: &EnergyConfig, tol: f64) -> EnergyMaximum {
    let best = maximize_on_boundary(cfg, tol, 3);
    EnergyMaximum {
        constraint_value: admissibility_value(best.params),
        ..best
    }
}

/// Maximizes the energy over the stricter region `2 e^L tanh² R ≤ 1`.
pub fn maximize_energy_strict(cfg: &EnergyConfig, tol: f64) -> EnergyMaximum {
    let best = maximize_on_boundary(cfg, tol, 2);
    EnergyMaximum {
        constraint_value: 2.0 * best.params.length.exp() * best.params.radius.tanh().powi(2),
        ..best
    }
}

/// Length on the active constraint `2 e^L tanh^p R = 1`, nudged down until
/// the constraint holds in floating point.
fn boundary_length(radius: f64, power: i32) -> f64 {
    let g = |l: f64| 2.0 * l.exp() * radius.tanh().powi(power);
    let mut l = -(2.0 * radius.tanh().powi(power)).ln();
    while g(l) > 1.0 {
        l = f64::from_bits(l.to_bits() - 1);
    }
    l
}

fn maximize_on_boundary(cfg: &EnergyConfig, tol: f64, power: i32) -> EnergyMaximum {
    let tol = tol.max(1e-14);
    // L = 0 at tanh R = 2^{-1/p}; beyond that the region is empty
    let r_max = 0.5f64.powf(1.0 / power as f64).atanh();
    let objective = |r: f64| energy(ZoneParams::new(boundary_length(r, power), r), cfg);

    // coarse scan to bracket the maximum, then golden section
    const SCAN: usize = 400;
    let r_lo = r_max * 1e-6;
    let grid: Vec<f64> = (0..=SCAN)
        .map(|i| r_lo + (r_max - r_lo) * i as f64 / SCAN as f64)
        .collect();
    let (ibest, _) = grid
        .iter()
        .map(|&r| objective(r))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, e)| if e > acc.1 { (i, e) } else { acc });
    let mut a = grid[ibest.saturating_sub(1)];
    let mut b = grid[(ibest + 1).min(SCAN)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        }
    }
    let r = 0.5 * (a + b);
    let params = ZoneParams::new(boundary_length(r, power), r);
    EnergyMaximum {
        params,
        energy: energy(params, cfg),
        constraint_value: f64::NAN,
    }
}

/// The point `b₀(h, R)` at distance `R` from `1 + hi` along the geodesic
/// orthogonal to `Re z = 1`, with two containment tests for the triangle
/// `T(1, i, ∞) = {0 ≤ Re z ≤ 1, |z| ≥ 1}`.
#[derive(Clone, Copy, Debug)]
pub struct TransitionPoint {
    pub point: HPoint,
    /// `2 tanh² R ≤ h ≤ coth R`, the closed form used for admissibility.
    pub contained: bool,
    /// Direct membership in `T(1, i, ∞)`, up to the boundary tolerance.
    pub contained_geometric: bool,
}

pub const BOUNDARY_TOL: f64 = 1e-9;

pub fn in_triangle_1_i_inf(z: HPoint, tol: f64) -> bool {
    z.re() >= -tol && z.re() <= 1.0 + tol && z.re().hypot(z.im()) >= 1.0 - tol
}

/// `b₀(h, R) = 1 − h tanh R + i h sech R`.
pub fn transition_point(h: f64, radius: f64) -> TransitionPoint {
    let t = radius.tanh();
    let point = HPoint::new(1.0 - h * t, h / radius.cosh()).expect("h > 0");
    TransitionPoint {
        point,
        contained: 2.0 * t * t <= h && h <= 1.0 / t,
        contained_geometric: in_triangle_1_i_inf(point, BOUNDARY_TOL),
    }
}

/// Distance from `b₀(h, R)` back to `1 + hi`; equals `R`.
pub fn transition_offset(h: f64, radius: f64) -> f64 {
    let base = HPoint::new(1.0, h).expect("h > 0");
    dist(transition_point(h, radius).point, base)
}
