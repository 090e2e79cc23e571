//! Upper half-plane geometry: Möbius action, hyperbolic distance, orbit
//! displacement and the cusp norm `|g⁻¹x|` for the cusp vector `x = (1,0)ᵀ`.

use crate::matgroup::{GroupElement, Mat64};

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    re: f64,
    im: f64,
}

impl HPoint {
    pub const I: HPoint = HPoint { re: 0.0, im: 1.0 };

    /// Returns `None` unless `im > 0` and both parts are finite.
    pub fn new(re: f64, im: f64) -> Option<Self> {
        (im > 0.0 && re.is_finite() && im.is_finite()).then_some(Self { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }
}

/// `g·z = (az + b)/(cz + d)`.
pub fn mobius(g: &GroupElement, z: HPoint) -> HPoint {
    let [a, b, c, d] = g.entries_f64();
    mobius_f64([a, b, c, d], z)
}

pub(crate) fn mobius_f64([a, b, c, d]: [f64; 4], z: HPoint) -> HPoint {
    // (az+b)/(cz+d) with z = x + iy
    let (x, y) = (z.re, z.im);
    let nr = a * x + b;
    let dr = c * x + d;
    let di = c * y;
    let den = dr * dr + di * di;
    HPoint {
        re: (nr * dr + a * y * di) / den,
        im: y / den,
    }
}

/// Hyperbolic distance `acosh(1 + |z − w|² / (2 Im z Im w))`.
pub fn dist(z: HPoint, w: HPoint) -> f64 {
    let dx = z.re - w.re;
    let dy = z.im - w.im;
    let t = (dx * dx + dy * dy) / (2.0 * z.im * w.im);
    // acosh(1 + t) = ln(1 + t + sqrt(t(t+2))), stable for small t
    (t + (t * (t + 2.0)).sqrt()).ln_1p()
}

/// `d(i, g·i)`, from `2 cosh d = a² + b² + c² + d²`.
pub fn displacement(g: &GroupElement) -> f64 {
    let [a, b, c, d] = g.entries_f64();
    cosh_half_norm_to_dist((a * a + b * b + c * c + d * d) / 2.0)
}

pub(crate) fn displacement64(g: &Mat64) -> f64 {
    cosh_half_norm_to_dist(g.norm_sq() as f64 / 2.0)
}

fn cosh_half_norm_to_dist(cosh_d: f64) -> f64 {
    let t = (cosh_d - 1.0).max(0.0);
    (t + (t * (t + 2.0)).sqrt()).ln_1p()
}

/// Inverse of [`displacement`]: the largest squared Frobenius norm of an
/// element at distance at most `r` from `i`.
pub fn norm_bound_for_radius(r: f64) -> f64 {
    2.0 * r.cosh()
}

/// `|g⁻¹x|` for `x = (1,0)ᵀ`, i.e. `√(c² + d²)`; equals `Im(g·i)^{−1/2}`.
pub fn cusp_norm(g: &GroupElement) -> f64 {
    let [_, _, c, d] = g.entries_f64();
    c.hypot(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn mobius_examples() {
        let i = HPoint::I;
        assert_eq!(mobius(&GroupElement::identity(), i), i);
        let z = mobius(&GroupElement::u_pow(2), i);
        assert!(close(z.re(), 2.0, TOL) && close(z.im(), 1.0, TOL));
        let z = mobius(&GroupElement::ut_pow(2), i);
        assert!(close(z.re(), 0.4, TOL) && close(z.im(), 0.2, TOL));
    }

    #[test]
    fn dist_examples() {
        let i = HPoint::I;
        assert_eq!(dist(i, i), 0.0);
        assert!(close(dist(i, HPoint::new(2.0, 1.0).unwrap()), 3f64.acosh(), TOL));
        // rotating i by θ about the base point of the vertical geodesic: e^{iθ}·i
        let theta = std::f64::consts::FRAC_PI_3;
        let p = HPoint::new(-theta.sin(), theta.cos()).unwrap();
        assert!(close(dist(i, p), 2f64.acosh(), TOL));
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(displacement(&GroupElement::identity()), 0.0);
        assert!(close(displacement(&GroupElement::u_pow(2)), 3f64.acosh(), TOL));
        assert!(close(displacement(&GroupElement::ut_pow(2)), 3f64.acosh(), TOL));
    }

    #[test]
    fn cusp_norm_examples() {
        assert_eq!(cusp_norm(&GroupElement::identity()), 1.0);
        assert!(close(cusp_norm(&GroupElement::ut_pow(2)), 5f64.sqrt(), TOL));
        assert_eq!(cusp_norm(&GroupElement::u_pow(2)), 1.0);
        let g = GroupElement::ut_pow(2);
        let im = mobius(&g, HPoint::I).im();
        assert!(close(cusp_norm(&g).powi(2) * im, 1.0, TOL));
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_none());
        assert!(HPoint::new(0.0, -1.0).is_none());
        assert!(HPoint::new(f64::NAN, 1.0).is_none());
    }

    #[test]
    fn dist_symmetric_and_small_distances_accurate() {
        let z = HPoint::new(0.3, 2.0).unwrap();
        let w = HPoint::new(0.3, 2.0 * (1e-9f64).exp()).unwrap();
        assert!(close(dist(z, w), 1e-9, 1e-6));
        assert_eq!(dist(z, w), dist(w, z));
    }
}
