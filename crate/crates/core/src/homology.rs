//! Homology data of the (1/2,1/2) wind-tree surface.
//!
//! Cohomology classes are integer vectors over the ten dual classes
//! `h₀₀*, h₀₁*, h₁₀*, h₁₁*, v₀₀*, v₀₁*, v₁₀*, v₁₁*, c₀*, c₁*`. The two
//! invariant planes `E^{+−}` and `E^{−+}` are spanned by signed sums of the
//! `h` and `v` classes, and the Veech group Γ₀ acts on each of them through a
//! 2×2 integer matrix. The `u²` block is derived here from the explicit basis
//! action; the `ᵗu²` block is a fixed table.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::matgroup::{GroupElement, Mat64, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("image of v^{sigma} is not in span{{h, v}} after substituting c: {image}")]
    SubstitutionFailure { sigma: Sigma, image: HomologyClass },
}

pub const RANK: usize = 10;

/// Index helpers for the ordered basis.
pub fn h_index(i: usize, j: usize) -> usize {
    2 * i + j
}
pub fn v_index(i: usize, j: usize) -> usize {
    4 + 2 * i + j
}
pub fn c_index(j: usize) -> usize {
    8 + j
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyClass(pub [i64; RANK]);

impl HomologyClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: usize) -> Self {
        let mut x = [0; RANK];
        x[k] = 1;
        Self(x)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0[k]
    }

    /// Zeroes the `c` coordinates.
    fn hv_part(&self) -> Self {
        let mut x = self.0;
        x[8] = 0;
        x[9] = 0;
        Self(x)
    }

    fn c_part(&self) -> (i64, i64) {
        (self.0[8], self.0[9])
    }
}

impl Add for HomologyClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for HomologyClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Mul<HomologyClass> for i64 {
    type Output = HomologyClass;
    fn mul(self, x: HomologyClass) -> HomologyClass {
        HomologyClass(x.0.map(|v| self * v))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; RANK] = [
            "h00", "h01", "h10", "h11", "v00", "v01", "v10", "v11", "c0", "c1",
        ];
        let mut first = true;
        for (k, &v) in self.0.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if v < 0 { '-' } else { '+' })?;
            } else if v < 0 {
                write!(f, "-")?;
            }
            if v.abs() != 1 {
                write!(f, "{}", v.abs())?;
            }
            write!(f, "{}*", NAMES[k])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which of the two invariant planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sigma {
    /// `E^{+−} = F^{(h)}`, distinguished vector `f = h^{+−}`.
    PlusMinus,
    /// `E^{−+} = F^{(v)}`, distinguished vector `f = v^{−+}`.
    MinusPlus,
}

impl Sigma {
    pub const BOTH: [Sigma; 2] = [Sigma::PlusMinus, Sigma::MinusPlus];

    /// Sign pattern `(s₀, s₁)` such that the plane is spanned by
    /// `Σ s₀^i s₁^j h_ij*` and the same sum of `v_ij*`.
    fn signs(self) -> (i64, i64) {
        match self {
            // h00 + h01 − h10 − h11
            Sigma::PlusMinus => (-1, 1),
            // h00 − h01 + h10 − h11
            Sigma::MinusPlus => (1, -1),
        }
    }

    fn weight(self, i: usize, j: usize) -> i64 {
        let (s0, s1) = self.signs();
        s0.pow(i as u32) * s1.pow(j as u32)
    }

    /// `h^σ` as a coefficient vector.
    pub fn h(self) -> HomologyClass {
        let mut x = [0; RANK];
        for i in 0..2 {
            for j in 0..2 {
                x[h_index(i, j)] = self.weight(i, j);
            }
        }
        HomologyClass(x)
    }

    /// `v^σ` as a coefficient vector.
    pub fn v(self) -> HomologyClass {
        let mut x = [0; RANK];
        for i in 0..2 {
            for j in 0..2 {
                x[v_index(i, j)] = self.weight(i, j);
            }
        }
        HomologyClass(x)
    }

    /// Coordinates of the distinguished vector `f` in the basis `(h^σ, v^σ)`.
    pub fn f_coords(self) -> (i64, i64) {
        match self {
            Sigma::PlusMinus => (1, 0),
            Sigma::MinusPlus => (0, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sigma::PlusMinus => "+-",
            Sigma::MinusPlus => "-+",
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Action of `u²` on cohomology: `h_ij* ↦ h_ij*`, `v_ij* ↦ v_ij* + h_ij* + c_i*`,
/// `c_j* ↦ c_j*`.
///
/// The cylinder class attached to `v_ij*` is indexed by the first subscript;
/// this is the labelling under which `c^{+−} = 2c₀ − 2c₁` is the cylinder
/// contribution of `v^{+−}` and the one of `v^{−+}` vanishes.
pub fn u2_action(x: &HomologyClass) -> HomologyClass {
    let mut y = x.0;
    for i in 0..2 {
        for j in 0..2 {
            let coeff = x.0[v_index(i, j)];
            y[h_index(i, j)] += coeff;
            y[c_index(i)] += coeff;
        }
    }
    HomologyClass(y)
}

/// Rewrites the `c` part of `x` inside `E^σ` using `c^{+−} = 2c₀ − 2c₁ = 2h^{+−}`
/// and `c^{−+} := 0`.
fn substitute_cylinders(sigma: Sigma, x: &HomologyClass) -> Option<HomologyClass> {
    let (c0, c1) = x.c_part();
    match sigma {
        // c-part must be k(c₀ − c₁) = (k/2) c^{+−} = k h^{+−}
        Sigma::PlusMinus => (c0 == -c1).then(|| x.hv_part() + c0 * sigma.h()),
        Sigma::MinusPlus => (c0 == 0 && c1 == 0).then(|| x.hv_part()),
    }
}

/// Coordinates of `x` in the basis `(h^σ, v^σ)`, if it lies in their span.
fn coords_in_plane(sigma: Sigma, x: &HomologyClass) -> Option<(i64, i64)> {
    let (h, v) = (sigma.h(), sigma.v());
    // h and v have disjoint supports with ±1 entries
    let alpha = x.0[h_index(0, 0)] * h.0[h_index(0, 0)];
    let beta = x.0[v_index(0, 0)] * v.0[v_index(0, 0)];
    (alpha * h + beta * v == *x).then_some((alpha, beta))
}

/// The 2×2 matrix of `u²` on `E^σ` in the basis `(h^σ, v^σ)` (columns are images).
pub fn induced_u2_matrix(sigma: Sigma) -> Result<GroupElement, HomologyError> {
    let image = |basis: HomologyClass| {
        let raw = u2_action(&basis);
        substitute_cylinders(sigma, &raw)
            .and_then(|y| coords_in_plane(sigma, &y))
            .ok_or(HomologyError::SubstitutionFailure { sigma, image: raw })
    };
    let (a, c) = image(sigma.h())?;
    let (b, d) = image(sigma.v())?;
    Ok(GroupElement::new(a, b, c, d).expect("u² acts symplectically"))
}

/// The images of `u²` and `ᵗu²` on `E^σ`:
/// `+−: (u³, ᵗu)` and `−+: (u, ᵗu³)`.
pub fn generator_images(sigma: Sigma) -> (GroupElement, GroupElement) {
    match sigma {
        Sigma::PlusMinus => (GroupElement::u_pow(3), GroupElement::ut_pow(1)),
        Sigma::MinusPlus => (GroupElement::u_pow(1), GroupElement::ut_pow(3)),
    }
}

pub(crate) fn generator_images64(sigma: Sigma) -> [Mat64; 4] {
    let (a, b) = generator_images(sigma);
    crate::matgroup::Alphabet { a, b }.images64()
}

/// `ρ_{E^σ}(w)`, PSL-normalized.
pub fn rho(sigma: Sigma, w: &Word) -> GroupElement {
    let (a, b) = generator_images(sigma);
    crate::matgroup::evaluate(w, &crate::matgroup::Alphabet { a, b })
}

pub fn in_kernel(sigma: Sigma, w: &Word) -> bool {
    rho(sigma, w).is_psl_identity()
}

/// `ρ(w)·f = ±f`.
pub fn in_gamma_bad(sigma: Sigma, w: &Word) -> bool {
    let m = rho(sigma, w);
    fixes_f_up_to_sign(sigma, [m.a(), m.b(), m.c(), m.d()])
}

fn fixes_f_up_to_sign(sigma: Sigma, [a, b, c, d]: [&BigInt; 4]) -> bool {
    let (x, y) = sigma.f_coords();
    // image of (x, y): (a x + b y, c x + d y)
    let (ix, iy) = (a * x + b * y, c * x + d * y);
    let one = BigInt::from(1);
    let minus = BigInt::from(-1);
    match (x, y) {
        (1, 0) => iy.is_zero() && (ix == one || ix == minus),
        _ => ix.is_zero() && (iy == one || iy == minus),
    }
}

/// [`in_kernel`] / [`in_gamma_bad`] on an already evaluated `i64` image.
pub(crate) fn image_is_bad64(sigma: Sigma, m: &Mat64) -> bool {
    match sigma.f_coords() {
        (1, 0) => m.c == 0 && m.a.abs() == 1,
        _ => m.b == 0 && m.d.abs() == 1,
    }
}

/// Which subgroup of Γ₀ to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    Gamma0,
    Kernel(Sigma),
    Bad(Sigma),
}

impl Subgroup {
    pub fn contains_word(&self, w: &Word) -> bool {
        match *self {
            Subgroup::Gamma0 => true,
            Subgroup::Kernel(s) => in_kernel(s, w),
            Subgroup::Bad(s) => in_gamma_bad(s, w),
        }
    }

    pub(crate) fn sigma(&self) -> Option<Sigma> {
        match *self {
            Subgroup::Gamma0 => None,
            Subgroup::Kernel(s) | Subgroup::Bad(s) => Some(s),
        }
    }

    /// Membership from the `ρ`-image of the element.
    pub(crate) fn contains_image64(&self, image: &Mat64) -> bool {
        match *self {
            Subgroup::Gamma0 => true,
            Subgroup::Kernel(_) => image.is_psl_identity(),
            Subgroup::Bad(s) => image_is_bad64(s, image),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Subgroup::Gamma0 => "gamma0".into(),
            Subgroup::Kernel(s) => format!("kernel({s})"),
            Subgroup::Bad(s) => format!("bad({s})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn u2_action_on_basis() {
        let h00 = HomologyClass::basis(h_index(0, 0));
        assert_eq!(u2_action(&h00), h00);
        let v00 = HomologyClass::basis(v_index(0, 0));
        assert_eq!(
            u2_action(&v00),
            v00 + h00 + HomologyClass::basis(c_index(0))
        );
        for k in 0..RANK {
            if !(4..8).contains(&k) {
                assert_eq!(u2_action(&HomologyClass::basis(k)), HomologyClass::basis(k));
            }
        }
    }

    #[test]
    fn u2_action_on_plane_generators() {
        let s = Sigma::PlusMinus;
        let c_pm = 2 * HomologyClass::basis(c_index(0)) - 2 * HomologyClass::basis(c_index(1));
        assert_eq!(u2_action(&s.v()), s.v() + s.h() + c_pm);
        let s = Sigma::MinusPlus;
        assert_eq!(u2_action(&s.v()), s.v() + s.h());
    }

    #[test]
    fn induced_matrices() {
        assert_eq!(
            induced_u2_matrix(Sigma::PlusMinus).unwrap(),
            GroupElement::u_pow(3)
        );
        assert_eq!(
            induced_u2_matrix(Sigma::MinusPlus).unwrap(),
            GroupElement::u_pow(1)
        );
    }

    #[test]
    fn substitution_failure_is_reported() {
        // a class with an unmatched cylinder part cannot be rewritten
        let x = HomologyClass::basis(c_index(0));
        assert!(substitute_cylinders(Sigma::PlusMinus, &x).is_none());
        assert!(substitute_cylinders(Sigma::MinusPlus, &x).is_none());
        let off_plane = HomologyClass::basis(h_index(0, 0));
        assert!(coords_in_plane(Sigma::PlusMinus, &off_plane).is_none());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(Sigma::MinusPlus, &Word::empty()), GroupElement::identity());
        assert_eq!(rho(Sigma::MinusPlus, &w("A")), GroupElement::u_pow(1));
        assert_eq!(rho(Sigma::MinusPlus, &w("B")), GroupElement::ut_pow(3));
        assert!(rho(Sigma::MinusPlus, &w("Ab").pow(3)).is_psl_identity());
    }

    #[test]
    fn kernel_examples() {
        assert!(in_kernel(Sigma::PlusMinus, &Word::empty()));
        assert!(in_kernel(Sigma::MinusPlus, &w("Ab").pow(3)));
        let comm = w("ABab");
        assert!(!in_kernel(Sigma::PlusMinus, &comm));
        assert_eq!(
            rho(Sigma::PlusMinus, &comm),
            GroupElement::from_i64(13, -9, 3, -2)
        );
    }

    #[test]
    fn bad_examples() {
        assert!(in_gamma_bad(Sigma::PlusMinus, &w("A")));
        assert!(!in_gamma_bad(Sigma::PlusMinus, &w("B")));
        assert!(in_gamma_bad(Sigma::MinusPlus, &w("B")));
        assert!(!in_gamma_bad(Sigma::MinusPlus, &w("A")));
        assert!(in_gamma_bad(Sigma::MinusPlus, &w("Ab").pow(3)));
    }

    #[test]
    fn display_class() {
        assert_eq!(Sigma::PlusMinus.h().to_string(), "h00* + h01* - h10* - h11*");
        assert_eq!(HomologyClass::zero().to_string(), "0");
    }
}
