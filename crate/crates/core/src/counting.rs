//! Orbit counting for Γ₀ and its subgroups `ker ρ_σ` and `Γ_bad(σ)`.
//!
//! Two backends:
//!
//! * an exact lattice scan for Γ₀ itself, using that a determinant-one
//!   matrix lies in Γ₀ (up to sign) exactly when it is the identity mod 2;
//! * depth-first enumeration of reduced words in `u^{±2}`, `ᵗu^{±2}`, which
//!   carries the `ρ`-image along and so can filter by subgroup. Word counts are
//!   lower bounds tagged with the depth they were computed at.
//!
//! Along a reduced Γ₀-word the Frobenius norm `a² + b² + c² + d²` strictly
//! increases, so the orbital enumeration prunes at the radius and a count
//! that does not change between depths `d − 2` and `d` is exact.

use std::collections::HashSet;
use std::io::Write;

use num_integer::Integer;
use thiserror::Error;

use crate::homology::{generator_images64, Subgroup};
use crate::hyperbolic::displacement64;
use crate::matgroup::{for_each_reduced_word, Alphabet, Letter, Mat64, MatGroupError};

#[derive(Debug, Error)]
pub enum CountingError {
    #[error("need at least 3 points with count ≥ 2 in the window, found {0}")]
    InsufficientData(usize),
    #[error(transparent)]
    Arithmetic(#[from] MatGroupError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Largest integer Frobenius norm at displacement at most `r`.
pub fn norm_threshold(r: f64) -> i128 {
    // 1e-9 absorbs roundoff in 2cosh(acosh(n/2)) for integer n
    (2.0 * r.cosh() + 1e-9).floor() as i128
}

fn within_length(len_sq: i128, l: f64) -> bool {
    (len_sq as f64) <= l * l * (1.0 + 1e-12)
}

/// Visits every `(a, b, c, d)` in SL(2,ℤ) with `a` odd, `c` even and
/// `a² + b² + c² + d² ≤ max_norm`. Both signs of each PSL class are visited.
fn scan_gamma0<F: FnMut(i64, i64, i64, i64)>(max_norm: i128, mut visit: F) {
    let cap = (max_norm as f64).sqrt() as i64 + 1;
    for a in -cap..=cap {
        if a.is_even() {
            continue;
        }
        for c in (-cap..=cap).filter(|c| c.is_even()) {
            let base = (a as i128).pow(2) + (c as i128).pow(2);
            if base > max_norm {
                continue;
            }
            let eg = a.extended_gcd(&c);
            if eg.gcd != 1 {
                continue;
            }
            // a·x + c·y = 1  ⇒  (b, d) = (−y, x) solves ad − bc = 1
            let (b0, d0) = (-eg.y, eg.x);
            let q = base;
            let lin = (a as i128) * (b0 as i128) + (c as i128) * (d0 as i128);
            // (b, d) = (b0 + k a, d0 + k c); center k ≈ −lin / q
            let k0 = (-(lin as f64) / q as f64).round() as i64;
            let norm_at = |k: i64| {
                let b = b0 as i128 + k as i128 * a as i128;
                let d = d0 as i128 + k as i128 * c as i128;
                base + b * b + d * d
            };
            let mut visit_k = |k: i64| {
                let b = b0 + k * a;
                let d = d0 + k * c;
                if b.is_even() {
                    visit(a, b, c, d);
                }
            };
            let mut k = k0;
            while norm_at(k) <= max_norm {
                visit_k(k);
                k += 1;
            }
            let mut k = k0 - 1;
            while norm_at(k) <= max_norm {
                visit_k(k);
                k -= 1;
            }
        }
    }
}

/// `#{g ∈ Γ₀ (in PSL): d(i, g·i) ≤ r}` by direct lattice scan.
pub fn orbital_exact_gamma0(r: f64) -> u64 {
    let mut n = 0u64;
    scan_gamma0(norm_threshold(r), |_, _, _, _| n += 1);
    n / 2
}

/// The PSL-normalized elements counted by [`orbital_exact_gamma0`], sorted.
pub fn gamma0_elements_within(r: f64) -> Vec<Mat64> {
    let mut out = Vec::new();
    scan_gamma0(norm_threshold(r), |a, b, c, d| {
        let m = Mat64 { a, b, c, d };
        if m.normalized() == m {
            out.push(m);
        }
    });
    out.sort_unstable();
    out
}

/// A word-enumeration count with its depth metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepthCount {
    pub count: u64,
    pub depth: usize,
    /// Same count at `depth − 2`.
    pub saturated: bool,
}

/// Distinct PSL elements of the subgroup, of word length at most `depth` in
/// Γ₀, with displacement at most `r`.
pub fn orbital_bfs(subgroup: Subgroup, r: f64, depth: usize) -> Result<DepthCount, CountingError> {
    let mut found: HashSet<Mat64> = HashSet::new();
    let mut at_len = vec![0u64; depth + 1];
    walk_members(subgroup, depth, Some(norm_threshold(r)), |letters, m| {
        if found.insert(m.normalized()) {
            at_len[letters.len()] += 1;
        }
    })?;
    let count: u64 = at_len.iter().sum();
    let shallow: u64 = at_len[..=depth.saturating_sub(2)].iter().sum();
    Ok(DepthCount {
        count,
        depth,
        saturated: depth >= 2 && shallow == count,
    })
}

/// Calls `visit(letters, g)` on every reduced Γ₀-word of length at most
/// `depth` whose element lies in `subgroup`, carrying `ρ(g)` along the path.
/// With `max_norm` set, subtrees whose root exceeds it are skipped.
fn walk_members<F: FnMut(&[Letter], &Mat64)>(
    subgroup: Subgroup,
    depth: usize,
    max_norm: Option<i128>,
    mut visit: F,
) -> Result<(), CountingError> {
    let gens = Alphabet::gamma0().images64();
    let rho_gens = subgroup.sigma().map(generator_images64);
    // ρ-images of the prefixes of the current word
    let mut rho_stack: Vec<Mat64> = vec![Mat64::IDENTITY];
    let mut overflow = None;
    for_each_reduced_word(&gens, depth, |letters, m| {
        if max_norm.is_some_and(|n| m.norm_sq() > n) {
            return false;
        }
        let image = match (&rho_gens, letters.last()) {
            (Some(imgs), Some(l)) => {
                rho_stack.truncate(letters.len());
                match rho_stack[letters.len() - 1].try_mul(&imgs[l.index()]) {
                    Ok(x) => {
                        rho_stack.push(x);
                        x
                    }
                    Err(e) => {
                        overflow = Some(e);
                        return false;
                    }
                }
            }
            _ => Mat64::IDENTITY,
        };
        if subgroup.contains_image64(&image) {
            visit(letters, m);
        }
        true
    })?;
    match overflow {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn sign_class(a: i64, c: i64) -> (i64, i64) {
    if c > 0 || (c == 0 && a > 0) {
        (a, c)
    } else {
        (-a, -c)
    }
}

/// Distinct holonomy vectors `g·(1,0)ᵀ = (a, c)ᵀ` with `|(a, c)| ≤ l`, over
/// subgroup elements of word length at most `depth`, counted up to sign.
pub fn cylinder_count(subgroup: Subgroup, l: f64, depth: usize) -> Result<u64, CountingError> {
    cylinder_count_with(subgroup, l, depth, true)
}

/// As [`cylinder_count`]; with `dedup = false` the two signs `±(a, c)` are
/// counted as different vectors.
pub fn cylinder_count_with(
    subgroup: Subgroup,
    l: f64,
    depth: usize,
    dedup: bool,
) -> Result<u64, CountingError> {
    Ok(cylinder_vectors(subgroup, l, depth, dedup)?.len() as u64)
}

fn cylinder_vectors(
    subgroup: Subgroup,
    l: f64,
    depth: usize,
    dedup: bool,
) -> Result<HashSet<(i64, i64)>, CountingError> {
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    walk_members(subgroup, depth, None, |_, m| {
        let len_sq = (m.a as i128).pow(2) + (m.c as i128).pow(2);
        if within_length(len_sq, l) {
            if dedup {
                seen.insert(sign_class(m.a, m.c));
            } else {
                seen.insert((m.a, m.c));
                seen.insert((-m.a, -m.c));
            }
        }
    })?;
    Ok(seen)
}

/// Lattice-scan count of primitive `(a, c)` with `a` odd, `c` even and
/// `a² + c² ≤ l²`, up to sign: the full Γ₀-orbit of `(1, 0)ᵀ`.
pub fn primitive_odd_even_count(l: f64) -> u64 {
    let cap = l.floor() as i64 + 1;
    let mut n = 0u64;
    for a in -cap..=cap {
        for c in -cap..=cap {
            if a.is_odd() && c.is_even() && a.gcd(&c) == 1 {
                let len_sq = (a as i128).pow(2) + (c as i128).pow(2);
                if within_length(len_sq, l) {
                    n += 1;
                }
            }
        }
    }
    n / 2
}

/// Whether a series counts orbit points by displacement or holonomy vectors
/// by length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Threshold is a hyperbolic radius `R`; growth `~ e^{δR}`.
    Orbital,
    /// Threshold is a length `L`; growth `~ L^{2δ}`.
    Cylinder,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountPoint {
    pub threshold: f64,
    pub count: u64,
    pub exact: bool,
    /// Enumeration depth for inexact points.
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountSeries {
    pub kind: SeriesKind,
    pub points: Vec<CountPoint>,
}

impl CountSeries {
    pub fn orbital_exact_gamma0(thresholds: &[f64]) -> Self {
        Self {
            kind: SeriesKind::Orbital,
            points: thresholds
                .iter()
                .map(|&r| CountPoint {
                    threshold: r,
                    count: orbital_exact_gamma0(r),
                    exact: true,
                    depth: None,
                })
                .collect(),
        }
    }

    pub fn orbital_bfs(subgroup: Subgroup, thresholds: &[f64], depth: usize) -> Result<Self, CountingError> {
        let points = thresholds
            .iter()
            .map(|&r| {
                orbital_bfs(subgroup, r, depth).map(|c| CountPoint {
                    threshold: r,
                    count: c.count,
                    exact: c.saturated,
                    depth: Some(depth),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            kind: SeriesKind::Orbital,
            points,
        })
    }

    pub fn cylinders(subgroup: Subgroup, lengths: &[f64], depth: usize) -> Result<Self, CountingError> {
        let points = lengths
            .iter()
            .map(|&l| {
                cylinder_count(subgroup, l, depth).map(|n| CountPoint {
                    threshold: l,
                    count: n,
                    exact: false,
                    depth: Some(depth),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            kind: SeriesKind::Cylinder,
            points,
        })
    }

    /// CSV with columns `threshold,count,exact_flag,depth`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CountingError> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["threshold", "count", "exact_flag", "depth"])?;
        for p in &self.points {
            wtr.write_record([
                p.threshold.to_string(),
                p.count.to_string(),
                p.exact.to_string(),
                p.depth.map(|d| d.to_string()).unwrap_or_default(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Least-squares growth exponent over the points with threshold in `window`:
/// slope of `ln N` against `R` (orbital) or against `2 ln L` (cylinder).
pub fn empirical_exponent(series: &CountSeries, window: (f64, f64)) -> Result<f64, CountingError> {
    let pts: Vec<(f64, f64)> = series
        .points
        .iter()
        .filter(|p| p.threshold >= window.0 && p.threshold <= window.1 && p.count >= 2)
        .map(|p| {
            let x = match series.kind {
                SeriesKind::Orbital => p.threshold,
                SeriesKind::Cylinder => 2.0 * p.threshold.ln(),
            };
            (x, (p.count as f64).ln())
        })
        .collect();
    if pts.len() < 3 {
        return Err(CountingError::InsufficientData(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(CountingError::InsufficientData(1));
    }
    Ok(sxy / sxx)
}

/// Allowed drift of the fitted constant between depths `d − 2` and `d`.
pub const CONSTANT_STABILITY_TOL: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub subgroup: Subgroup,
    pub depth: usize,
    pub lengths: Vec<f64>,
    /// `N(L)` per length.
    pub cylinder_counts: Vec<u64>,
    /// Smallest `c` with `N(L) ≤ n(2 ln L + c)` for all sampled `L` at `depth`.
    pub constant: f64,
    /// The same at `depth − 2`.
    pub constant_shallow: f64,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.constant.is_finite()
            && self.constant_shallow.is_finite()
            && (self.constant - self.constant_shallow).abs() <= CONSTANT_STABILITY_TOL
    }
}

fn fitted_constant(subgroup: Subgroup, lengths: &[f64], depth: usize) -> Result<(f64, Vec<u64>), CountingError> {
    let mut displacements: Vec<f64> = Vec::new();
    let mut elements: HashSet<Mat64> = HashSet::new();
    let mut vectors: HashSet<(i64, i64)> = HashSet::new();
    walk_members(subgroup, depth, None, |_, m| {
        if elements.insert(m.normalized()) {
            displacements.push(displacement64(m));
            vectors.insert(sign_class(m.a, m.c));
        }
    })?;
    displacements.sort_by(f64::total_cmp);
    let mut len_sq: Vec<i128> = vectors.iter().map(|&(a, c)| (a as i128).pow(2) + (c as i128).pow(2)).collect();
    len_sq.sort_unstable();
    let mut counts = Vec::with_capacity(lengths.len());
    let mut constant = f64::NEG_INFINITY;
    for &l in lengths {
        let n_l = len_sq.partition_point(|&q| within_length(q, l)) as u64;
        counts.push(n_l);
        // smallest radius R with n(R) ≥ N(L)
        let needed = match n_l {
            0 => 0.0,
            k => displacements.get(k as usize - 1).copied().unwrap_or(f64::INFINITY),
        };
        constant = constant.max(needed - 2.0 * l.ln());
    }
    Ok((constant, counts))
}

/// Fits the constant in `N(L) ≤ n(2 ln L + c)` over `lengths`, with both sides
/// enumerated at the same depth, and compares against depth `depth − 2`.
pub fn counting_inequality_check(
    subgroup: Subgroup,
    lengths: &[f64],
    depth: usize,
) -> Result<InequalityReport, CountingError> {
    let (constant, cylinder_counts) = fitted_constant(subgroup, lengths, depth)?;
    let (constant_shallow, _) = fitted_constant(subgroup, lengths, depth.saturating_sub(2))?;
    Ok(InequalityReport {
        subgroup,
        depth,
        lengths: lengths.to_vec(),
        cylinder_counts,
        constant,
        constant_shallow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Sigma;

    #[test]
    fn exact_small_radii() {
        assert_eq!(orbital_exact_gamma0(0.0), 1);
        assert_eq!(orbital_exact_gamma0(1.7), 1);
        assert_eq!(orbital_exact_gamma0(3f64.acosh()), 5);
    }

    #[test]
    fn exact_matches_brute_force() {
        // brute force over a box of entries
        let r = 3.0;
        let max = norm_threshold(r) as i64;
        let cap = (max as f64).sqrt() as i64;
        let mut n = 0;
        for a in -cap..=cap {
            for b in -cap..=cap {
                for c in -cap..=cap {
                    for d in -cap..=cap {
                        if a * d - b * c == 1
                            && a * a + b * b + c * c + d * d <= max
                            && a.is_odd()
                            && b.is_even()
                            && c.is_even()
                        {
                            n += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(orbital_exact_gamma0(r), n / 2);
    }

    #[test]
    fn bfs_small() {
        let c = orbital_bfs(Subgroup::Gamma0, 3f64.acosh(), 4).unwrap();
        assert_eq!(c.count, 5);
        assert!(c.saturated);
    }

    #[test]
    fn bfs_nesting() {
        for r in [4.0, 6.0, 7.5] {
            for s in Sigma::BOTH {
                let k = orbital_bfs(Subgroup::Kernel(s), r, 10).unwrap().count;
                let b = orbital_bfs(Subgroup::Bad(s), r, 10).unwrap().count;
                let g = orbital_bfs(Subgroup::Gamma0, r, 10).unwrap().count;
                assert!(k <= b && b <= g, "{r} {s}: {k} {b} {g}");
            }
        }
    }

    #[test]
    fn cylinder_examples() {
        for depth in [0, 3, 6] {
            assert_eq!(cylinder_count(Subgroup::Gamma0, 1.0, depth).unwrap(), 1);
        }
        assert_eq!(cylinder_count(Subgroup::Gamma0, 2.5, 6).unwrap(), 3);
        assert_eq!(primitive_odd_even_count(2.5), 3);
        assert_eq!(cylinder_count_with(Subgroup::Gamma0, 2.5, 6, false).unwrap(), 6);
    }

    #[test]
    fn exponent_of_synthetic_series() {
        let points = (0..=10)
            .map(|i| {
                let r = 20.0 + i as f64;
                CountPoint {
                    threshold: r,
                    count: (0.9 * r).exp().round() as u64,
                    exact: true,
                    depth: None,
                }
            })
            .collect();
        let s = CountSeries {
            kind: SeriesKind::Orbital,
            points,
        };
        assert!((empirical_exponent(&s, (20.0, 30.0)).unwrap() - 0.9).abs() < 1e-6);
        assert!(matches!(
            empirical_exponent(&s, (20.0, 21.0)),
            Err(CountingError::InsufficientData(2))
        ));
    }

    #[test]
    fn csv_series() {
        let s = CountSeries::orbital_exact_gamma0(&[0.0, 3f64.acosh()]);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("threshold,count,exact_flag,depth"));
        assert_eq!(lines.next(), Some("0,1,true,"));
    }
}
