//! Lower bounds for the bottom of the combinatorial spectrum from a
//! compatible type function (Gabber–Galil / Nagnibeda).
//!
//! For a valuation `c > 0` on the types, each type `k` gets the load
//! `f_k(c) = Σ_{successors t} c_t + #predecessors / c_k`, and
//! `μ₀ ≥ #S − max_k f_k(c)` holds for every such `c`. Optimizing `c` only
//! tightens the bound; the bound is always re-evaluated at the returned point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GgError {
    #[error("valuation entry {index} is {value}, must be positive and finite")]
    NonPositiveValuation { index: usize, value: f64 },
    #[error("valuation has {got} entries, automaton has {expected} non-root types")]
    ValuationLength { got: usize, expected: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("no start improved on its seed; best grid value {value}")]
    OptimizerDivergence { best: Valuation, value: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

/// One row of the automaton: the multiset of successor types and the number
/// of predecessors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    pub successors: Vec<usize>,
    pub predecessors: usize,
}

/// Finite type automaton over a symmetric generating set of size
/// `generator_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAutomaton {
    pub generator_count: usize,
    #[serde(default)]
    pub root: Option<usize>,
    pub types: Vec<TypeRow>,
}

impl TypeAutomaton {
    pub fn new(
        generator_count: usize,
        root: Option<usize>,
        types: Vec<TypeRow>,
    ) -> Result<Self, GgError> {
        let aut = Self {
            generator_count,
            root,
            types,
        };
        aut.validate()?;
        Ok(aut)
    }

    pub fn validate(&self) -> Result<(), GgError> {
        let bad = |m: String| Err(GgError::InvalidAutomaton(m));
        if self.types.is_empty() {
            return bad("no types".into());
        }
        if let Some(r) = self.root {
            if r >= self.types.len() {
                return bad(format!("root {r} out of range"));
            }
            if self.types[r].predecessors != 0 {
                return bad("root type has predecessors".into());
            }
        }
        for (k, row) in self.types.iter().enumerate() {
            if row.successors.len() + row.predecessors != self.generator_count {
                return bad(format!(
                    "type {k}: {} successors + {} predecessors != {}",
                    row.successors.len(),
                    row.predecessors,
                    self.generator_count
                ));
            }
            for &t in &row.successors {
                if t >= self.types.len() {
                    return bad(format!("type {k}: successor type {t} out of range"));
                }
                if Some(t) == self.root {
                    return bad(format!("type {k}: root listed as successor"));
                }
            }
        }
        Ok(())
    }

    /// Types 0..3 with `0 → {1,1,1,1}`, `1 → {1,1,2}`, `2 → {1,1,3}`, `3 → {1,1}`.
    pub fn windtree() -> Self {
        let row = |successors: Vec<usize>, predecessors| TypeRow {
            successors,
            predecessors,
        };
        Self::new(
            4,
            Some(0),
            vec![
                row(vec![1, 1, 1, 1], 0),
                row(vec![1, 1, 2], 1),
                row(vec![1, 1, 3], 1),
                row(vec![1, 1], 2),
            ],
        )
        .expect("built-in automaton is valid")
    }

    /// Single non-root type of the `k`-regular tree: `k − 1` successors, one predecessor.
    pub fn regular_tree(k: usize) -> Self {
        Self::new(
            k,
            None,
            vec![TypeRow {
                successors: vec![0; k - 1],
                predecessors: 1,
            }],
        )
        .expect("k ≥ 1")
    }

    pub fn from_json(s: &str) -> Result<Self, GgError> {
        let aut: Self =
            serde_json::from_str(s).map_err(|e| GgError::InvalidAutomaton(e.to_string()))?;
        aut.validate()?;
        Ok(aut)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Indices of types that carry a valuation entry, in order.
    pub fn valued_types(&self) -> Vec<usize> {
        (0..self.types.len()).filter(|&k| Some(k) != self.root).collect()
    }

    pub fn dim(&self) -> usize {
        self.types.len() - usize::from(self.root.is_some())
    }
}

/// Positive weights, one per non-root type in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Valuation(pub Vec<f64>);

impl Valuation {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

fn full_weights(aut: &TypeAutomaton, c: &Valuation) -> Result<Vec<f64>, GgError> {
    if c.0.len() != aut.dim() {
        return Err(GgError::ValuationLength {
            got: c.0.len(),
            expected: aut.dim(),
        });
    }
    if let Some((index, &value)) = c
        .0
        .iter()
        .enumerate()
        .find(|(_, &v)| !(v > 0.0 && v.is_finite()))
    {
        return Err(GgError::NonPositiveValuation { index, value });
    }
    // root weight is never read: nothing points at the root and it has no predecessors
    let mut full = vec![1.0; aut.types.len()];
    for (k, &v) in aut.valued_types().iter().zip(&c.0) {
        full[*k] = v;
    }
    Ok(full)
}

/// `f_k(c)` for every type `k`.
pub fn f_values(aut: &TypeAutomaton, c: &Valuation) -> Result<Vec<f64>, GgError> {
    let w = full_weights(aut, c)?;
    Ok(aut
        .types
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let up: f64 = row.successors.iter().map(|&t| w[t]).sum();
            let down = if row.predecessors == 0 {
                0.0
            } else {
                row.predecessors as f64 / w[k]
            };
            up + down
        })
        .collect())
}

pub fn max_load(aut: &TypeAutomaton, c: &Valuation) -> Result<f64, GgError> {
    Ok(f_values(aut, c)?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `#S − max_k f_k(c)`; a valid lower bound for any positive `c`.
pub fn gg_lower_bound(aut: &TypeAutomaton, c: &Valuation) -> Result<f64, GgError> {
    Ok(aut.generator_count as f64 - max_load(aut, c)?)
}

/// `k − 2√(k−1)`, the bottom of the spectrum of the `k`-regular tree.
pub fn upper_bound(generator_count: usize) -> f64 {
    let k = generator_count as f64;
    k - 2.0 * (k - 1.0).sqrt()
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub valuation: Valuation,
    /// `max_k f_k` at `valuation`.
    pub value: f64,
    /// `#S − value`.
    pub bound: f64,
    pub starts: usize,
}

const GRID_LO: f64 = 0.05;
const GRID_HI: f64 = 20.0;

fn grid_points_per_axis(dim: usize) -> usize {
    match dim {
        0 | 1 => 25,
        2 => 9,
        3 => 5,
        _ => 3,
    }
}

/// Minimizes `max_k f_k(c)` by multi-start Nelder–Mead in `log c`, seeded on
/// a logarithmic grid in `(0.05, 20)^dim`. Deterministic: the best run wins,
/// ties broken by lexicographic `c`.
pub fn optimize(aut: &TypeAutomaton, tol: f64) -> Result<OptimizeResult, GgError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(GgError::BadTolerance(tol));
    }
    aut.validate()?;
    let dim = aut.dim();
    let objective = |x: &[f64]| -> f64 {
        let c = Valuation(x.iter().map(|v| v.exp()).collect());
        max_load(aut, &c).unwrap_or(f64::INFINITY)
    };
    if dim == 0 {
        let c = Valuation(vec![]);
        let value = max_load(aut, &c)?;
        return Ok(OptimizeResult {
            bound: aut.generator_count as f64 - value,
            valuation: c,
            value,
            starts: 1,
        });
    }

    let n = grid_points_per_axis(dim);
    let axis: Vec<f64> = (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            GRID_LO.ln() + t * (GRID_HI.ln() - GRID_LO.ln())
        })
        .collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut best_seed: Option<(f64, Vec<f64>)> = None;
    let mut improved_any = false;
    let total = n.pow(dim as u32);
    for idx in 0..total {
        let mut rem = idx;
        let seed: Vec<f64> = (0..dim)
            .map(|_| {
                let v = axis[rem % n];
                rem /= n;
                v
            })
            .collect();
        let seed_val = objective(&seed);
        if better(seed_val, &seed, &best_seed) {
            best_seed = Some((seed_val, seed.clone()));
        }
        let (x, fx) = polish(&objective, &seed, tol);
        if fx < seed_val {
            improved_any = true;
        }
        if better(fx, &x, &best) {
            best = Some((fx, x));
        }
    }
    let to_val = |x: &[f64]| Valuation(x.iter().map(|v| v.exp()).collect());
    if !improved_any {
        let (value, x) = best_seed.expect("at least one start");
        return Err(GgError::OptimizerDivergence {
            best: to_val(&x),
            value,
        });
    }
    let (_, x) = best.expect("at least one start");
    let valuation = to_val(&x);
    let value = max_load(aut, &valuation)?;
    Ok(OptimizeResult {
        bound: aut.generator_count as f64 - value,
        valuation,
        value,
        starts: total,
    })
}

fn better(f: f64, x: &[f64], incumbent: &Option<(f64, Vec<f64>)>) -> bool {
    match incumbent {
        None => true,
        Some((bf, bx)) => {
            f < *bf
                || (f == *bf
                    && x.partial_cmp(bx.as_slice()) == Some(std::cmp::Ordering::Less))
        }
    }
}

/// Nelder–Mead with restarts from the incumbent until a restart no longer
/// improves by more than `tol`.
fn polish<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], tol: f64) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut fx = f(&x);
    let mut step = 0.5;
    for _ in 0..20 {
        let (nx, nfx) = nelder_mead(f, &x, step, tol * 1e-3, 4000);
        let gain = fx - nfx;
        if nfx < fx {
            x = nx;
            fx = nfx;
        }
        if gain <= tol * 1e-3 && step < 1e-3 {
            break;
        }
        step = (step * 0.2).max(1e-6);
    }
    (x, fx)
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½).
pub(crate) fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    start: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        let fp = f(&p);
        simplex.push((p, fp));
    }
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[n].1);
        let spread = simplex
            .iter()
            .flat_map(|(p, _)| p.iter().zip(&simplex[0].0).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        if hi - lo <= ftol && spread <= 1e-12_f64.max(ftol) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(p, _)| p[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].0.clone();
        let xr = lerp(&centroid, &worst, -1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = lerp(&centroid, &worst, -2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = lerp(&centroid, &xr, 0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = lerp(&centroid, &worst, 0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let p = lerp(&best, &item.0, 0.5);
                    let fp = f(&p);
                    *item = (p, fp);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn f_values_unit_valuation() {
        let f = f_values(&TypeAutomaton::windtree(), &Valuation(vec![1.0; 3])).unwrap();
        assert_eq!(f, vec![4.0; 4]);
    }

    #[test]
    fn f_values_closed_forms() {
        let (c1, c2, c3) = (0.7, 1.3, 0.45);
        let f = f_values(&TypeAutomaton::windtree(), &Valuation(vec![c1, c2, c3])).unwrap();
        let expected = [
            4.0 * c1,
            2.0 * c1 + c2 + 1.0 / c1,
            2.0 * c1 + c3 + 1.0 / c2,
            2.0 * c1 + 2.0 / c3,
        ];
        for (a, b) in f.iter().zip(expected) {
            assert!(close(*a, b, 1e-14));
        }
    }

    #[test]
    fn f_values_at_reported_optimum() {
        let f = f_values(
            &TypeAutomaton::windtree(),
            &Valuation(vec![0.5680, 0.6387, 0.8336]),
        )
        .unwrap();
        for (k, fk) in f.iter().enumerate().skip(1) {
            assert!(close(*fk, 3.5353, 2e-4), "f_{k} = {fk}");
        }
        assert!(close(f[0], 2.272, 1e-9));
    }

    #[test]
    fn single_type_automaton() {
        let aut = TypeAutomaton::regular_tree(2);
        assert_eq!(f_values(&aut, &Valuation(vec![1.0])).unwrap(), vec![2.0]);
        assert_eq!(gg_lower_bound(&aut, &Valuation(vec![1.0])).unwrap(), 0.0);
    }

    #[test]
    fn lower_bound_examples() {
        let aut = TypeAutomaton::windtree();
        assert_eq!(gg_lower_bound(&aut, &Valuation(vec![1.0; 3])).unwrap(), 0.0);
        let b = gg_lower_bound(&aut, &Valuation(vec![0.5680, 0.6387, 0.8336])).unwrap();
        assert!(close(b, 0.4647, 2e-4), "{b}");
    }

    #[test]
    fn rejects_bad_valuations() {
        let aut = TypeAutomaton::windtree();
        assert!(matches!(
            f_values(&aut, &Valuation(vec![1.0, 0.0, 1.0])),
            Err(GgError::NonPositiveValuation { index: 1, .. })
        ));
        assert!(matches!(
            gg_lower_bound(&aut, &Valuation(vec![1.0, -2.0, 1.0])),
            Err(GgError::NonPositiveValuation { .. })
        ));
        assert!(matches!(
            f_values(&aut, &Valuation(vec![1.0])),
            Err(GgError::ValuationLength { .. })
        ));
    }

    #[test]
    fn upper_bound_examples() {
        assert!(close(upper_bound(4), 0.5359, 1e-4));
        assert_eq!(upper_bound(2), 0.0);
        assert_eq!(upper_bound(5), 1.0);
    }

    #[test]
    fn optimize_regular_trees() {
        for k in 2..=6 {
            let r = optimize(&TypeAutomaton::regular_tree(k), 1e-9).unwrap();
            let km1 = (k - 1) as f64;
            assert!(close(r.valuation.0[0], 1.0 / km1.sqrt(), 1e-5), "k={k}");
            assert!(close(r.value, 2.0 * km1.sqrt(), 1e-9));
            assert!(close(r.bound, upper_bound(k), 1e-9));
        }
    }

    #[test]
    fn optimize_windtree() {
        let r = optimize(&TypeAutomaton::windtree(), 1e-6).unwrap();
        assert!(close(r.value, 3.5353, 1e-3), "{}", r.value);
        for (got, want) in r.valuation.0.iter().zip([0.5680, 0.6387, 0.8336]) {
            assert!(close(*got, want, 5e-3), "{got} vs {want}");
        }
        assert!(r.bound > 0.4647 && r.bound < upper_bound(4));
    }

    #[test]
    fn invalid_automata() {
        let bad = TypeAutomaton::new(
            4,
            Some(0),
            vec![TypeRow {
                successors: vec![0, 0],
                predecessors: 0,
            }],
        );
        assert!(bad.is_err());
        let json = r#"{"generator_count": 4, "root": 0, "types": [{"successors": [1,1,1,1], "predecessors": 0}, {"successors": [1,1,1], "predecessors": 1}]}"#;
        let aut = TypeAutomaton::from_json(json).unwrap();
        assert_eq!(aut.dim(), 1);
        assert!(TypeAutomaton::from_json(r#"{"generator_count": 3, "types": []}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let aut = TypeAutomaton::windtree();
        assert_eq!(TypeAutomaton::from_json(&aut.to_json()).unwrap(), aut);
    }

    #[test]
    fn optimize_rejects_bad_tolerance() {
        assert!(matches!(
            optimize(&TypeAutomaton::windtree(), 0.0),
            Err(GgError::BadTolerance(_))
        ));
    }
}
