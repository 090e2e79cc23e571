//! Assembly of the spectral bound `λ₀ ≥ η E μ / (η + E μ)` and the critical
//! exponent `δ = (1 + √(1 − 4λ₀)) / 2`.

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{verify_cone_types, CayleyError};
use crate::energy::{maximize_energy, EnergyConfig};
use crate::gg_bound::{gg_lower_bound, optimize, GgError};

/// Spectral gap of Γ₀ used in the assembly.
pub const ETA0: f64 = 0.25;
/// Published energy lower bound.
pub const PUBLISHED_ENERGY: f64 = 0.02575;
/// Published combinatorial lower bound.
pub const PUBLISHED_MU0: f64 = 0.4647;
/// Radius of the ball from which the type automaton is read off.
pub const CONE_RADIUS: usize = 10;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("all inputs must be positive, got η = {eta0}, E = {energy}, μ = {mu0}")]
    NonPositiveInput { eta0: f64, energy: f64, mu0: f64 },
    #[error("λ₀ = {0} is outside (0, 1/4]")]
    OutOfDomain(f64),
    #[error("cone-type verification failed: {0}")]
    ConeTypes(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Gg(#[from] GgError),
}

/// `η E μ / (η + E μ)`.
pub fn rt_lambda0(eta0: f64, energy: f64, mu0: f64) -> Result<f64, PipelineError> {
    if !(eta0 > 0.0 && energy > 0.0 && mu0 > 0.0) {
        return Err(PipelineError::NonPositiveInput { eta0, energy, mu0 });
    }
    let em = energy * mu0;
    Ok(eta0 * em / (eta0 + em))
}

/// The larger root of `δ(1 − δ) = λ₀`.
pub fn delta_from_lambda0(l0: f64) -> Result<f64, PipelineError> {
    if !(l0 > 0.0 && l0 <= 0.25) {
        return Err(PipelineError::OutOfDomain(l0));
    }
    Ok((1.0 + (1.0 - 4.0 * l0).sqrt()) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Configured,
    #[serde(rename = "paper-constant")]
    PublishedConstant,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Source {
    /// Compute from the module.
    Compute,
    /// Use the published value.
    Published,
    /// Use a caller-supplied value.
    Value(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub eta0: f64,
    pub energy: Source,
    pub mu0: Source,
    /// Spectral gap inside the energy estimate.
    pub energy_eta: f64,
    pub tol: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            eta0: ETA0,
            energy: Source::Compute,
            mu0: Source::Compute,
            energy_eta: 0.5,
            tol: 1e-10,
        }
    }
}

impl PipelineConfig {
    pub fn published_constants() -> Self {
        Self {
            energy: Source::Published,
            mu0: Source::Published,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProvenanceTags {
    pub eta0: Provenance,
    #[serde(rename = "E")]
    pub energy: Provenance,
    pub mu0: Provenance,
    pub lambda0: Provenance,
    pub delta: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub eta0: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub mu0: f64,
    pub lambda0: f64,
    pub delta: f64,
    pub provenance: ProvenanceTags,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn computed_energy(cfg: &PipelineConfig) -> f64 {
    let ecfg = EnergyConfig {
        eta: cfg.energy_eta,
        ..EnergyConfig::default()
    };
    maximize_energy(&ecfg, cfg.tol).energy
}

fn computed_mu0(cfg: &PipelineConfig) -> Result<f64, PipelineError> {
    let report = verify_cone_types(CONE_RADIUS)?;
    let aut = report
        .automaton()
        .ok_or_else(|| PipelineError::ConeTypes(report.counterexample.clone().unwrap_or_default()))?;
    let opt = optimize(&aut, cfg.tol.max(1e-12))?;
    Ok(gg_lower_bound(&aut, &opt.valuation)?)
}

fn resolve<F: FnOnce() -> Result<f64, PipelineError>>(
    src: Source,
    published: f64,
    compute: F,
) -> Result<(f64, Provenance), PipelineError> {
    Ok(match src {
        Source::Compute => (compute()?, Provenance::Computed),
        Source::Published => (published, Provenance::PublishedConstant),
        Source::Value(v) => (v, Provenance::Configured),
    })
}

pub fn full_pipeline(cfg: &PipelineConfig) -> Result<BoundReport, PipelineError> {
    let (energy, energy_src) = resolve(cfg.energy, PUBLISHED_ENERGY, || Ok(computed_energy(cfg)))?;
    let (mu0, mu0_src) = resolve(cfg.mu0, PUBLISHED_MU0, || computed_mu0(cfg))?;
    let lambda0 = rt_lambda0(cfg.eta0, energy, mu0)?;
    let delta = delta_from_lambda0(lambda0)?;
    Ok(BoundReport {
        eta0: cfg.eta0,
        energy,
        mu0,
        lambda0,
        delta,
        provenance: ProvenanceTags {
            eta0: Provenance::Configured,
            energy: energy_src,
            mu0: mu0_src,
            lambda0: Provenance::Computed,
            delta: Provenance::Computed,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        let l = rt_lambda0(0.25, 0.02575, 0.4647).unwrap();
        assert!((l - 0.0114194).abs() < 1e-6 && l > 0.01141);
        assert!((rt_lambda0(1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((rt_lambda0(0.3, 1e3, 1e3).unwrap() - 0.3).abs() < 1e-5);
        assert!(matches!(
            rt_lambda0(0.0, 1.0, 1.0),
            Err(PipelineError::NonPositiveInput { .. })
        ));
    }

    #[test]
    fn delta_examples() {
        let d = delta_from_lambda0(0.011419).unwrap();
        assert!((d - 0.988447).abs() < 1e-6 && d < 0.9885);
        assert_eq!(delta_from_lambda0(0.25).unwrap(), 0.5);
        assert!((delta_from_lambda0(0.24).unwrap() - 0.6).abs() < 1e-12);
        assert!(matches!(delta_from_lambda0(0.3), Err(PipelineError::OutOfDomain(_))));
        assert!(matches!(delta_from_lambda0(0.0), Err(PipelineError::OutOfDomain(_))));
    }

    #[test]
    fn default_run() {
        let r = full_pipeline(&PipelineConfig::default()).unwrap();
        assert!(r.delta > 0.9884 && r.delta < 0.9885, "{}", r.delta);
        assert_eq!(r.provenance.energy, Provenance::Computed);
        assert_eq!(r.provenance.mu0, Provenance::Computed);
    }

    #[test]
    fn published_constants_run() {
        let r = full_pipeline(&PipelineConfig::published_constants()).unwrap();
        assert!((r.lambda0 - 0.011419).abs() < 1e-5);
        assert_eq!(r.provenance.mu0, Provenance::PublishedConstant);
    }

    #[test]
    fn larger_mu_gives_smaller_delta() {
        let certified = full_pipeline(&PipelineConfig::published_constants()).unwrap();
        let cfg = PipelineConfig {
            mu0: Source::Value(0.5359),
            ..PipelineConfig::published_constants()
        };
        let r = full_pipeline(&cfg).unwrap();
        // direct evaluation of the closed form
        assert!((r.delta - 0.986747).abs() < 1e-5, "{}", r.delta);
        assert!(r.delta < certified.delta);
        assert_eq!(r.provenance.mu0, Provenance::Configured);
    }

    #[test]
    fn json_shape() {
        let r = full_pipeline(&PipelineConfig::published_constants()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in ["eta0", "E", "mu0", "lambda0", "delta"] {
            assert!(v[k].is_f64(), "{k}");
        }
        assert_eq!(v["provenance"]["mu0"], "paper-constant");
    }
}
