//! Combinatorial and analytic bounds for the growth of bad cylinders on the
//! (1/2, 1/2) wind-tree table.
//!
//! The crate works with the Veech group `Γ₀ = ⟨u², ᵗu²⟩ ⊂ PSL(2,ℤ)` and the
//! two subgroups cut out by its action on homology. It provides
//!
//! * exact group arithmetic and the word problem for Γ₀ ([`matgroup`]);
//! * upper half-plane geometry ([`hyperbolic`]);
//! * the homology representations `ρ_σ` and subgroup membership ([`homology`]);
//! * brute-force Cayley-graph audits of the cone types of `⟨u, ᵗu³⟩` ([`cayley`]);
//! * the Gabber–Galil bound on the combinatorial spectrum ([`gg_bound`]);
//! * the transition-zone energy bound ([`energy`]);
//! * orbit and cylinder counting ([`counting`]);
//! * exact quadratic-field arithmetic and the Veech criterion ([`quadratic`]);
//! * the assembled bound on the critical exponent ([`pipeline`]).
//!
//! ```
//! use windtree::pipeline::{full_pipeline, PipelineConfig};
//!
//! let report = full_pipeline(&PipelineConfig::published_constants()).unwrap();
//! assert!(report.delta < 0.9885);
//! ```

pub mod cayley;
pub mod counting;
pub mod energy;
pub mod gg_bound;
pub mod homology;
pub mod hyperbolic;
pub mod matgroup;
pub mod pipeline;
pub mod quadratic;

// The guide's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/cone_types.md")]
    mod cone_types {}
    #[doc = include_str!("../../../book/src/gabber_galil.md")]
    mod gabber_galil {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/veech.md")]
    mod veech {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
