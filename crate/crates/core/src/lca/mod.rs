//! Spectral and tiling pairs of measures on finite abelian groups.
//!
//! Haar measure on `G` is counting measure and the dual Haar measure on `Γ`
//! is `(1/|G|)·counting`. `G` is identified with its dual through
//! `⟨x, ξ⟩ = exp(2πi·Σ x_j ξ_j / n_j)`.

mod fourier;
mod group;
mod measure;
mod uncertainty;

pub use fourier::{
    fourier_transform, gram_matrix, inverse_fourier, is_spectral_pair_measures, FourierOperator,
    TranslationUnitary, SPECTRAL_TOLERANCE,
};
pub use group::{pairing, FiniteGroup, MAX_EXPONENT, MAX_GROUP_ORDER};
pub use measure::{is_tiling_pair_measures, reflect_measure, Measure};
pub use uncertainty::{uncertainty_report, UncertaintyReport, UNCERTAINTY_SLACK};
