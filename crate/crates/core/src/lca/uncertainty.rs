use num_complex::Complex64;
use serde::Serialize;

use super::fourier::{fourier_transform, is_spectral_pair_measures};
use super::measure::Measure;
use crate::error::{Error, Result};

/// Slack allowed in `lhs ≤ rhs`.
pub const UNCERTAINTY_SLACK: f64 = 1e-12;

/// Concentration of `f` on `A` and of `Ff` on `B`, with the resulting bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub epsilon: f64,
    pub delta: f64,
    /// flat indices in `G`
    pub a: Vec<usize>,
    /// flat indices in `Γ`
    pub b: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn weighted_norm(values: impl Iterator<Item = (Complex64, f64)>) -> f64 {
    values.fold(0.0, |acc, (v, w)| acc + v.norm_sqr() * w).sqrt()
}

/// `ε = ‖f − χ_A f‖_μ / ‖f‖_μ`, `δ = ‖Ff − χ_B Ff‖_ν / ‖f‖_μ`,
/// `lhs = max(0, 1 − ε − δ)²`, `rhs = μ(A)·ν(B)`.
///
/// `f` is given on all of `G`; values off `supp μ` carry no weight.
pub fn uncertainty_report(
    mu: &Measure,
    nu: &Measure,
    f: &[Complex64],
    a: &[usize],
    b: &[usize],
) -> Result<UncertaintyReport> {
    if mu.group() != nu.group() {
        return Err(Error::GroupMismatch);
    }
    let n = mu.group().order();
    if f.len() != n {
        return Err(Error::dims(n, f.len()));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&i| i >= n) {
        return Err(Error::InvalidForm(format!("element index {bad} out of range")));
    }
    if !is_spectral_pair_measures(mu, nu)? {
        return Err(Error::NotSpectralPair);
    }
    let support = mu.support();
    let mu_w = |x: usize| mu.weight(x).to_f64();
    let norm = weighted_norm(support.iter().map(|&x| (f[x], mu_w(x))));
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let mut in_a = vec![false; n];
    a.iter().for_each(|&x| in_a[x] = true);
    let mut in_b = vec![false; n];
    b.iter().for_each(|&x| in_b[x] = true);

    let outside_a = weighted_norm(support.iter().filter(|&&x| !in_a[x]).map(|&x| (f[x], mu_w(x))));
    let restricted: Vec<Complex64> = support.iter().map(|&x| f[x]).collect();
    let transformed = fourier_transform(mu, &restricted)?;
    let outside_b = weighted_norm(
        nu.support()
            .into_iter()
            .filter(|&xi| !in_b[xi])
            .map(|xi| (transformed[xi], nu.weight(xi).to_f64())),
    );

    let epsilon = outside_a / norm;
    let delta = outside_b / norm;
    let lhs = (1.0 - epsilon - delta).max(0.0).powi(2);
    let rhs = (mu.mass_of(a) * nu.mass_of(b)).to_f64();
    Ok(UncertaintyReport {
        epsilon,
        delta,
        a: a.to_vec(),
        b: b.to_vec(),
        lhs,
        rhs,
        holds: lhs <= rhs + UNCERTAINTY_SLACK,
    })
}
