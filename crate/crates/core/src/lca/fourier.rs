use num_complex::Complex64;
use rayon::prelude::*;

use super::group::FiniteGroup;
use super::measure::Measure;
use crate::error::{Error, Result};

/// Entrywise tolerance of the floating-point isometry test.
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;

/// `(Ff)(ξ) = Σ_{x ∈ supp μ} f(x)·conj⟨x,ξ⟩·μ({x})` as a `|G| × |supp μ|` matrix.
#[derive(Clone, Debug)]
pub struct FourierOperator {
    source: Measure,
    support: Vec<usize>,
    /// row-major, row `ξ`, column = position in `support`
    matrix: Vec<Complex64>,
}

impl FourierOperator {
    pub fn new(mu: &Measure) -> Self {
        let g = mu.group();
        let support = mu.support();
        let weights: Vec<f64> = support.iter().map(|&x| mu.weight(x).to_f64()).collect();
        let mut matrix = Vec::with_capacity(g.order() * support.len());
        for xi in 0..g.order() {
            for (&x, w) in support.iter().zip(&weights) {
                matrix.push(g.pairing_index(x, xi).conj() * w);
            }
        }
        FourierOperator {
            source: mu.clone(),
            support,
            matrix,
        }
    }

    pub fn source(&self) -> &Measure {
        &self.source
    }

    /// Flat indices of `supp μ`, the column order.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn entry(&self, xi: usize, column: usize) -> Complex64 {
        self.matrix[xi * self.support.len() + column]
    }

    /// Applies `F` to `f` given on `supp μ` (in `support()` order); returns values on all of `Γ`.
    pub fn apply(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        if f.len() != self.support.len() {
            return Err(Error::dims(self.support.len(), f.len()));
        }
        let cols = self.support.len();
        Ok((0..self.source.group().order())
            .map(|xi| {
                self.matrix[xi * cols..(xi + 1) * cols]
                    .iter()
                    .zip(f)
                    .map(|(b, v)| b * v)
                    .sum()
            })
            .collect())
    }
}

/// `Ff` on all of `Γ` for `f` given on `supp μ`.
pub fn fourier_transform(mu: &Measure, f: &[Complex64]) -> Result<Vec<Complex64>> {
    FourierOperator::new(mu).apply(f)
}

/// `(F⁻¹g)(x) = Σ_{ξ ∈ supp ν} g(ξ)·⟨x,ξ⟩·ν({ξ})` for `x ∈ supp μ`, with `g` on all of `Γ`.
///
/// This is the adjoint of `F`; it inverts `F` when `(μ, ν)` is a spectral pair.
pub fn inverse_fourier(mu: &Measure, nu: &Measure, g: &[Complex64]) -> Result<Vec<Complex64>> {
    if mu.group() != nu.group() {
        return Err(Error::GroupMismatch);
    }
    let group = mu.group();
    if g.len() != group.order() {
        return Err(Error::dims(group.order(), g.len()));
    }
    let spectrum = nu.support();
    Ok(mu
        .support()
        .iter()
        .map(|&x| {
            spectrum
                .iter()
                .map(|&xi| g[xi] * group.pairing_index(x, xi) * nu.weight(xi).to_f64())
                .sum()
        })
        .collect())
}

/// Whether `F` is an isometry of `L²(μ)` onto `L²(ν)`.
///
/// Isometry is `B†·D_ν·B = D_μ` on `supp μ` within `SPECTRAL_TOLERANCE`; given
/// isometry, onto is `|supp μ| = |supp ν|`.
pub fn is_spectral_pair_measures(mu: &Measure, nu: &Measure) -> Result<bool> {
    if mu.group() != nu.group() {
        return Err(Error::GroupMismatch);
    }
    let support = mu.support();
    let spectrum = nu.support();
    if support.len() != spectrum.len() {
        return Ok(false);
    }
    let op = FourierOperator::new(mu);
    let n = support.len();
    let nu_weights: Vec<f64> = spectrum.iter().map(|&xi| nu.weight(xi).to_f64()).collect();
    let mu_weights: Vec<f64> = support.iter().map(|&x| mu.weight(x).to_f64()).collect();
    let ok = (0..n).into_par_iter().all(|i| {
        (0..n).all(|j| {
            let value: Complex64 = spectrum
                .iter()
                .zip(&nu_weights)
                .map(|(&xi, w)| op.entry(xi, i).conj() * op.entry(xi, j) * w)
                .sum();
            let target = if i == j { mu_weights[i] } else { 0.0 };
            (value - target).norm() <= SPECTRAL_TOLERANCE
        })
    });
    Ok(ok)
}

/// Gram matrix `⟨e_ξ, e_η⟩_μ = Σ_x μ(x)·⟨x,ξ⟩·conj⟨x,η⟩` over `ξ, η ∈ spectrum`.
pub fn gram_matrix(mu: &Measure, spectrum: &[usize]) -> Vec<Vec<Complex64>> {
    let g = mu.group();
    let support = mu.support();
    spectrum
        .iter()
        .map(|&xi| {
            spectrum
                .iter()
                .map(|&eta| {
                    support
                        .iter()
                        .map(|&x| {
                            g.pairing_index(x, xi)
                                * g.pairing_index(x, eta).conj()
                                * mu.weight(x).to_f64()
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Multiplication by `e_t(ξ) = ⟨t, ξ⟩` on functions on `Γ`.
#[derive(Clone, Debug)]
pub struct TranslationUnitary {
    multipliers: Vec<Complex64>,
}

impl TranslationUnitary {
    pub fn new(group: &FiniteGroup, t: usize) -> Self {
        TranslationUnitary {
            multipliers: (0..group.order()).map(|xi| group.pairing_index(t, xi)).collect(),
        }
    }

    pub fn multipliers(&self) -> &[Complex64] {
        &self.multipliers
    }

    pub fn apply(&self, g: &[Complex64]) -> Vec<Complex64> {
        g.iter().zip(&self.multipliers).map(|(v, m)| v * m).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: &[Complex64], b: &[Complex64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).norm() < 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn transform_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let mu = Measure::counting(&g);
        assert_close(&fourier_transform(&mu, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap(), &[c(1.0, 0.0); 2]);
        assert_close(
            &fourier_transform(&mu, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
            &[c(1.0, 0.0), c(-1.0, 0.0)],
        );
        assert_close(
            &fourier_transform(&mu, &[c(1.0, 0.0); 2]).unwrap(),
            &[c(2.0, 0.0), c(0.0, 0.0)],
        );
    }

    #[test]
    fn operator_entries_have_weight_modulus() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let mu = Measure::counting_on(&g, &[1, 4], Rational::frac(2, 3)).unwrap();
        let op = FourierOperator::new(&mu);
        for xi in 0..6 {
            for col in 0..2 {
                assert!((op.entry(xi, col).norm() - 2.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_examples() {
        for n in 1..=8 {
            let g = FiniteGroup::cyclic(n).unwrap();
            let ok = is_spectral_pair_measures(&Measure::counting(&g), &Measure::dual_haar(&g));
            assert!(ok.unwrap());
        }
        let g = FiniteGroup::cyclic(4).unwrap();
        let mu = Measure::counting_on(&g, &[0, 1], Rational::one()).unwrap();
        let half = Rational::frac(1, 2);
        let good = Measure::counting_on(&g, &[0, 2], half.clone()).unwrap();
        let bad = Measure::counting_on(&g, &[0, 1], half).unwrap();
        assert!(is_spectral_pair_measures(&mu, &good).unwrap());
        assert!(!is_spectral_pair_measures(&mu, &bad).unwrap());
        let other = Measure::counting(&FiniteGroup::cyclic(5).unwrap());
        assert_eq!(is_spectral_pair_measures(&mu, &other), Err(Error::GroupMismatch));
    }

    #[test]
    fn inverse_undoes_transform() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mu = Measure::counting_on(&g, &[0, 1], Rational::one()).unwrap();
        let nu = Measure::counting_on(&g, &[0, 2], Rational::frac(1, 2)).unwrap();
        let f = [c(0.5, -1.0), c(2.0, 0.25)];
        let back = inverse_fourier(&mu, &nu, &fourier_transform(&mu, &f).unwrap()).unwrap();
        assert_close(&back, &f);
    }

    #[test]
    fn translation_multipliers_are_unimodular() {
        let g = FiniteGroup::new(vec![3, 4]).unwrap();
        let u = TranslationUnitary::new(&g, 7);
        assert!(u.multipliers().iter().all(|m| (m.norm() - 1.0).abs() < 1e-12));
    }
}
