use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectile::battery::measures::{
    random_function, random_group, random_measure_pair, random_spectral_pair, random_subset,
};
use spectile::battery::symmetry_verdicts;
use spectile::lca::{
    fourier_transform, gram_matrix, inverse_fourier, is_spectral_pair_measures,
    is_tiling_pair_measures, uncertainty_report, FiniteGroup, Measure, TranslationUnitary,
};
use spectile::linear::Rational;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Σ_x f(x)·exp(−2πi Σ_j x_j ξ_j / n_j)·μ(x)` straight from coordinates.
fn direct_transform(mu: &Measure, f_on_support: &[Complex64]) -> Vec<Complex64> {
    let g = mu.group();
    let support = mu.support();
    (0..g.order())
        .map(|xi| {
            let xi_c = g.element(xi);
            support
                .iter()
                .zip(f_on_support)
                .map(|(&x, v)| {
                    let x_c = g.element(x);
                    let phase: f64 = x_c
                        .iter()
                        .zip(&xi_c)
                        .zip(g.orders())
                        .map(|((a, b), n)| (a * b) as f64 / *n as f64)
                        .sum();
                    v * Complex64::from_polar(1.0, -2.0 * PI * phase) * mu.weight(x).to_f64()
                })
                .sum()
        })
        .collect()
}

fn weighted_norm_sqr(m: &Measure, values: &[Complex64]) -> f64 {
    m.support().iter().map(|&x| values[x].norm_sqr() * m.weight(x).to_f64()).sum()
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transform_matches_direct_sum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (mu, _) = random_measure_pair(&mut r, 48);
        let f = random_function(&mut r, mu.group());
        let restricted: Vec<Complex64> = mu.support().iter().map(|&x| f[x]).collect();
        let fast = fourier_transform(&mu, &restricted).unwrap();
        prop_assert!(close(&fast, &direct_transform(&mu, &restricted), 1e-9));
    }

    #[test]
    fn spectral_verdict_is_symmetric(seed in any::<u64>()) {
        let (mu, nu) = random_measure_pair(&mut rng(seed), 32);
        let v = symmetry_verdicts(&mu, &nu);
        prop_assert!(v.iter().all(|&b| b == v[0]), "{:?}", v);
    }

    #[test]
    fn spectral_pairs_invert_and_preserve_norms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (mu, nu) = random_spectral_pair(&mut r, 48);
        prop_assert!(is_spectral_pair_measures(&mu, &nu).unwrap());
        let f = random_function(&mut r, mu.group());
        let support = mu.support();
        let restricted: Vec<Complex64> = support.iter().map(|&x| f[x]).collect();
        let transformed = fourier_transform(&mu, &restricted).unwrap();
        let back = inverse_fourier(&mu, &nu, &transformed).unwrap();
        prop_assert!(close(&back, &restricted, 1e-9));
        let lhs = weighted_norm_sqr(&nu, &transformed);
        let rhs = weighted_norm_sqr(&mu, &f);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn spectral_pairs_have_flat_weights_and_orthogonal_gram(seed in any::<u64>()) {
        let (mu, nu) = random_spectral_pair(&mut rng(seed), 48);
        let mass = mu.total_mass();
        // exact: both measures are constant on their supports, μ(x)·ν(Γ) = 1
        for x in mu.support() {
            prop_assert_eq!(mu.weight(x) * &nu.total_mass(), Rational::one());
        }
        for xi in nu.support() {
            prop_assert_eq!(nu.weight(xi) * &mass, Rational::one());
        }
        let spectrum = nu.support();
        let gram = gram_matrix(&mu, &spectrum);
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { mass.to_f64() } else { 0.0 };
                prop_assert!((v - Complex64::new(target, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn translation_becomes_modulation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r, 48);
        let mu = Measure::counting_on(&g, &(0..g.order()).collect::<Vec<_>>(), Rational::frac(r.gen_range(1..=3), 2)).unwrap();
        let f = random_function(&mut r, &g);
        let t = r.gen_range(0..g.order());
        let shifted: Vec<Complex64> = (0..g.order()).map(|x| f[g.add(x, t)]).collect();
        let lhs = fourier_transform(&mu, &shifted).unwrap();
        let rhs = TranslationUnitary::new(&g, t).apply(&fourier_transform(&mu, &f).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn measure_tiling_matches_set_tiling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=24u64);
        let g = FiniteGroup::cyclic(n).unwrap();
        let omega = random_subset(&mut r, n as usize);
        let l = random_subset(&mut r, n as usize);
        let mut hits = vec![0usize; n as usize];
        for &a in &omega {
            for &b in &l {
                hits[(a + b) % n as usize] += 1;
            }
        }
        let tiles = hits.iter().all(|&h| h == 1);
        let one = Rational::one();
        let measures = is_tiling_pair_measures(
            &Measure::counting_on(&g, &omega, one.clone()).unwrap(),
            &Measure::counting_on(&g, &l, one).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(measures, tiles);
    }

    #[test]
    fn uncertainty_bound_holds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (mu, nu) = random_spectral_pair(&mut r, 48);
        let n = mu.group().order();
        let f = random_function(&mut r, mu.group());
        prop_assume!(weighted_norm_sqr(&mu, &f) > 1e-12);
        let a = random_subset(&mut r, n);
        let b = random_subset(&mut r, n);
        let report = uncertainty_report(&mu, &nu, &f, &a, &b).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        prop_assert!(report.lhs <= report.rhs + 1e-12);

        // full sets leave nothing outside
        let everything: Vec<usize> = (0..n).collect();
        let full = uncertainty_report(&mu, &nu, &f, &everything, &everything).unwrap();
        prop_assert!(full.epsilon < 1e-12 && full.delta < 1e-9);
    }
}

#[test]
fn counting_measure_with_dual_haar_is_spectral() {
    for orders in [vec![1], vec![2], vec![6], vec![2, 2], vec![3, 4], vec![8, 8]] {
        let g = FiniteGroup::new(orders).unwrap();
        let mu = Measure::counting(&g);
        let nu = Measure::dual_haar(&g);
        assert!(is_spectral_pair_measures(&mu, &nu).unwrap());
        assert!(is_spectral_pair_measures(&nu, &mu).unwrap());
        // the normalization cannot be dropped once |G| > 1
        if g.order() > 1 {
            assert!(!is_spectral_pair_measures(&mu, &mu).unwrap());
        }
    }
}

#[test]
fn z4_two_point_pair() {
    let g = FiniteGroup::cyclic(4).unwrap();
    let mu = Measure::counting_on(&g, &[0, 1], Rational::one()).unwrap();
    let nu = Measure::counting_on(&g, &[0, 2], Rational::frac(1, 2)).unwrap();
    assert!(is_spectral_pair_measures(&mu, &nu).unwrap());
    let other = Measure::counting_on(&g, &[0, 1], Rational::frac(1, 2)).unwrap();
    assert!(!is_spectral_pair_measures(&mu, &other).unwrap());
}
