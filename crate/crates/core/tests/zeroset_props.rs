use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use spectile::linear::{RatVec, Rational};
use spectile::zeroset::{diffs_in_zeroset, eval_f_cube, exponential_inner_product, in_zero_set};

fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(p, q)| Rational::frac(p, q))
}

fn ratvec(d: usize, max_num: i64, max_den: i64) -> impl Strategy<Value = RatVec> {
    prop::collection::vec(rational(max_num, max_den), d).prop_map(RatVec)
}

fn sized_ratvec(max_num: i64, max_den: i64) -> impl Strategy<Value = RatVec> {
    (1usize..=4).prop_flat_map(move |d| ratvec(d, max_num, max_den))
}

/// Tensor 3-point Gauss–Legendre on a `cells^d` grid of `[0,1)^d`.
fn quadrature(d: usize, cells: usize, f: impl Fn(&[f64]) -> Complex64) -> Complex64 {
    let nodes = [-(0.6f64).sqrt(), 0.0, (0.6f64).sqrt()];
    let weights = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let h = 1.0 / cells as f64;
    let per_axis: Vec<(f64, f64)> = (0..cells)
        .flat_map(|c| {
            nodes
                .iter()
                .zip(&weights)
                .map(move |(t, w)| (h * (c as f64 + 0.5 + 0.5 * t), 0.5 * h * w))
        })
        .collect();
    let m = per_axis.len();
    let mut total = Complex64::new(0.0, 0.0);
    let mut x = vec![0.0; d];
    for flat in 0..m.pow(d as u32) {
        let mut rest = flat;
        let mut w = 1.0;
        for xi in x.iter_mut() {
            let (node, weight) = per_axis[rest % m];
            *xi = node;
            w *= weight;
            rest /= m;
        }
        total += f(&x) * w;
    }
    total
}

fn exp_at(lambda: &[f64], x: &[f64]) -> Complex64 {
    let phase: f64 = lambda.iter().zip(x).map(|(l, t)| l * t).sum();
    Complex64::from_polar(1.0, 2.0 * PI * phase)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn membership_matches_vanishing(z in sized_ratvec(12, 6)) {
        let value = eval_f_cube(&z);
        if in_zero_set(&z) {
            prop_assert_eq!(value.norm(), 0.0);
        } else {
            // each factor has modulus at least sin(π/6)/(12π) for these ranges
            prop_assert!(value.norm() > 1e-9, "F({:?}) = {}", z, value);
        }
    }

    #[test]
    fn zero_set_is_symmetric(z in sized_ratvec(12, 6)) {
        let neg: RatVec = z.iter().map(|c| -c.clone()).collect();
        prop_assert_eq!(in_zero_set(&z), in_zero_set(&neg));
        prop_assert!((eval_f_cube(&neg) - eval_f_cube(&z).conj()).norm() < 1e-12);
    }

    #[test]
    fn zero_set_ignores_origin(d in 1usize..=5) {
        prop_assert!(!in_zero_set(&RatVec::zeros(d)));
    }

    #[test]
    fn pairwise_check_matches_definition(points in prop::collection::vec(ratvec(2, 4, 2), 1..8)) {
        let (holds, witness) = diffs_in_zeroset(&points);
        let expected = points.iter().all(|a| {
            points.iter().all(|b| {
                let delta = a - b;
                delta.is_zero() || in_zero_set(&delta)
            })
        });
        prop_assert_eq!(holds, expected);
        prop_assert_eq!(witness.is_some(), !holds);
        if let Some(w) = witness {
            prop_assert!(!w.delta.is_zero() && !in_zero_set(&w.delta));
            prop_assert!(points.contains(&w.a) && points.contains(&w.b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inner_product_matches_quadrature(
        d in 1usize..=2,
        lambda in ratvec(2, 9, 3),
        lambda_prime in ratvec(2, 9, 3),
    ) {
        let lambda = RatVec(lambda.0[..d].to_vec());
        let lambda_prime = RatVec(lambda_prime.0[..d].to_vec());
        let (lf, lpf) = (lambda.to_f64(), lambda_prime.to_f64());
        let numeric = quadrature(d, 64, |x| exp_at(&lf, x).conj() * exp_at(&lpf, x));
        let exact = exponential_inner_product(&lambda, &lambda_prime);
        prop_assert!((numeric - exact).norm() < 1e-6, "{} vs {}", numeric, exact);
    }
}

#[test]
fn inner_product_is_conjugate_linear_in_first_argument() {
    let a = RatVec::from_fracs(&[(1, 3)]);
    let b = RatVec::from_fracs(&[(0, 1)]);
    let ab = exponential_inner_product(&a, &b);
    let ba = exponential_inner_product(&b, &a);
    assert!((ab - ba.conj()).norm() < 1e-12);
    assert!(ab.im.abs() > 1e-3);
}
