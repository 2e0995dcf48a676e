//! The exponential integral of the unit cube and its zero set.
//!
//! For `z ∈ Q^d` the transform of the indicator of `[0,1)^d` factors as
//! `Π_j (e^{i2πz_j} − 1)/(i2πz_j)`, so it vanishes exactly when some
//! coordinate is a nonzero integer. Membership is decided on rationals;
//! the floating-point value is only for display and cross-checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::linear::{RatVec, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeEvaluation {
    pub z: RatVec,
    pub re: f64,
    pub im: f64,
    pub in_zero_set: bool,
}

impl CubeEvaluation {
    pub fn new(z: RatVec) -> Self {
        let value = eval_f_cube(&z);
        CubeEvaluation {
            in_zero_set: in_zero_set(&z),
            re: value.re,
            im: value.im,
            z,
        }
    }

    pub fn modulus(&self) -> f64 {
        Complex64::new(self.re, self.im).norm()
    }
}

/// A pair `a, b` of a finite set whose difference leaves the zero set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceWitness {
    pub a: RatVec,
    pub b: RatVec,
    pub delta: RatVec,
}

impl DifferenceWitness {
    pub fn new(a: RatVec, b: RatVec) -> Self {
        let delta = &a - &b;
        DifferenceWitness { a, b, delta }
    }
}

/// True iff `z ≠ 0` and some coordinate is a nonzero integer.
pub fn in_zero_set(z: &RatVec) -> bool {
    z.iter().any(|c| c.is_integer() && !c.is_zero())
}

/// True iff `z` lies in the zero set or is the zero vector.
pub fn in_zero_set_or_origin(z: &RatVec) -> bool {
    z.is_zero() || in_zero_set(z)
}

/// One factor `(e^{i2πt} − 1)/(i2πt)`, with value 1 at `t = 0`.
fn factor(t: &Rational) -> Complex64 {
    if t.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    if t.is_integer() {
        return Complex64::new(0.0, 0.0);
    }
    // (e^{iθ} − 1)/(iθ) = e^{iθ/2}·sin(θ/2)/(θ/2) with θ/2 = πt. Reduce t mod 2
    // exactly so the trigonometric arguments stay small.
    let two = num_bigint::BigInt::from(2);
    let shift = t.floor().div_floor(&two) * &two;
    let reduced = (t - &Rational::from_int(shift)).to_f64();
    let half = PI * reduced;
    let magnitude = half.sin() / (PI * t.to_f64());
    Complex64::from_polar(1.0, half) * magnitude
}

/// `F(z) = ∫_{[0,1)^d} e^{i2πz·x} dx`.
pub fn eval_f_cube(z: &RatVec) -> Complex64 {
    z.iter().map(factor).product()
}

/// Checks that every difference of distinct list elements lies in the zero set.
/// On failure returns the first offending pair in scan order (`a` later than `b`).
pub fn diffs_in_zeroset(points: &[RatVec]) -> (bool, Option<DifferenceWitness>) {
    for (i, a) in points.iter().enumerate() {
        for b in &points[..i] {
            let delta = a - b;
            if !in_zero_set_or_origin(&delta) {
                return (false, Some(DifferenceWitness::new(a.clone(), b.clone())));
            }
        }
    }
    (true, None)
}

/// `⟨e_λ, e_λ'⟩` on the unit cube, conjugate-linear in the first argument,
/// which equals `F(λ' − λ)`.
pub fn exponential_inner_product(lambda: &RatVec, lambda_prime: &RatVec) -> Complex64 {
    eval_f_cube(&(lambda_prime - lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(fr: &[(i64, i64)]) -> RatVec {
        RatVec::from_fracs(fr)
    }

    #[test]
    fn membership_examples() {
        assert!(in_zero_set(&v(&[(1, 1), (3, 10)])));
        assert!(!in_zero_set(&v(&[(0, 1), (1, 2)])));
        assert!(!in_zero_set(&v(&[(0, 1), (0, 1)])));
        assert!(in_zero_set(&v(&[(-2, 1), (1, 3)])));
    }

    #[test]
    fn evaluation_examples() {
        let origin = eval_f_cube(&RatVec::zeros(3));
        assert_eq!(origin, Complex64::new(1.0, 0.0));
        assert_eq!(eval_f_cube(&v(&[(1, 1), (1, 2)])).norm(), 0.0);
        // (e^{iπ} − 1)/(iπ) = 2i/π
        let half = eval_f_cube(&v(&[(1, 2)]));
        assert!((half.norm() - 2.0 / PI).abs() < 1e-12);
        assert!(half.re.abs() < 1e-12 && (half.im - 2.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn large_arguments_stay_accurate() {
        // t = 1001/2: |F| = |sin(πt)|/(π t) = 2/(1001π)
        let z = v(&[(1001, 2)]);
        let expected = 2.0 / (1001.0 * PI);
        assert!((eval_f_cube(&z).norm() - expected).abs() < 1e-15);
        let neg = v(&[(-7, 3)]);
        let direct = {
            let t = -7.0 / 3.0;
            let th = 2.0 * PI * t;
            (Complex64::from_polar(1.0, th) - 1.0) / Complex64::new(0.0, th)
        };
        assert!((eval_f_cube(&neg) - direct).norm() < 1e-12);
    }

    #[test]
    fn difference_examples() {
        let (ok, w) = diffs_in_zeroset(&[v(&[(0, 1), (0, 1)]), v(&[(1, 1), (1, 2)])]);
        assert!(ok && w.is_none());
        let (ok, w) = diffs_in_zeroset(&[v(&[(0, 1), (0, 1)]), v(&[(1, 2), (1, 2)])]);
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.a, v(&[(1, 2), (1, 2)]));
        assert_eq!(w.b, v(&[(0, 1), (0, 1)]));
        assert_eq!(w.delta, v(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn shifted_grid_passes() {
        // {0,1,2,3} × {1/3, 4/3, 7/3, 10/3}
        let pts: Vec<RatVec> = (0..4)
            .flat_map(|i| (0..4).map(move |j| v(&[(i, 1), (1 + 3 * j, 3)])))
            .collect();
        assert_eq!(pts.len(), 16);
        assert!(diffs_in_zeroset(&pts).0);
    }
}
