use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use spectile::linear::{
    column_hermite_form, smith_normal_form, solve_integer_affine, AffineSolution, IntMat, RatMat,
    Rational,
};

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn int_matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
}

fn to_intmat(rows: &[Vec<i64>]) -> IntMat {
    IntMat::from_rows(&rows.iter().map(|r| big(r)).collect::<Vec<_>>()).unwrap()
}

fn rational_matrix(n: usize) -> impl Strategy<Value = RatMat> {
    prop::collection::vec((-9i64..=9, 1i64..=6), n * n).prop_map(move |entries| {
        let rows = entries
            .chunks(n)
            .map(|row| row.iter().map(|&(p, q)| Rational::frac(p, q)).collect())
            .collect();
        RatMat::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_form_decomposes(n in 2usize..=3, seed in int_matrix(3, 3, 20)) {
        let rows: Vec<Vec<i64>> = seed[..n].iter().map(|r| r[..n].to_vec()).collect();
        let m = to_intmat(&rows);
        let dec = smith_normal_form(&m);
        prop_assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.s.clone());
        prop_assert!(dec.s.is_diagonal());
        prop_assert_eq!(dec.u.det().abs(), BigInt::from(1));
        prop_assert_eq!(dec.v.det().abs(), BigInt::from(1));
        let diag = dec.diagonal();
        prop_assert!(diag.iter().all(|s| !s.is_negative()));
        for w in diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hermite_form_is_a_lattice_invariant(rows in int_matrix(3, 3, 6), shear in -4i64..=4) {
        let m = to_intmat(&rows);
        prop_assume!(!m.det().is_zero());
        // another basis of the same lattice: add shear × column 0 to column 1
        let mut other = m.clone();
        other.add_col_multiple(1, 0, &BigInt::from(shear));
        other.swap_cols(0, 2);
        prop_assert_eq!(column_hermite_form(&m), column_hermite_form(&other));
    }

    #[test]
    fn determinant_is_multiplicative(m in rational_matrix(3), n in rational_matrix(3)) {
        prop_assert_eq!(m.mul(&n).det(), m.det() * n.det());
    }

    #[test]
    fn affine_solver_matches_brute_force(
        d in 1usize..=3,
        rows in 1usize..=2,
        a in int_matrix(2, 3, 3),
        b in prop::collection::vec(-6i64..=6, 2),
        modulus in 1i64..=4,
        residue in prop::collection::vec(0i64..4, 3),
    ) {
        let a: Vec<Vec<i64>> = a[..rows].iter().map(|r| r[..d].to_vec()).collect();
        let b = &b[..rows];
        let residue: Vec<i64> = residue[..d].iter().map(|r| r % modulus).collect();
        let sol = solve_integer_affine(&to_intmat(&a), &big(b), &BigInt::from(modulus), &big(&residue));

        let satisfies = |k: &[i64]| {
            a.iter().zip(b).all(|(row, &rhs)| row.iter().zip(k).map(|(x, y)| x * y).sum::<i64>() == rhs)
                && k.iter().zip(&residue).all(|(x, r)| (x - r).rem_euclid(modulus) == 0)
        };
        let radius = 25i64;
        let side = (2 * radius + 1) as usize;
        let total = side.pow(d as u32);
        // every non-solution for d ≤ 2, about 5000 of them in d = 3
        let stride = (total / 5000).max(1);
        let mut found = 0usize;
        for flat in 0..total {
            let mut rest = flat;
            let k: Vec<i64> = (0..d)
                .map(|_| {
                    let c = (rest % side) as i64 - radius;
                    rest /= side;
                    c
                })
                .collect();
            if satisfies(&k) {
                found += 1;
                prop_assert!(sol.contains(&big(&k)), "missing solution {:?}", k);
            } else if flat % stride == 0 {
                prop_assert!(!sol.contains(&big(&k)), "spurious solution {:?}", k);
            }
        }
        if found > 0 {
            prop_assert!(!sol.is_empty());
        }
        // the whole description, not only its box part, satisfies the system
        if let AffineSolution::Lattice { base, basis } = &sol {
            let am = to_intmat(&a);
            prop_assert_eq!(am.mul_vec(base), big(b));
            for v in basis {
                prop_assert!(am.mul_vec(v).iter().all(Zero::is_zero));
                prop_assert!(v.iter().all(|x| (x % BigInt::from(modulus)).is_zero()));
            }
        }
    }
}

#[test]
fn documented_affine_example() {
    // {k : 2·k₁ = 4, k ≡ (2, 0) mod 3} = {(2, 3s)}
    let sol = solve_integer_affine(
        &IntMat::from_i64(&[&[2, 0]]),
        &big(&[4]),
        &BigInt::from(3),
        &big(&[2, 0]),
    );
    for s in -10..=10 {
        assert!(sol.contains(&big(&[2, 3 * s])));
        assert!(!sol.contains(&big(&[2, 3 * s + 1])));
        assert!(!sol.contains(&big(&[8, 3 * s])));
    }
}
