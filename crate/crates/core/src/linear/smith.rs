//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMat, RatMat};
use super::rational::Rational;

/// `U · M · V = S` with `S` diagonal and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

impl SmithDecomposition {
    /// The diagonal `s_1 | s_2 | …` (length `min(rows, cols)`, trailing zeros for rank deficiency).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

fn min_abs_nonzero(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row t or column t; make it the pivot
                let mut best = (t, t, s[(t, t)].abs());
                for i in t + 1..rows {
                    let a = s[(i, t)].abs();
                    if !a.is_zero() && a < best.2 {
                        best = (i, t, a);
                    }
                }
                for j in t + 1..cols {
                    let a = s[(t, j)].abs();
                    if !a.is_zero() && a < best.2 {
                        best = (t, j, a);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Column-style Hermite normal form of a nonsingular square integer matrix:
/// `H = B · V` lower triangular with `H_ii > 0` and `0 <= H_ij < H_ii` for `j < i`.
/// Columns of `H` generate the same lattice as the columns of `B`.
pub fn column_hermite_form(b: &IntMat) -> IntMat {
    let n = b.rows();
    assert_eq!(n, b.cols(), "Hermite form of a non-square matrix");
    let mut h = b.clone();
    for i in 0..n {
        loop {
            let pivot = (i..n)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by_key(|&j| h[(i, j)].abs());
            let Some(p) = pivot else {
                panic!("singular matrix passed to column_hermite_form");
            };
            h.swap_cols(i, p);
            let mut done = true;
            for j in i + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, j)] / &h[(i, i)]);
                h.add_col_multiple(j, i, &q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, i)].is_negative() {
            h.negate_col(i);
        }
        for j in 0..i {
            let q = -h[(i, j)].div_floor(&h[(i, i)]);
            h.add_col_multiple(j, i, &q);
        }
    }
    h
}

/// Hermite form of a nonsingular rational lattice basis (columns), scaled back to rationals.
pub fn rational_hermite_form(r: &RatMat) -> RatMat {
    let d = r.common_denominator();
    let scaled = r
        .scale(&Rational::from_int(d.clone()))
        .to_int()
        .expect("scaled by common denominator");
    column_hermite_form(&scaled)
        .to_rat()
        .scale(&Rational::from_int(d).recip())
}
