use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{IntMat, RatMat};
use super::rational::Rational;
use super::smith::smith_normal_form;

/// Exact description of `{k ∈ Z^d : A·k = b, k ≡ residue (mod modulus)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AffineSolution {
    Empty,
    Point {
        #[serde(serialize_with = "ser_ints")]
        point: Vec<BigInt>,
    },
    /// `base + Σ t_i · basis_i`, `t ∈ Z^r`; basis vectors are linearly independent.
    Lattice {
        #[serde(serialize_with = "ser_ints")]
        base: Vec<BigInt>,
        #[serde(serialize_with = "ser_int_rows")]
        basis: Vec<Vec<BigInt>>,
    },
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_int_rows<S: serde::Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

impl AffineSolution {
    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSolution::Empty)
    }

    /// Some element of the set, if any.
    pub fn any_point(&self) -> Option<&[BigInt]> {
        match self {
            AffineSolution::Empty => None,
            AffineSolution::Point { point } => Some(point),
            AffineSolution::Lattice { base, .. } => Some(base),
        }
    }

    /// Membership decided from the description alone.
    pub fn contains(&self, k: &[BigInt]) -> bool {
        match self {
            AffineSolution::Empty => false,
            AffineSolution::Point { point } => point.as_slice() == k,
            AffineSolution::Lattice { base, basis } => {
                let diff: Vec<Rational> = k
                    .iter()
                    .zip(base)
                    .map(|(a, b)| Rational::from_int(a - b))
                    .collect();
                match solve_independent(basis, &diff) {
                    Some(coeffs) => coeffs.iter().all(Rational::is_integer),
                    None => false,
                }
            }
        }
    }
}

/// Solves `Σ c_i · columns_i = target` for linearly independent columns; `None` if inconsistent.
fn solve_independent(columns: &[Vec<BigInt>], target: &[Rational]) -> Option<Vec<Rational>> {
    let d = target.len();
    let r = columns.len();
    let mut aug = RatMat::zeros(d, r + 1);
    for i in 0..d {
        for (j, col) in columns.iter().enumerate() {
            aug[(i, j)] = Rational::from_int(col[i].clone());
        }
        aug[(i, r)] = target[i].clone();
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(r);
    for col in 0..r {
        let p = (pivot_row..d).find(|&i| !aug[(i, col)].is_zero())?;
        aug.swap_rows(p, pivot_row);
        let inv = aug[(pivot_row, col)].recip();
        for c in 0..=r {
            aug[(pivot_row, c)] = &aug[(pivot_row, c)] * &inv;
        }
        for i in 0..d {
            if i == pivot_row || aug[(i, col)].is_zero() {
                continue;
            }
            let f = aug[(i, col)].clone();
            for c in 0..=r {
                let t = &f * &aug[(pivot_row, c)];
                aug[(i, c)] -= &t;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..d).any(|i| !aug[(i, r)].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&p| aug[(p, r)].clone()).collect())
}

/// Integer solutions of `A·k = b` restricted to the residue class `k ≡ residue (mod modulus)`.
///
/// Substitutes `k = residue + modulus·t` and solves `modulus·A·t = b − A·residue`
/// through the Smith form of `modulus·A`.
pub fn solve_integer_affine(
    a: &IntMat,
    b: &[BigInt],
    modulus: &BigInt,
    residue: &[BigInt],
) -> AffineSolution {
    let d = a.cols();
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    assert_eq!(residue.len(), d, "residue length");
    assert!(modulus >= &BigInt::one(), "modulus must be positive");

    let mut scaled = a.clone();
    for i in 0..a.rows() {
        for j in 0..d {
            scaled[(i, j)] = &a[(i, j)] * modulus;
        }
    }
    let ar = a.mul_vec(residue);
    let rhs: Vec<BigInt> = b.iter().zip(&ar).map(|(x, y)| x - y).collect();

    let dec = smith_normal_form(&scaled);
    let c = dec.u.mul_vec(&rhs);
    let diag = dec.diagonal();
    let rank = dec.rank();

    let mut y = vec![BigInt::zero(); d];
    for i in 0..c.len() {
        if i < rank {
            let (q, rem) = c[i].div_rem(&diag[i]);
            if !rem.is_zero() {
                return AffineSolution::Empty;
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return AffineSolution::Empty;
        }
    }
    let t = dec.v.mul_vec(&y);
    let base: Vec<BigInt> = residue
        .iter()
        .zip(&t)
        .map(|(r, ti)| r + modulus * ti)
        .collect();
    let basis: Vec<Vec<BigInt>> = (rank..d)
        .map(|j| (0..d).map(|i| &dec.v[(i, j)] * modulus).collect())
        .collect();
    if basis.is_empty() {
        AffineSolution::Point { point: base }
    } else {
        AffineSolution::Lattice { base, basis }
    }
}
