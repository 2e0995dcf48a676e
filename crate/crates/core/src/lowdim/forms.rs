use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{RatVec, Rational};
use crate::periodic::PeriodicSet;

/// A function `Z^n → [0,1)` given by one period per index, stored row-major
/// (last index fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicTable {
    pub periods: Vec<usize>,
    pub values: Vec<Rational>,
}

impl PeriodicTable {
    pub fn new(periods: Vec<usize>, values: Vec<Rational>) -> Result<Self> {
        let t = PeriodicTable { periods, values };
        t.validate()?;
        Ok(t)
    }

    pub fn constant(arity: usize, value: Rational) -> Self {
        PeriodicTable {
            periods: vec![1; arity],
            values: vec![value],
        }
    }

    pub fn zeros(arity: usize) -> Self {
        Self::constant(arity, Rational::zero())
    }

    /// One-index table from its values over one period.
    pub fn sequence(values: Vec<Rational>) -> Self {
        PeriodicTable {
            periods: vec![values.len()],
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.periods.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.periods.contains(&0) {
            return Err(Error::InvalidForm("table period must be positive".into()));
        }
        let expected: usize = self.periods.iter().product();
        if expected != self.values.len() {
            return Err(Error::InvalidForm(format!(
                "table with periods {:?} needs {expected} values, got {}",
                self.periods,
                self.values.len()
            )));
        }
        check_unit(&self.values, "table value")
    }

    pub fn get(&self, idx: &[i64]) -> &Rational {
        debug_assert_eq!(idx.len(), self.arity());
        let mut flat = 0usize;
        for (i, &p) in idx.iter().zip(&self.periods) {
            flat = flat * p + i.rem_euclid(p as i64) as usize;
        }
        &self.values[flat]
    }
}

pub(crate) fn check_unit(values: &[Rational], what: &str) -> Result<()> {
    match values.iter().find(|v| !v.in_unit_interval()) {
        Some(bad) => Err(Error::InvalidForm(format!("{what} {bad} is not in [0,1)"))),
        None => Ok(()),
    }
}

/// `Λ = α + Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim1Form {
    pub alpha: Rational,
}

impl Dim1Form {
    pub fn validate(&self) -> Result<()> {
        check_unit(std::slice::from_ref(&self.alpha), "alpha")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `{(α + m, β_m + n)}`
    ColumnShifted,
    /// `{(β_n + m, α + n)}`
    RowShifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim2Form {
    pub orientation: Orientation,
    pub alpha: Rational,
    pub beta: PeriodicTable,
}

impl Dim2Form {
    pub fn validate(&self) -> Result<()> {
        check_unit(std::slice::from_ref(&self.alpha), "alpha")?;
        self.beta.validate()?;
        if self.beta.arity() != 1 {
            return Err(Error::InvalidForm("beta must be a one-index table".into()));
        }
        Ok(())
    }

    /// Canonical representative: minimal β period; a row-shifted set with
    /// constant β is written column-shifted.
    pub fn normalized(&self) -> Dim2Form {
        let beta = minimize_sequence(&self.beta.values);
        if self.orientation == Orientation::RowShifted && beta.len() == 1 {
            return Dim2Form {
                orientation: Orientation::ColumnShifted,
                alpha: beta[0].clone(),
                beta: PeriodicTable::sequence(vec![self.alpha.clone()]),
            };
        }
        Dim2Form {
            orientation: self.orientation,
            alpha: self.alpha.clone(),
            beta: PeriodicTable::sequence(beta),
        }
    }
}

/// Layer type of an integer slice `x_1 = a` in the three-dimensional catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SliceClass {
    /// `(a, α₀(a) + k, α₁(a, k) + l)`
    A,
    /// `(b, β₁(b, n) + m, β₀(b) + n)`
    B,
}

/// Three-dimensional catalog form; residues `a mod P` with `P = partition.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim3Form {
    pub partition: Vec<SliceClass>,
    pub alpha0: Vec<Rational>,
    pub alpha1: PeriodicTable,
    pub beta0: Vec<Rational>,
    pub beta1: PeriodicTable,
}

/// One slice of a `Dim3Form` as a function of the in-slice index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SliceData {
    pub class: SliceClass,
    pub shift: Rational,
    /// minimal-period row of α₁(a, ·) or β₁(b, ·)
    pub row: Vec<Rational>,
}

impl Dim3Form {
    pub fn period(&self) -> usize {
        self.partition.len()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.period();
        if p == 0 {
            return Err(Error::InvalidForm("partition period must be positive".into()));
        }
        if self.alpha0.len() != p || self.beta0.len() != p {
            return Err(Error::InvalidForm(format!(
                "alpha0/beta0 need {p} entries (one per residue)"
            )));
        }
        check_unit(&self.alpha0, "alpha0")?;
        check_unit(&self.beta0, "beta0")?;
        for t in [&self.alpha1, &self.beta1] {
            t.validate()?;
            if t.arity() != 2 {
                return Err(Error::InvalidForm("alpha1/beta1 must be two-index tables".into()));
            }
        }
        Ok(())
    }

    /// Full period of the first coordinate.
    pub(crate) fn slice_period(&self) -> usize {
        self.period()
            .lcm(&self.alpha1.periods[0])
            .lcm(&self.beta1.periods[0])
    }

    pub(crate) fn slice(&self, a: i64) -> SliceData {
        let p = self.period() as i64;
        let r = a.rem_euclid(p) as usize;
        let (class, shift, table) = match self.partition[r] {
            SliceClass::A => (SliceClass::A, self.alpha0[r].clone(), &self.alpha1),
            SliceClass::B => (SliceClass::B, self.beta0[r].clone(), &self.beta1),
        };
        let width = table.periods[1] as i64;
        let row: Vec<Rational> = (0..width).map(|k| table.get(&[a, k]).clone()).collect();
        let row = minimize_sequence(&row);
        // a B slice whose β₁ row is constant is also an A slice
        if class == SliceClass::B && row.len() == 1 {
            return SliceData {
                class: SliceClass::A,
                shift: row[0].clone(),
                row: vec![shift],
            };
        }
        SliceData { class, shift, row }
    }

    pub(crate) fn from_slices(slices: &[SliceData]) -> Dim3Form {
        let period = minimal_period(slices);
        let slices = &slices[..period];
        let width = |class: SliceClass| {
            slices
                .iter()
                .filter(|s| s.class == class)
                .fold(1usize, |acc, s| acc.lcm(&s.row.len()))
        };
        let (qa, qb) = (width(SliceClass::A), width(SliceClass::B));
        let mut alpha0 = vec![Rational::zero(); period];
        let mut beta0 = vec![Rational::zero(); period];
        let mut alpha1 = vec![Rational::zero(); period * qa];
        let mut beta1 = vec![Rational::zero(); period * qb];
        for (a, s) in slices.iter().enumerate() {
            let (shift0, table, q) = match s.class {
                SliceClass::A => (&mut alpha0, &mut alpha1, qa),
                SliceClass::B => (&mut beta0, &mut beta1, qb),
            };
            shift0[a] = s.shift.clone();
            for k in 0..q {
                table[a * q + k] = s.row[k % s.row.len()].clone();
            }
        }
        Dim3Form {
            partition: slices.iter().map(|s| s.class).collect(),
            alpha0,
            alpha1: PeriodicTable {
                periods: vec![period, qa],
                values: alpha1,
            },
            beta0,
            beta1: PeriodicTable {
                periods: vec![period, qb],
                values: beta1,
            },
        }
    }

    /// Canonical representative: slices that are both A and B become A,
    /// all periods minimal, unused table entries zero.
    pub fn normalized(&self) -> Dim3Form {
        let slices: Vec<SliceData> = (0..self.slice_period() as i64).map(|a| self.slice(a)).collect();
        Dim3Form::from_slices(&slices)
    }
}

/// `Λ = {(α + k₁, β₁(k₁) + k₂, …, β_{d−1}(k₁,…,k_{d−1}) + k_d)}`; `betas[i]` has `i + 1` indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub alpha: Rational,
    pub betas: Vec<PeriodicTable>,
}

impl TowerSpec {
    pub fn dim(&self) -> usize {
        self.betas.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        check_unit(std::slice::from_ref(&self.alpha), "alpha")?;
        for (i, b) in self.betas.iter().enumerate() {
            b.validate()?;
            if b.arity() != i + 1 {
                return Err(Error::InvalidForm(format!(
                    "beta_{} must have {} indices, has {}",
                    i + 1,
                    i + 1,
                    b.arity()
                )));
            }
        }
        Ok(())
    }
}

/// Shift of the right factor attached to one left offset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub offset: RatVec,
    pub shift: RatVec,
}

/// `{(λ₁, β(λ₁) + λ₂)}` with `β` constant on each left offset's lattice coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossProductSpec {
    pub left: PeriodicSet,
    pub right: PeriodicSet,
    pub beta: Vec<BetaEntry>,
}

/// Form specification as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormSpec {
    Dim1(Dim1Form),
    Dim2(Dim2Form),
    Dim3(Dim3Form),
    Tower(TowerSpec),
    CrossProduct(CrossProductSpec),
}

/// Smallest cyclic period of `seq` (a divisor of its length).
pub(crate) fn minimal_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| seq[i] == seq[i - p]))
        .unwrap_or(n.max(1))
}

pub(crate) fn minimize_sequence(seq: &[Rational]) -> Vec<Rational> {
    seq[..minimal_period(seq)].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    #[test]
    fn minimal_periods() {
        assert_eq!(minimal_period(&[1, 2, 1, 2]), 2);
        assert_eq!(minimal_period(&[1, 1, 1]), 1);
        assert_eq!(minimal_period(&[1, 2, 3]), 3);
        assert_eq!(minimal_period(&[1, 2, 1]), 3);
    }

    #[test]
    fn table_lookup_wraps() {
        let t = PeriodicTable::new(vec![2, 3], (0..6).map(|i| r(i, 6)).collect()).unwrap();
        assert_eq!(t.get(&[1, 2]), &r(5, 6));
        assert_eq!(t.get(&[-1, -1]), &r(5, 6));
        assert_eq!(t.get(&[2, 4]), &r(1, 6));
        assert!(PeriodicTable::new(vec![2], vec![r(0, 1)]).is_err());
        assert!(PeriodicTable::new(vec![1], vec![r(1, 1)]).is_err());
    }

    #[test]
    fn dim2_normalization() {
        let row = Dim2Form {
            orientation: Orientation::RowShifted,
            alpha: r(1, 3),
            beta: PeriodicTable::sequence(vec![r(1, 2), r(1, 2)]),
        };
        let n = row.normalized();
        assert_eq!(n.orientation, Orientation::ColumnShifted);
        assert_eq!(n.alpha, r(1, 2));
        assert_eq!(n.beta.values, vec![r(1, 3)]);
    }

    #[test]
    fn dim3_normalization_merges_constant_b_rows() {
        let f = Dim3Form {
            partition: vec![SliceClass::B, SliceClass::B],
            alpha0: vec![r(0, 1); 2],
            alpha1: PeriodicTable::zeros(2),
            beta0: vec![r(1, 4), r(1, 4)],
            beta1: PeriodicTable::new(vec![1, 2], vec![r(1, 2), r(1, 2)]).unwrap(),
        };
        let n = f.normalized();
        assert_eq!(n.partition, vec![SliceClass::A]);
        assert_eq!(n.alpha0, vec![r(1, 2)]);
        assert_eq!(n.alpha1.values, vec![r(1, 4)]);
        assert_eq!(n.beta1.periods, vec![1, 1]);
    }

    #[test]
    fn form_spec_json_shape() {
        let spec = FormSpec::Dim1(Dim1Form { alpha: r(1, 3) });
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"kind":"dim1","alpha":"1/3"}"#);
        let back: FormSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
    }
}
