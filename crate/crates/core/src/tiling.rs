//! Exact rasterized tiling oracle.
//!
//! With `q` the common denominator of `R` and the offsets, every cube
//! `I^d + l` is a union of `q^d` grid cells of side `1/q`, indexed by integer
//! vectors. The cubes tile along `Λ` iff every class of `Z^d / (qR)·Z^d` is
//! hit by exactly one cell. Classes are encoded through the Smith form
//! `U·(qR)·V = S` as `(U·x mod s_i)_i`, flattened row-major (mixed radix,
//! last coordinate fastest).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{common_denominator, smith_normal_form, Rational};
use crate::periodic::{for_each_mixed_radix, PeriodicSet};

/// Default cap on grid cells / quotient group size.
pub const DEFAULT_CELL_CAP: u64 = 100_000_000;

const PARALLEL_GROUP_LIMIT: u64 = 1 << 20;

/// Cell counts per element of `Z^d / (qR)·Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGrid {
    pub q: u64,
    pub group_order: u64,
    /// Smith diagonal of `qR`; element coordinates live in `Z/s_1 × … × Z/s_d`.
    pub smith_diagonal: Vec<u64>,
    pub multiplicity: Vec<u32>,
    pub cell_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub q: u64,
    pub group_order: u64,
    pub cell_count: u64,
    pub uncovered: u64,
    pub overlapped: u64,
    pub max_multiplicity: u32,
}

impl QuotientGrid {
    pub fn is_tiling(&self) -> bool {
        self.cell_count == self.group_order && self.multiplicity.iter().all(|&m| m == 1)
    }

    pub fn summary(&self) -> GridSummary {
        GridSummary {
            q: self.q,
            group_order: self.group_order,
            cell_count: self.cell_count,
            uncovered: self.multiplicity.iter().filter(|&&m| m == 0).count() as u64,
            overlapped: self.multiplicity.iter().filter(|&&m| m > 1).count() as u64,
            max_multiplicity: self.multiplicity.iter().copied().max().unwrap_or(0),
        }
    }

    /// `{element_index: count}` for every group element.
    pub fn histogram(&self) -> BTreeMap<u64, u32> {
        self.multiplicity
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64, m))
            .collect()
    }

    pub fn histogram_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .multiplicity
            .iter()
            .enumerate()
            .map(|(i, &m)| (i.to_string(), serde_json::Value::from(m)))
            .collect();
        serde_json::Value::Object(map).to_string()
    }
}

/// Rasterizes at the minimal grid `q`.
pub fn rasterized_tiling_check(ps: &PeriodicSet, cell_cap: u64) -> Result<(bool, QuotientGrid)> {
    rasterize(ps, 1, cell_cap)
}

/// Rasterizes at grid `refine · q`; any `refine >= 1` gives the same verdict.
pub fn rasterize(ps: &PeriodicSet, refine: u64, cell_cap: u64) -> Result<(bool, QuotientGrid)> {
    let d = ps.dim();
    let base_q = common_denominator(
        ps.lattice()
            .entries()
            .iter()
            .chain(ps.offsets().iter().flat_map(|l| l.iter())),
    );
    let q = base_q * BigInt::from(refine.max(1));
    let qr = ps.lattice().scale(&Rational::from_int(q.clone()));
    let qr = qr.to_int().expect("q clears all denominators");

    let group_order = qr.det().abs();
    let cells = num_traits::pow(q.clone(), d) * BigInt::from(ps.offsets().len());
    let biggest = group_order.clone().max(cells.clone());
    if biggest > BigInt::from(cell_cap) {
        return Err(Error::budget("rasterized_tiling_check", biggest, cell_cap));
    }
    let group_order = group_order.to_u64().expect("bounded by cap");
    let cell_count = cells.to_u64().expect("bounded by cap");
    let q_small = q.to_usize().expect("bounded by cap");

    let dec = smith_normal_form(&qr);
    let diag: Vec<u64> = dec
        .diagonal()
        .iter()
        .map(|s| s.to_u64().expect("bounded by cap"))
        .collect();
    let moduli: Vec<BigInt> = diag.iter().map(|&s| BigInt::from(s)).collect();
    let reduce = |v: Vec<BigInt>| -> Vec<u64> {
        v.iter()
            .zip(&moduli)
            .map(|(x, s)| x.mod_floor(s).to_u64().unwrap())
            .collect()
    };

    // U·c mod S for every cell corner c ∈ [0, q)^d
    let mut cell_residues: Vec<Vec<u64>> = Vec::new();
    for_each_mixed_radix(&vec![q_small; d], |c| {
        let c: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        cell_residues.push(reduce(dec.u.mul_vec(&c)));
    });
    let offset_residues: Vec<Vec<u64>> = ps
        .offsets()
        .iter()
        .map(|l| {
            let x: Vec<BigInt> = l
                .iter()
                .map(|c| (c * &Rational::from_int(q.clone())).to_integer().unwrap())
                .collect();
            reduce(dec.u.mul_vec(&x))
        })
        .collect();

    let index_of = |a: &[u64], b: &[u64]| -> usize {
        let mut idx: u64 = 0;
        for i in 0..d {
            idx = idx * diag[i] + (a[i] + b[i]) % diag[i];
        }
        idx as usize
    };
    let size = group_order as usize;
    let mark = |hist: &mut Vec<u32>, base: &Vec<u64>| {
        for c in &cell_residues {
            hist[index_of(base, c)] += 1;
        }
    };

    let multiplicity = if group_order <= PARALLEL_GROUP_LIMIT {
        offset_residues
            .par_iter()
            .fold(
                || vec![0u32; size],
                |mut hist, base| {
                    mark(&mut hist, base);
                    hist
                },
            )
            .reduce(
                || vec![0u32; size],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    } else {
        let mut hist = vec![0u32; size];
        for base in &offset_residues {
            mark(&mut hist, base);
        }
        hist
    };

    let grid = QuotientGrid {
        q: q.to_u64().unwrap(),
        group_order,
        smith_diagonal: diag,
        multiplicity,
        cell_count,
    };
    Ok((grid.is_tiling(), grid))
}
