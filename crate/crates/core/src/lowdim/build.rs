use num_integer::Integer;

use super::forms::{
    CrossProductSpec, Dim1Form, Dim2Form, Dim3Form, FormSpec, Orientation, SliceClass, TowerSpec,
};
use crate::error::{Error, Result};
use crate::linear::{RatMat, RatVec, Rational};
use crate::periodic::{
    classify_pair, for_each_mixed_radix, make_periodic_set, PairStatus, PeriodicSet,
    DEFAULT_WORK_CAP,
};

/// Largest offset list a constructor will materialize.
pub const OFFSET_CAP: u64 = 4096;

fn int(n: usize) -> Rational {
    Rational::from_int(n as i64)
}

fn check_offset_budget(what: &'static str, count: u64) -> Result<()> {
    if count > OFFSET_CAP {
        return Err(Error::budget(what, count, OFFSET_CAP));
    }
    Ok(())
}

pub fn build_1d(form: &Dim1Form) -> Result<PeriodicSet> {
    form.validate()?;
    make_periodic_set(&RatMat::identity(1), &[RatVec(vec![form.alpha.clone()])])
}

pub fn build_2d(form: &Dim2Form) -> Result<PeriodicSet> {
    form.validate()?;
    let p = form.beta.periods[0];
    check_offset_budget("build_2d", p as u64)?;
    let offsets: Vec<RatVec> = (0..p)
        .map(|m| {
            let lead = &form.alpha + &int(m);
            let beta = form.beta.get(&[m as i64]).clone();
            match form.orientation {
                Orientation::ColumnShifted => RatVec(vec![lead, beta]),
                Orientation::RowShifted => RatVec(vec![beta, lead]),
            }
        })
        .collect();
    let r = match form.orientation {
        Orientation::ColumnShifted => RatMat::diag_ints(&[p as i64, 1]),
        Orientation::RowShifted => RatMat::diag_ints(&[1, p as i64]),
    };
    make_periodic_set(&r, &offsets)
}

pub fn build_3d(form: &Dim3Form) -> Result<PeriodicSet> {
    form.validate()?;
    let p = form.slice_period();
    let q = form.alpha1.periods[1].lcm(&form.beta1.periods[1]);
    check_offset_budget("build_3d", (p * q * q) as u64)?;
    let mut offsets = Vec::with_capacity(p * q * q);
    for a in 0..p {
        let r = a % form.period();
        let x1 = int(a);
        for u in 0..q {
            for w in 0..q {
                let (ai, ui, wi) = (a as i64, u as i64, w as i64);
                let point = match form.partition[r] {
                    SliceClass::A => vec![
                        x1.clone(),
                        &form.alpha0[r] + &int(u),
                        form.alpha1.get(&[ai, ui]) + &int(w),
                    ],
                    SliceClass::B => vec![
                        x1.clone(),
                        form.beta1.get(&[ai, wi]) + &int(u),
                        &form.beta0[r] + &int(w),
                    ],
                };
                offsets.push(RatVec(point));
            }
        }
    }
    let (p, q) = (p as i64, q as i64);
    make_periodic_set(&RatMat::diag_ints(&[p, q, q]), &offsets)
}

pub fn build_tower(spec: &TowerSpec) -> Result<PeriodicSet> {
    spec.validate()?;
    let d = spec.dim();
    // period along axis i: lcm of every table's period at index i
    let periods: Vec<usize> = (0..d - 1)
        .map(|i| {
            spec.betas[i..]
                .iter()
                .fold(1usize, |acc, t| acc.lcm(&t.periods[i]))
        })
        .collect();
    let count = periods.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p as u64));
    match count {
        Some(c) => check_offset_budget("build_tower", c)?,
        None => return Err(Error::budget("build_tower", "overflow", OFFSET_CAP)),
    }
    let mut offsets = Vec::new();
    for_each_mixed_radix(&periods, |k| {
        let idx: Vec<i64> = k.iter().map(|&x| x as i64).collect();
        let mut point = Vec::with_capacity(d);
        point.push(&spec.alpha + &int(k.first().copied().unwrap_or(0)));
        for (j, table) in spec.betas.iter().enumerate() {
            let next = k.get(j + 1).copied().unwrap_or(0);
            point.push(table.get(&idx[..=j]) + &int(next));
        }
        offsets.push(RatVec(point));
    });
    if offsets.is_empty() {
        offsets.push(RatVec(vec![spec.alpha.clone()]));
    }
    let diag: Vec<i64> = periods.iter().map(|&p| p as i64).chain([1]).collect();
    make_periodic_set(&RatMat::diag_ints(&diag), &offsets)
}

/// Combines two spectral/tiling pairs into one of the summed dimension.
pub fn cross_product(spec: &CrossProductSpec) -> Result<PeriodicSet> {
    for side in [&spec.left, &spec.right] {
        if classify_pair(side, DEFAULT_WORK_CAP)?.status != PairStatus::SpectralAndTiling {
            return Err(Error::NotSpectral);
        }
    }
    let (d1, d2) = (spec.left.dim(), spec.right.dim());
    let count = (spec.left.offsets().len() * spec.right.offsets().len()) as u64;
    check_offset_budget("cross_product", count)?;
    // β entries keyed by the left offset they reduce to
    let mut shifts: Vec<Option<&RatVec>> = vec![None; spec.left.offsets().len()];
    for entry in &spec.beta {
        if entry.offset.dim() != d1 {
            return Err(Error::dims(d1, entry.offset.dim()));
        }
        if entry.shift.dim() != d2 {
            return Err(Error::dims(d2, entry.shift.dim()));
        }
        let reduced = make_periodic_set(spec.left.lattice(), std::slice::from_ref(&entry.offset))?;
        let slot = spec
            .left
            .offsets()
            .iter()
            .position(|l| l == &reduced.offsets()[0])
            .ok_or_else(|| {
                Error::InvalidForm(format!("beta offset {} is not in the left set", entry.offset))
            })?;
        match shifts[slot] {
            Some(prev) if prev != &entry.shift => {
                return Err(Error::InvalidForm(format!(
                    "conflicting beta values for offset {}",
                    entry.offset
                )))
            }
            _ => shifts[slot] = Some(&entry.shift),
        }
    }
    let mut offsets = Vec::with_capacity(count as usize);
    for (l1, shift) in spec.left.offsets().iter().zip(&shifts) {
        let shift = shift.ok_or_else(|| {
            Error::InvalidForm(format!("missing beta value for left offset {l1}"))
        })?;
        for l2 in spec.right.offsets() {
            offsets.push(l1.concat(&(shift + l2)));
        }
    }
    make_periodic_set(
        &RatMat::block_diag(spec.left.lattice(), spec.right.lattice()),
        &offsets,
    )
}

pub fn build(spec: &FormSpec) -> Result<PeriodicSet> {
    match spec {
        FormSpec::Dim1(f) => build_1d(f),
        FormSpec::Dim2(f) => build_2d(f),
        FormSpec::Dim3(f) => build_3d(f),
        FormSpec::Tower(t) => build_tower(t),
        FormSpec::CrossProduct(c) => cross_product(c),
    }
}
