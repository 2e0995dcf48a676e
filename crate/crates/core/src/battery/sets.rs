//! Seeded generators of periodic sets and catalog forms.
//!
//! Every generated value is a multiple of `1/den`, so sums and differences
//! keep denominators dividing `den`.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linear::{RatMat, RatVec, Rational};
use crate::lowdim::{
    build_tower, Dim1Form, Dim2Form, Dim3Form, Orientation, PeriodicTable, SliceClass, TowerSpec,
};
use crate::periodic::{for_each_mixed_radix, make_periodic_set, PeriodicSet};

/// `j/den ∈ [0,1)`.
pub fn unit_fraction<R: Rng>(rng: &mut R, den: i64) -> Rational {
    Rational::frac(rng.gen_range(0..den), den)
}

/// `j/den ∈ [−bound, bound]`.
pub fn bounded_fraction<R: Rng>(rng: &mut R, den: i64, bound: i64) -> Rational {
    Rational::frac(rng.gen_range(-bound * den..=bound * den), den)
}

fn table<R: Rng>(rng: &mut R, periods: Vec<usize>, den: i64) -> PeriodicTable {
    let len = periods.iter().product();
    let values = (0..len).map(|_| unit_fraction(rng, den)).collect();
    PeriodicTable { periods, values }
}

pub fn random_dim1<R: Rng>(rng: &mut R, den: i64) -> Dim1Form {
    Dim1Form {
        alpha: unit_fraction(rng, den),
    }
}

pub fn random_dim2<R: Rng>(rng: &mut R, den: i64, max_period: usize) -> Dim2Form {
    let orientation = if rng.gen_bool(0.5) {
        Orientation::ColumnShifted
    } else {
        Orientation::RowShifted
    };
    let p = rng.gen_range(1..=max_period);
    Dim2Form {
        orientation,
        alpha: unit_fraction(rng, den),
        beta: table(rng, vec![p], den),
    }
}

/// Offsets number `P·Q²` with `P ≤ max_slices` and `Q ≤ max_width`.
pub fn random_dim3<R: Rng>(rng: &mut R, den: i64, max_slices: usize, max_width: usize) -> Dim3Form {
    let p = rng.gen_range(1..=max_slices);
    let partition: Vec<SliceClass> = (0..p)
        .map(|_| if rng.gen_bool(0.5) { SliceClass::A } else { SliceClass::B })
        .collect();
    let qa = rng.gen_range(1..=max_width);
    let qb = rng.gen_range(1..=max_width);
    Dim3Form {
        alpha0: (0..p).map(|_| unit_fraction(rng, den)).collect(),
        beta0: (0..p).map(|_| unit_fraction(rng, den)).collect(),
        alpha1: table(rng, vec![p, qa], den),
        beta1: table(rng, vec![p, qb], den),
        partition,
    }
}

/// Tower in dimension `d` whose offset count stays at or below `max_offsets`.
pub fn random_tower<R: Rng>(rng: &mut R, d: usize, den: i64, max_offsets: usize) -> TowerSpec {
    let mut axis_periods = vec![1usize; d.saturating_sub(1)];
    let mut budget = max_offsets.max(1);
    for p in axis_periods.iter_mut() {
        *p = rng.gen_range(1..=budget.min(4));
        budget /= *p;
    }
    let betas = (0..d.saturating_sub(1))
        .map(|j| table(rng, axis_periods[..=j].to_vec(), den))
        .collect();
    TowerSpec {
        alpha: unit_fraction(rng, den),
        betas,
    }
}

/// Lower-triangular `R` with positive diagonal.
pub fn random_triangular_lattice<R: Rng>(rng: &mut R, d: usize, den: i64) -> RatMat {
    let mut r = RatMat::zeros(d, d);
    for i in 0..d {
        for j in 0..i {
            r[(i, j)] = bounded_fraction(rng, den, 1);
        }
        r[(i, i)] = Rational::frac(rng.gen_range(1..=2 * den), den);
    }
    r
}

/// Offsets with coordinates in `[0, 2)`.
pub fn random_offsets<R: Rng>(rng: &mut R, d: usize, count: usize, den: i64) -> Vec<RatVec> {
    (0..count)
        .map(|_| {
            (0..d)
                .map(|_| Rational::frac(rng.gen_range(0..2 * den), den))
                .collect()
        })
        .collect()
}

/// Adds `shift` to coordinate `coord` of offset `which`.
pub fn perturb(ps: &PeriodicSet, which: usize, coord: usize, shift: &Rational) -> PeriodicSet {
    let mut offsets = ps.offsets().to_vec();
    offsets[which][coord] = &offsets[which][coord] + shift;
    make_periodic_set(ps.lattice(), &offsets).expect("same lattice, same dimension")
}

/// The same point set written over the lattice `factor·R`.
pub fn refine_lattice(ps: &PeriodicSet, factor: usize) -> PeriodicSet {
    let d = ps.dim();
    let mut offsets = Vec::with_capacity(ps.offsets().len() * factor.pow(d as u32));
    for_each_mixed_radix(&vec![factor; d], |k| {
        let k: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
        let shift = ps.lattice().mul_int_vec(&k);
        offsets.extend(ps.offsets().iter().map(|l| l + &shift));
    });
    let scale = Rational::from_int(factor as i64);
    make_periodic_set(&ps.lattice().scale(&scale), &offsets).expect("nonsingular lattice")
}

fn random_permutation<R: Rng>(rng: &mut R, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.shuffle(rng);
    p
}

/// Mixed population for the classify-versus-raster comparison: roughly a
/// third tilings (towers, permuted and translated), a quarter perturbed
/// tilings, the rest general triangular lattices with random offsets.
/// Denominators stay `≤ max_den` and offset counts `≤ max_offsets`.
pub fn random_desk_set<R: Rng>(rng: &mut R, max_den: i64, max_offsets: usize) -> PeriodicSet {
    let d = rng.gen_range(1..=3);
    let den = rng.gen_range(1..=max_den);
    let roll = rng.gen_range(0..100);
    if roll < 60 {
        let spec = random_tower(rng, d, den, max_offsets);
        let tower = build_tower(&spec).expect("small tower");
        let tower = tower
            .permute_coordinates(&random_permutation(rng, d))
            .expect("valid permutation");
        let shift: RatVec = (0..d).map(|_| unit_fraction(rng, den)).collect();
        let tower = tower.translate(&shift).expect("same dimension");
        if roll < 35 {
            return tower;
        }
        let which = rng.gen_range(0..tower.offsets().len());
        let coord = rng.gen_range(0..d);
        let step = Rational::frac(rng.gen_range(1..den.max(2)), den);
        return perturb(&tower, which, coord, &step);
    }
    let r = random_triangular_lattice(rng, d, den);
    let count = rng.gen_range(1..=max_offsets);
    let offsets = random_offsets(rng, d, count, den);
    make_periodic_set(&r, &offsets).expect("nonsingular triangular lattice")
}
