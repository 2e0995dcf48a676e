//! Periodic translation sets `Λ = L + R·Z^d` and the packing/spectral
//! classification for the unit cube.
//!
//! `packing_check` decides `R·k + (l − l') ∈ Z ∪ {0}` for every `k ∈ Z^d`
//! exactly: the set of integral coordinates of `R·k + δ` depends only on
//! `k mod M` (`M` = common denominator of `R`), so each residue class is
//! either an immediate violation (no integral coordinate), harmless (all
//! coordinates integral), or reduces to an integer affine system asking
//! whether every integral coordinate can vanish at once.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear::{
    common_denominator, rational_hermite_form, smith_normal_form, solve_integer_affine, IntMat,
    RatMat, RatVec, Rational, MAX_DIM,
};
use crate::zeroset::{in_zero_set, in_zero_set_or_origin};

/// Default cap on elementary checks for `packing_check`.
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;
/// Largest window `enumerate_window` will materialize.
pub const WINDOW_POINT_CAP: u64 = 1_000_000;

/// `Λ = offsets + R·Z^d` in canonical form.
///
/// Canonical means: `R` is the column Hermite form of its lattice, every
/// offset satisfies `R⁻¹·l ∈ [0,1)^d`, offsets are pairwise distinct modulo
/// the lattice and sorted lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct PeriodicSet {
    r: RatMat,
    r_inv: RatMat,
    offsets: Vec<RatVec>,
    coords: Vec<RatVec>,
}

impl std::fmt::Debug for PeriodicSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicSet")
            .field("R", &self.r)
            .field("offsets", &self.offsets)
            .finish()
    }
}

impl PeriodicSet {
    pub fn dim(&self) -> usize {
        self.r.rows()
    }

    pub fn lattice(&self) -> &RatMat {
        &self.r
    }

    pub fn lattice_inverse(&self) -> &RatMat {
        &self.r_inv
    }

    pub fn offsets(&self) -> &[RatVec] {
        &self.offsets
    }

    /// Offsets in lattice coordinates `R⁻¹·l ∈ [0,1)^d`, parallel to `offsets()`.
    pub fn lattice_coords(&self) -> &[RatVec] {
        &self.coords
    }

    pub fn det(&self) -> Rational {
        self.r.det()
    }

    /// `|L| / |det R|`.
    pub fn density(&self) -> Rational {
        Rational::from_int(self.offsets.len() as i64) / self.det().abs()
    }

    /// The integer lattice `Z^d`.
    pub fn integer_lattice(dim: usize) -> Result<Self> {
        make_periodic_set(&RatMat::identity(dim), &[RatVec::zeros(dim)])
    }

    pub fn translate(&self, t: &RatVec) -> Result<Self> {
        if t.dim() != self.dim() {
            return Err(Error::dims(self.dim(), t.dim()));
        }
        let shifted: Vec<RatVec> = self.offsets.iter().map(|l| l + t).collect();
        make_periodic_set(&self.r, &shifted)
    }

    /// Whether `p ∈ Λ`.
    pub fn contains(&self, p: &RatVec) -> bool {
        if p.dim() != self.dim() {
            return false;
        }
        let c = self.r_inv.mul_vec(p).fract();
        self.coords.contains(&c)
    }

    /// Reorders coordinates: output coordinate `i` is input coordinate `perm[i]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        let d = self.dim();
        if perm.len() != d || (0..d).any(|i| !perm.contains(&i)) {
            return Err(Error::InvalidForm(format!("{perm:?} is not a permutation")));
        }
        let mut r = RatMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                r[(i, j)] = self.r[(perm[i], j)].clone();
            }
        }
        let offsets: Vec<RatVec> = self
            .offsets
            .iter()
            .map(|l| perm.iter().map(|&p| l[p].clone()).collect())
            .collect();
        make_periodic_set(&r, &offsets)
    }

    /// Smallest positive `t_j` with `t_j·e_j` in the lattice, per axis.
    pub fn axis_periods(&self) -> Vec<Rational> {
        (0..self.dim())
            .map(|j| {
                let col = self.r_inv.column(j);
                let den = common_denominator(col.iter());
                let nums: Vec<BigInt> = col
                    .iter()
                    .map(|c| (c * &Rational::from_int(den.clone())).to_integer().unwrap())
                    .collect();
                let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                Rational::new(den, g).expect("nonsingular lattice has nonzero column")
            })
            .collect()
    }

    /// All points of `Λ` in the box `Π [0, periods_j)`.
    ///
    /// Each `periods_j·e_j` must lie in the lattice, so `Λ` is the union of
    /// these points translated by the diagonal lattice of the box.
    pub fn points_in_period_box(&self, periods: &[Rational], cap: u64) -> Result<Vec<RatVec>> {
        let d = self.dim();
        if periods.len() != d {
            return Err(Error::dims(d, periods.len()));
        }
        // M = R⁻¹·diag(periods) is integral; Λ ∩ box ≅ offsets × Z^d / M·Z^d
        let m = self.r_inv.mul(&RatMat::diag(periods));
        let m = m.to_int().ok_or_else(|| {
            Error::InvalidForm("box periods are not lattice vectors".into())
        })?;
        let count = m.det().abs() * BigInt::from(self.offsets.len());
        if count > BigInt::from(cap) {
            return Err(Error::budget("period box", count, cap));
        }
        let reps = coset_representatives(&m);
        let mut points = BTreeSet::new();
        for l in &self.offsets {
            for x in &reps {
                let p = l + &self.r.mul_int_vec(x);
                let reduced: RatVec = p
                    .iter()
                    .zip(periods)
                    .map(|(c, t)| {
                        let q = (c / t).floor();
                        c - &(t * &Rational::from_int(q))
                    })
                    .collect();
                points.insert(reduced);
            }
        }
        Ok(points.into_iter().collect())
    }

    /// Whether two periodic sets describe the same point set.
    pub fn same_set(&self, other: &PeriodicSet, cap: u64) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        let periods: Vec<Rational> = self
            .axis_periods()
            .iter()
            .zip(other.axis_periods())
            .map(|(a, b)| rational_lcm(a, &b))
            .collect();
        Ok(self.points_in_period_box(&periods, cap)?
            == other.points_in_period_box(&periods, cap)?)
    }
}

/// Least positive common multiple of two positive rationals.
pub fn rational_lcm(a: &Rational, b: &Rational) -> Rational {
    let x = a.numer() * b.denom();
    let y = b.numer() * a.denom();
    Rational::new(x.lcm(&y), a.denom() * b.denom()).expect("positive denominators")
}

/// Representatives of `Z^d / M·Z^d` for a nonsingular integer matrix `M`.
pub(crate) fn coset_representatives(m: &IntMat) -> Vec<Vec<BigInt>> {
    let dec = smith_normal_form(m);
    let u_inv = dec
        .u
        .to_rat()
        .inverse()
        .expect("unimodular")
        .to_int()
        .expect("unimodular inverse is integral");
    let diag: Vec<usize> = dec
        .diagonal()
        .iter()
        .map(|s| s.to_usize().expect("box size already bounded"))
        .collect();
    let mut out = Vec::new();
    for_each_mixed_radix(&diag, |y| {
        let y: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        out.push(u_inv.mul_vec(&y));
    });
    out
}

/// Calls `f` for every vector in `Π [0, radix_i)`, last index fastest.
pub(crate) fn for_each_mixed_radix(radix: &[usize], mut f: impl FnMut(&[usize])) {
    if radix.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; radix.len()];
    loop {
        f(&idx);
        let mut pos = radix.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < radix[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Builds the canonical form of `offsets + R·Z^d`.
pub fn make_periodic_set(r: &RatMat, offsets: &[RatVec]) -> Result<PeriodicSet> {
    if !r.is_square() {
        return Err(Error::dims(r.rows(), r.cols()));
    }
    let d = r.rows();
    if d == 0 || d > MAX_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    if offsets.is_empty() {
        return Err(Error::InvalidForm("offset list is empty".into()));
    }
    if let Some(bad) = offsets.iter().find(|l| l.dim() != d) {
        return Err(Error::dims(d, bad.dim()));
    }
    if r.det().is_zero() {
        return Err(Error::SingularLattice);
    }
    let r = rational_hermite_form(r);
    let r_inv = r.inverse()?;
    let mut canon: BTreeSet<(RatVec, RatVec)> = BTreeSet::new();
    for l in offsets {
        let c = r_inv.mul_vec(l).fract();
        canon.insert((r.mul_vec(&c), c));
    }
    let (offsets, coords) = canon.into_iter().unzip();
    Ok(PeriodicSet {
        r,
        r_inv,
        offsets,
        coords,
    })
}

#[derive(Serialize, Deserialize)]
struct PeriodicSetRepr {
    dim: usize,
    #[serde(rename = "R")]
    r: RatMat,
    offsets: Vec<RatVec>,
}

impl Serialize for PeriodicSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PeriodicSetRepr {
            dim: self.dim(),
            r: self.r.clone(),
            offsets: self.offsets.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PeriodicSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PeriodicSetRepr::deserialize(deserializer)?;
        if repr.r.rows() != repr.dim {
            return Err(serde::de::Error::custom(Error::dims(repr.dim, repr.r.rows())));
        }
        make_periodic_set(&repr.r, &repr.offsets).map_err(serde::de::Error::custom)
    }
}

/// A lattice translate `R·k + δ` of an offset difference that leaves the zero set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingWitness {
    /// `δ = l − l'` for the two offsets below.
    pub delta: RatVec,
    #[serde(serialize_with = "ser_ints")]
    pub k: Vec<BigInt>,
    /// `R·k + δ`, which is nonzero and has no nonzero integer coordinate.
    pub point: RatVec,
    pub l: RatVec,
    pub l_prime: RatVec,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl PackingWitness {
    /// Recomputes `R·k + δ` and confirms it violates the zero-set condition.
    pub fn replays_against(&self, r: &RatMat) -> bool {
        let point = &r.mul_int_vec(&self.k) + &self.delta;
        point == self.point && !in_zero_set_or_origin(&point) && self.delta == &self.l - &self.l_prime
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingResult {
    pub holds: bool,
    pub witness: Option<PackingWitness>,
}

struct DiffClass {
    /// δ reduced into the fundamental domain of the lattice
    reduced: RatVec,
    /// `δ = reduced + R·shift`
    shift: Vec<BigInt>,
    i: usize,
    j: usize,
}

/// Decides `R·Z^d + (L − L) ⊂ Z ∪ {0}`.
pub fn packing_check(ps: &PeriodicSet, work_cap: u64) -> Result<PackingResult> {
    let d = ps.dim();
    let n = ps.offsets.len();
    let modulus = ps.r.common_denominator();
    let classes = num_traits::pow(modulus.clone(), d);
    let work = &classes * BigInt::from(n) * BigInt::from(n);
    if work > BigInt::from(work_cap) {
        return Err(Error::budget("packing_check", work, work_cap));
    }
    let m = modulus.to_usize().expect("bounded by work cap");

    let diffs = reduced_differences(ps);

    // fractional class data: R·r for every residue r ∈ [0, M)^d
    let mut residues: Vec<(Vec<BigInt>, RatVec)> = Vec::new();
    for_each_mixed_radix(&vec![m; d], |r| {
        let r: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
        let rr = ps.r.mul_int_vec(&r);
        residues.push((r, rr));
    });

    let violation = diffs.par_iter().find_map_first(|diff| {
        residues.iter().find_map(|(res, rr)| {
            class_violation(&ps.r, &modulus, res, rr, &diff.reduced).map(|k_red| (diff, k_red))
        })
    });

    let witness = violation.map(|(diff, k_red)| {
        let k: Vec<BigInt> = k_red.iter().zip(&diff.shift).map(|(a, b)| a - b).collect();
        let delta = &ps.offsets[diff.i] - &ps.offsets[diff.j];
        let point = &ps.r.mul_int_vec(&k) + &delta;
        PackingWitness {
            delta,
            k,
            point,
            l: ps.offsets[diff.i].clone(),
            l_prime: ps.offsets[diff.j].clone(),
        }
    });
    Ok(PackingResult {
        holds: witness.is_none(),
        witness,
    })
}

/// Offset differences `l_i − l_j` (`j <= i`), deduplicated modulo the lattice,
/// in first-seen order.
fn reduced_differences(ps: &PeriodicSet) -> Vec<DiffClass> {
    let q = common_denominator(ps.coords.iter().flat_map(|c| c.iter()));
    let qr = Rational::from_int(q.clone());
    let numerators: Vec<Vec<BigInt>> = ps
        .coords
        .iter()
        .map(|c| c.iter().map(|x| (x * &qr).to_integer().unwrap()).collect())
        .collect();

    let n = numerators.len();
    let mut seen: HashMap<Vec<BigInt>, ()> = HashMap::new();
    let mut firsts: Vec<(Vec<BigInt>, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            let key: Vec<BigInt> = numerators[i]
                .iter()
                .zip(&numerators[j])
                .map(|(a, b)| (a - b).mod_floor(&q))
                .collect();
            if seen.insert(key.clone(), ()).is_none() {
                firsts.push((key, i, j));
            }
        }
    }

    firsts
        .into_par_iter()
        .map(|(key, i, j)| {
            let gamma: RatVec = key
                .iter()
                .map(|x| Rational::new(x.clone(), q.clone()).unwrap())
                .collect();
            // c_i − c_j = γ + shift with shift ∈ {−1, 0}^d
            let shift: Vec<BigInt> = numerators[i]
                .iter()
                .zip(&numerators[j])
                .zip(&key)
                .map(|((a, b), g)| (a - b - g) / &q)
                .collect();
            DiffClass {
                reduced: ps.r.mul_vec(&gamma),
                shift,
                i,
                j,
            }
        })
        .collect()
}

/// For the residue class `k ≡ res (mod M)`, returns some `k` in it with
/// `R·k + δ` outside `Z ∪ {0}`, or `None` when the whole class is fine.
fn class_violation(
    r: &RatMat,
    modulus: &BigInt,
    res: &[BigInt],
    r_res: &RatVec,
    delta: &RatVec,
) -> Option<Vec<BigInt>> {
    let v = r_res + delta;
    let integral: Vec<usize> = (0..v.dim()).filter(|&j| v[j].is_integer()).collect();
    if integral.is_empty() {
        return Some(res.to_vec());
    }
    if integral.len() == v.dim() {
        // every point of the class is an integer vector: nonzero ones are in Z
        return None;
    }
    let rows: Vec<Vec<BigInt>> = integral
        .iter()
        .map(|&j| {
            let den = common_denominator(r.row(j).iter().chain(std::iter::once(&delta[j])));
            let scale = Rational::from_int(den);
            r.row(j)
                .iter()
                .map(|x| (x * &scale).to_integer().unwrap())
                .collect()
        })
        .collect();
    let b: Vec<BigInt> = integral
        .iter()
        .map(|&j| {
            let den = common_denominator(r.row(j).iter().chain(std::iter::once(&delta[j])));
            (-(&delta[j] * &Rational::from_int(den))).to_integer().unwrap()
        })
        .collect();
    let a = IntMat::from_rows(&rows).expect("rectangular");
    let sol = solve_integer_affine(&a, &b, modulus, res);
    sol.any_point().map(<[BigInt]>::to_vec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairStatus {
    SpectralAndTiling,
    PackingOnlyIncomplete,
    NotPacking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub status: PairStatus,
    /// `|L| / |det R|`
    pub density: Rational,
    pub offset_count: usize,
    pub det: Rational,
    pub witness: Option<PackingWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl PairVerdict {
    pub fn is_spectral(&self) -> bool {
        self.status == PairStatus::SpectralAndTiling
    }
}

/// Classifies `(I^d, Λ)`: `SpectralAndTiling` certifies both a spectral pair
/// and a tiling pair.
pub fn classify_pair(ps: &PeriodicSet, work_cap: u64) -> Result<PairVerdict> {
    let packing = packing_check(ps, work_cap)?;
    let det = ps.det().abs();
    let density = ps.density();
    let mut warnings = Vec::new();
    if !det.is_integer() {
        warnings.push(format!(
            "NonIntegerDensity: |det R| = {det} is not an integer, so |L| = |det R| is impossible"
        ));
    }
    let status = match (packing.holds, density == Rational::one()) {
        (true, true) => PairStatus::SpectralAndTiling,
        (true, false) => PairStatus::PackingOnlyIncomplete,
        (false, _) => PairStatus::NotPacking,
    };
    Ok(PairVerdict {
        status,
        density,
        offset_count: ps.offsets.len(),
        det,
        witness: packing.witness,
        warnings,
    })
}

/// Every `l + R·k` with `k ∈ [−radius, radius]^d`, sorted, with its offset index.
pub fn enumerate_window_labeled(ps: &PeriodicSet, radius: u32) -> Result<Vec<(RatVec, usize)>> {
    let d = ps.dim();
    let side = 2 * radius as usize + 1;
    let count = BigInt::from(side).pow(d as u32) * BigInt::from(ps.offsets.len());
    if count > BigInt::from(WINDOW_POINT_CAP) {
        return Err(Error::budget("enumerate_window", count, WINDOW_POINT_CAP));
    }
    let mut shifts = Vec::new();
    for_each_mixed_radix(&vec![side; d], |idx| {
        let k: Vec<BigInt> = idx
            .iter()
            .map(|&i| BigInt::from(i as i64 - radius as i64))
            .collect();
        shifts.push(ps.r.mul_int_vec(&k));
    });
    let mut pts: Vec<(RatVec, usize)> = ps
        .offsets
        .iter()
        .enumerate()
        .flat_map(|(i, l)| shifts.iter().map(move |s| (l + s, i)))
        .collect();
    pts.sort();
    Ok(pts)
}

pub fn enumerate_window(ps: &PeriodicSet, radius: u32) -> Result<Vec<RatVec>> {
    Ok(enumerate_window_labeled(ps, radius)?
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

/// True iff `v` is outside the zero set and nonzero.
pub fn violates_zero_set(v: &RatVec) -> bool {
    !v.is_zero() && !in_zero_set(v)
}
