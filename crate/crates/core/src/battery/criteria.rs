use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::measures::{
    find_spectrum, random_function, random_measure_pair, random_spectral_pair, random_subset,
};
use super::sets::{
    perturb, random_desk_set, random_dim1, random_dim2, random_dim3, refine_lattice,
};
use crate::lca::{
    is_spectral_pair_measures, is_tiling_pair_measures, reflect_measure, uncertainty_report,
    FiniteGroup, Measure, UncertaintyReport,
};
use crate::linear::{RatMat, RatVec, Rational};
use crate::lowdim::{build_1d, build_2d, build_3d, recognize, CatalogForm};
use crate::periodic::{classify_pair, make_periodic_set, PairStatus, PeriodicSet, DEFAULT_WORK_CAP};
use crate::tiling::{rasterized_tiling_check, DEFAULT_CELL_CAP};
use crate::zeroset::{eval_f_cube, in_zero_set};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {} {} [{:.2}s] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.name,
            self.detail
        )
    }
}

pub const NAMES: [&str; 8] = [
    "classify agrees with rasterized tiling at desk scale",
    "catalog soundness, round trip and 1/7 perturbations",
    "zero set matches vanishing of the cube transform",
    "ten-dimensional 1024-offset tiling",
    "four-fold and swap symmetry of measure pair verdicts",
    "atom law for spectra",
    "uncertainty bound",
    "measure and set tiling bridge",
];

fn stream(seed: u64, criterion: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
    rng.set_stream(criterion);
    rng
}

fn report(id: u8, start: Instant, passed: bool, detail: String) -> CriterionReport {
    CriterionReport {
        id,
        name: NAMES[id as usize - 1],
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub const DESK_SAMPLES: u64 = 200;
pub const DESK_TIME_LIMIT: Duration = Duration::from_secs(60);

pub fn desk_scale(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let outcomes: Vec<Result<(bool, bool), String>> = (0..DESK_SAMPLES)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 1, t);
            let ps = random_desk_set(&mut rng, 4, 8);
            let verdict = classify_pair(&ps, DEFAULT_WORK_CAP).map_err(|e| e.to_string())?;
            let (tiles, _) =
                rasterized_tiling_check(&ps, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
            Ok((verdict.is_spectral(), tiles))
        })
        .collect();
    let mut disagreements = 0;
    let mut tilings = 0;
    let mut errors = Vec::new();
    for o in outcomes {
        match o {
            Ok((spectral, tiles)) => {
                disagreements += usize::from(spectral != tiles);
                tilings += usize::from(tiles);
            }
            Err(e) => errors.push(e),
        }
    }
    let elapsed = start.elapsed();
    let passed = disagreements == 0 && errors.is_empty() && elapsed < DESK_TIME_LIMIT;
    report(
        1,
        start,
        passed,
        format!(
            "{DESK_SAMPLES} sets, {tilings} tilings, {disagreements} disagreements, {} errors",
            errors.len()
        ),
    )
}

fn built_form(rng: &mut ChaCha8Rng, d: usize) -> (PeriodicSet, CatalogForm) {
    let den = rng.gen_range(1..=6);
    match d {
        1 => {
            let f = random_dim1(rng, den);
            (build_1d(&f).expect("valid form"), CatalogForm::Dim1(f))
        }
        2 => {
            let f = random_dim2(rng, den, 4);
            (build_2d(&f).expect("valid form"), CatalogForm::Dim2(f.normalized()))
        }
        _ => {
            let f = random_dim3(rng, den, 3, 3);
            (build_3d(&f).expect("valid form"), CatalogForm::Dim3(f.normalized()))
        }
    }
}

pub const FORMS_PER_DIMENSION: u64 = 100;
pub const PERTURBATIONS: u64 = 100;

fn check_form(seed: u64, d: usize, t: u64) -> Result<(), String> {
    let mut rng = stream(seed, 2, t * 3 + d as u64);
    let (ps, expected) = built_form(&mut rng, d);
    if classify_pair(&ps, DEFAULT_WORK_CAP).map_err(|e| e.to_string())?.status
        != PairStatus::SpectralAndTiling
    {
        return Err(format!("built form not spectral: {ps:?}"));
    }
    if !rasterized_tiling_check(&ps, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?.0 {
        return Err(format!("built form not a tiling: {ps:?}"));
    }
    let rec = recognize(&ps, DEFAULT_WORK_CAP).map_err(|e| e.to_string())?;
    let identity: Vec<usize> = (0..d).collect();
    if rec.form != expected || rec.permutation != identity || !rec.translation.is_zero() {
        return Err(format!("recognized {:?}, expected {expected:?}", rec.form));
    }
    Ok(())
}

/// Perturbs one offset of the form written over `2R`: no other cube of the
/// moved coset lies within one unit along the shifted axis, so the move
/// always creates an overlap.
fn check_perturbation(seed: u64, t: u64) -> Result<(), String> {
    let mut rng = stream(seed, 2, 10_000 + t);
    let d = rng.gen_range(1..=3);
    let (built, _) = built_form(&mut rng, d);
    let ps = refine_lattice(&built, 2);
    let which = rng.gen_range(0..ps.offsets().len());
    let coord = rng.gen_range(0..d);
    let moved = perturb(&ps, which, coord, &Rational::frac(1, 7));
    let verdict = classify_pair(&moved, DEFAULT_WORK_CAP).map_err(|e| e.to_string())?;
    if verdict.status != PairStatus::NotPacking {
        return Err(format!("perturbation classified {:?}: {moved:?}", verdict.status));
    }
    let w = verdict.witness.ok_or("no witness")?;
    if !w.replays_against(moved.lattice()) || !moved.contains(&w.l) || !moved.contains(&w.l_prime)
    {
        return Err(format!("witness does not replay: {w:?}"));
    }
    Ok(())
}

pub fn catalog(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut failures: Vec<String> = (1..=3usize)
        .flat_map(|d| (0..FORMS_PER_DIMENSION).map(move |t| (d, t)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|(d, t)| check_form(seed, d, t).err())
        .collect();
    failures.extend(
        (0..PERTURBATIONS)
            .into_par_iter()
            .filter_map(|t| check_perturbation(seed, t).err())
            .collect::<Vec<_>>(),
    );
    let detail = match failures.first() {
        None => format!(
            "{} forms round-tripped, {PERTURBATIONS} perturbations rejected with witnesses",
            3 * FORMS_PER_DIMENSION
        ),
        Some(first) => format!("{} failures; first: {first}", failures.len()),
    };
    report(2, start, failures.is_empty(), detail)
}

pub const ZERO_SET_SAMPLES: u64 = 1000;

pub fn zero_set(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 3, 0);
    let mut mismatches = 0;
    let mut members = 0;
    for _ in 0..ZERO_SET_SAMPLES {
        let d = rng.gen_range(1..=3);
        let z: RatVec = (0..d)
            .map(|_| {
                let q = rng.gen_range(1..=6);
                Rational::frac(rng.gen_range(-3 * q..=3 * q), q)
            })
            .collect();
        let member = in_zero_set(&z);
        members += usize::from(member);
        if member != (eval_f_cube(&z).norm() < 1e-9) {
            mismatches += 1;
        }
    }
    let half = eval_f_cube(&RatVec::from_fracs(&[(1, 2)])).norm();
    let half_error = (half - 2.0 / PI).abs();
    report(
        3,
        start,
        mismatches == 0 && half_error <= 1e-12,
        format!(
            "{ZERO_SET_SAMPLES} samples ({members} in the zero set), {mismatches} mismatches; \
             |F(1/2)| - 2/pi = {half_error:.1e}"
        ),
    )
}

pub const HIGH_DIM_TIME_LIMIT: Duration = Duration::from_secs(10);

/// `(2Z)^10 + {0,1}^10`.
pub fn doubled_cube_set() -> PeriodicSet {
    let d = 10;
    let offsets: Vec<RatVec> = (0..1u32 << d)
        .map(|bits| (0..d).map(|j| Rational::from_int((bits >> j) as i64 & 1)).collect())
        .collect();
    make_periodic_set(&RatMat::diag_ints(&[2; 10]), &offsets).expect("valid set")
}

pub fn high_dimension(_seed: u64) -> CriterionReport {
    let start = Instant::now();
    let ps = doubled_cube_set();
    let outcome = classify_pair(&ps, DEFAULT_WORK_CAP);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(v) => (
            v.status == PairStatus::SpectralAndTiling
                && ps.offsets().len() == 1024
                && elapsed < HIGH_DIM_TIME_LIMIT,
            format!("{} offsets, status {:?}", ps.offsets().len(), v.status),
        ),
        Err(e) => (false, e.to_string()),
    };
    report(4, start, passed, detail)
}

pub const SYMMETRY_SAMPLES: u64 = 200;

/// Verdicts for `(μ,ν)`, `(ν̃,μ)`, `(μ̃,ν̃)`, `(ν,μ̃)` and the swap `(ν,μ)`.
pub fn symmetry_verdicts(mu: &Measure, nu: &Measure) -> [bool; 5] {
    let (mu_r, nu_r) = (reflect_measure(mu), reflect_measure(nu));
    let v = |a: &Measure, b: &Measure| is_spectral_pair_measures(a, b).expect("same group");
    [v(mu, nu), v(&nu_r, mu), v(&mu_r, &nu_r), v(nu, &mu_r), v(nu, mu)]
}

pub fn symmetry(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let verdicts: Vec<[bool; 5]> = (0..SYMMETRY_SAMPLES)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 5, t);
            let (mu, nu) = random_measure_pair(&mut rng, 32);
            symmetry_verdicts(&mu, &nu)
        })
        .collect();
    let inconsistent = verdicts.iter().filter(|v| v.iter().any(|&b| b != v[0])).count();
    let spectral = verdicts.iter().filter(|v| v[0]).count();
    report(
        5,
        start,
        inconsistent == 0,
        format!("{SYMMETRY_SAMPLES} pairs ({spectral} spectral), {inconsistent} inconsistent"),
    )
}

pub const ATOM_SAMPLES: u64 = 300;

/// Candidate spectra with assorted atom weights; returns `(detected, violations)`.
fn atom_trial(seed: u64, t: u64) -> (usize, usize) {
    let mut rng = stream(seed, 6, t);
    let (mu, nu) = random_measure_pair(&mut rng, 32);
    let mass = mu.total_mass();
    let support = nu.support();
    let target = mass.recip();
    let mut weights = vec![
        target.clone(),
        &target * &Rational::from_int(2),
        &target * &Rational::frac(1, 2),
        Rational::frac(1, support.len().max(1) as i64),
        Rational::frac(rng.gen_range(1..=9), rng.gen_range(1..=9)),
    ];
    weights.dedup();
    let mut candidates: Vec<Measure> = weights
        .iter()
        .filter_map(|w| Measure::counting_on(mu.group(), &support, w.clone()).ok())
        .collect();
    candidates.push(nu);
    let (mut detected, mut violations) = (0, 0);
    for cand in candidates {
        if is_spectral_pair_measures(&mu, &cand).expect("same group") {
            detected += 1;
            if cand.support().iter().any(|&xi| cand.weight(xi) != &target) {
                violations += 1;
            }
        }
    }
    (detected, violations)
}

pub fn atom_law(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let (detected, violations) = (0..ATOM_SAMPLES)
        .into_par_iter()
        .map(|t| atom_trial(seed, t))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    report(
        6,
        start,
        violations == 0 && detected > 0,
        format!("{detected} spectral pairs detected, {violations} with atoms other than 1/mu(G)"),
    )
}

pub const UNCERTAINTY_TRIALS: u64 = 10_000;

/// Aggregate of seeded uncertainty trials.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TrialSummary {
    pub trials: u64,
    pub violations: u64,
    pub errors: u64,
    /// smallest `rhs − lhs` seen
    pub min_margin: f64,
    /// report attaining `min_margin`, first in trial order
    pub tightest: Option<UncertaintyReport>,
}

/// Runs `trials` random `(f, A, B)` checks on `pair`, or on fresh random
/// spectral pairs with `|G| ≤ 64` when `pair` is `None`.
pub fn uncertainty_trials(pair: Option<(&Measure, &Measure)>, trials: u64, seed: u64) -> TrialSummary {
    let results: Vec<Result<UncertaintyReport, String>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 7, t);
            let (mu, nu) = match pair {
                Some((mu, nu)) => (mu.clone(), nu.clone()),
                None => random_spectral_pair(&mut rng, 64),
            };
            let n = mu.group().order();
            let mut f = random_function(&mut rng, mu.group());
            if let Some(&first) = mu.support().first() {
                if mu.support().iter().all(|&x| f[x].norm() == 0.0) {
                    f[first] = Complex64::new(1.0, 0.0);
                }
            }
            let a = random_subset(&mut rng, n);
            let b = random_subset(&mut rng, n);
            uncertainty_report(&mu, &nu, &f, &a, &b).map_err(|e| e.to_string())
        })
        .collect();
    let mut summary = TrialSummary {
        trials,
        violations: 0,
        errors: 0,
        min_margin: f64::INFINITY,
        tightest: None,
    };
    for r in results {
        match r {
            Ok(report) => {
                summary.violations += u64::from(!report.holds);
                let margin = report.rhs - report.lhs;
                if margin < summary.min_margin {
                    summary.min_margin = margin;
                    summary.tightest = Some(report);
                }
            }
            Err(_) => summary.errors += 1,
        }
    }
    summary
}

pub fn uncertainty(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let summary = uncertainty_trials(None, UNCERTAINTY_TRIALS, seed);
    let (violations, errors) = (summary.violations, summary.errors);

    let z2 = FiniteGroup::cyclic(2).expect("small group");
    let delta0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let equality = uncertainty_report(
        &Measure::counting(&z2),
        &Measure::dual_haar(&z2),
        &delta0,
        &[0],
        &[0, 1],
    );
    let equality_ok = matches!(&equality, Ok(r)
        if (r.lhs - 1.0).abs() <= f64::EPSILON && (r.rhs - 1.0).abs() <= f64::EPSILON);
    report(
        7,
        start,
        violations == 0 && errors == 0 && equality_ok,
        format!(
            "{UNCERTAINTY_TRIALS} trials, {violations} violations, {errors} errors; \
             Z2 equality case {}",
            if equality_ok { "lhs = rhs = 1" } else { "failed" }
        ),
    )
}

/// Whether `Ω + L` covers `Z_n` exactly once, by direct counting.
pub fn exact_cover(n: usize, omega: &[usize], l: &[usize]) -> bool {
    let mut hits = vec![0u32; n];
    for &a in omega {
        for &b in l {
            hits[(a + b) % n] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

fn subset_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

#[derive(Default)]
struct BridgeTally {
    pairs: u64,
    mismatches: u64,
    tilings: u64,
    spectral: u64,
    swap_inconsistent: u64,
}

impl BridgeTally {
    fn merge(mut self, o: BridgeTally) -> BridgeTally {
        self.pairs += o.pairs;
        self.mismatches += o.mismatches;
        self.tilings += o.tilings;
        self.spectral += o.spectral;
        self.swap_inconsistent += o.swap_inconsistent;
        self
    }
}

fn bridge_pair(group: &FiniteGroup, omega: &[usize], l: &[usize], tally: &mut BridgeTally) {
    let n = group.order();
    let counting = |s: &[usize]| Measure::counting_on(group, s, Rational::one()).expect("valid");
    let by_measure = is_tiling_pair_measures(&counting(omega), &counting(l)).expect("same group");
    let by_cover = exact_cover(n, omega, l);
    tally.pairs += 1;
    tally.mismatches += u64::from(by_measure != by_cover);
    if by_cover && omega.len() * l.len() == n {
        tally.tilings += 1;
        let spectrum = find_spectrum(group, omega).unwrap_or_else(|| (0..omega.len()).collect());
        let nu = Measure::counting_on(group, &spectrum, Rational::frac(1, omega.len() as i64))
            .expect("valid");
        let mu = counting(omega);
        let forward = is_spectral_pair_measures(&mu, &nu).expect("same group");
        let backward = is_spectral_pair_measures(&nu, &mu).expect("same group");
        tally.spectral += u64::from(forward);
        tally.swap_inconsistent += u64::from(forward != backward);
    }
}

pub const EXHAUSTIVE_LIMIT: usize = 8;
pub const SAMPLED_PAIRS: u64 = 3000;

pub fn tiling_bridge(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut tally = BridgeTally::default();
    for n in 1..=EXHAUSTIVE_LIMIT {
        let group = FiniteGroup::cyclic(n as u64).expect("small group");
        let part = (1u32..1 << n)
            .into_par_iter()
            .fold(BridgeTally::default, |mut acc, a| {
                let omega = subset_of(a, n);
                for b in 1u32..1 << n {
                    bridge_pair(&group, &omega, &subset_of(b, n), &mut acc);
                }
                acc
            })
            .reduce(BridgeTally::default, BridgeTally::merge);
        tally = tally.merge(part);
    }
    for n in EXHAUSTIVE_LIMIT + 1..=12 {
        let group = FiniteGroup::cyclic(n as u64).expect("small group");
        let part = (0..SAMPLED_PAIRS)
            .into_par_iter()
            .fold(BridgeTally::default, |mut acc, t| {
                let mut rng = stream(seed, 8, t * 16 + n as u64);
                let (omega, l) = sampled_bridge_pair(&mut rng, n);
                bridge_pair(&group, &omega, &l, &mut acc);
                acc
            })
            .reduce(BridgeTally::default, BridgeTally::merge);
        tally = tally.merge(part);
    }
    report(
        8,
        start,
        tally.mismatches == 0 && tally.swap_inconsistent == 0 && tally.tilings > 0,
        format!(
            "{} pairs, {} mismatches, {} tilings ({} with spectral candidate), {} swap inconsistencies",
            tally.pairs, tally.mismatches, tally.tilings, tally.spectral, tally.swap_inconsistent
        ),
    )
}

/// Half uniform random subsets, half translated and dilated factorizations `n = a·b`.
fn sampled_bridge_pair(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    let random = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        loop {
            let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if !s.is_empty() {
                return s;
            }
        }
    };
    if rng.gen_bool(0.5) {
        return (random(rng), random(rng));
    }
    let divisors: Vec<usize> = (1..=n).filter(|a| n.is_multiple_of(*a)).collect();
    let a = divisors[rng.gen_range(0..divisors.len())];
    let b = n / a;
    let units: Vec<usize> = (1..n.max(2)).filter(|&u| num_integer::gcd(u, n) == 1).collect();
    let u = units[rng.gen_range(0..units.len())];
    let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let mut omega: Vec<usize> = (0..a).map(|i| (u * i + s) % n).collect();
    let mut l: Vec<usize> = (0..b).map(|j| (u * a * j + t) % n).collect();
    omega.sort_unstable();
    l.sort_unstable();
    if rng.gen_bool(0.3) {
        // occasionally break the factorization
        let k = rng.gen_range(0..l.len());
        l[k] = (l[k] + 1) % n;
        l.sort_unstable();
        l.dedup();
    }
    (omega, l)
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => desk_scale(seed),
        2 => catalog(seed),
        3 => zero_set(seed),
        4 => high_dimension(seed),
        5 => symmetry(seed),
        6 => atom_law(seed),
        7 => uncertainty(seed),
        8 => tiling_bridge(seed),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=8).filter_map(|id| run_criterion(id, seed)).collect()
}
