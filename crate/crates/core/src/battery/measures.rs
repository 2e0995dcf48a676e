//! Seeded generators of finite groups, measures and spectral pairs.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::lca::{is_spectral_pair_measures, FiniteGroup, Measure};
use crate::linear::Rational;

/// A product of one or two cyclic groups of order at most `max_order`.
pub fn random_group<R: Rng>(rng: &mut R, max_order: u64) -> FiniteGroup {
    loop {
        let a = rng.gen_range(1..=max_order);
        let orders = if rng.gen_bool(0.4) && a <= max_order / 2 {
            vec![a, rng.gen_range(2..=max_order / a)]
        } else {
            vec![a]
        };
        if let Ok(g) = FiniteGroup::new(orders) {
            return g;
        }
    }
}

/// Subgroup generated by `gens`.
pub fn subgroup_generated(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::from([0usize]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = group.add(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `H^⊥ = {ξ : ⟨h, ξ⟩ = 1 for all h ∈ H}`, decided on exact phases.
pub fn annihilator(group: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    (0..group.order())
        .filter(|&xi| h.iter().all(|&x| group.pairing_phase(x, xi) == 0))
        .collect()
}

fn translate(group: &FiniteGroup, set: &[usize], by: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&x| group.add(x, by)).collect();
    out.sort_unstable();
    out
}

/// One random element from each coset of `k`.
fn coset_representatives<R: Rng>(rng: &mut R, group: &FiniteGroup, k: &[usize]) -> Vec<usize> {
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for x in 0..group.order() {
        if covered[x] {
            continue;
        }
        let coset = translate(group, k, x);
        coset.iter().for_each(|&y| covered[y] = true);
        reps.push(*coset.choose(rng).expect("nonempty coset"));
    }
    reps.sort_unstable();
    reps
}

/// `c·1_{x + H}` with spectrum `(1/(c|H|))·1_Λ`, `Λ` any transversal of `H^⊥`.
pub fn coset_pair<R: Rng>(rng: &mut R, group: &FiniteGroup) -> (Measure, Measure) {
    let n = group.order();
    let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect();
    let h = subgroup_generated(group, &gens);
    let perp = annihilator(group, &h);
    let c = Rational::frac(rng.gen_range(1..=3), rng.gen_range(1..=3));
    let omega = translate(group, &h, rng.gen_range(0..n));
    let spectrum = coset_representatives(rng, group, &perp);
    let w = (&c * &Rational::from_int(h.len() as i64)).recip();
    (
        Measure::counting_on(group, &omega, c).expect("valid indices"),
        Measure::counting_on(group, &spectrum, w).expect("valid indices"),
    )
}

/// Lexicographically first `Λ ∋ 0` with `|Λ| = |Ω|` making
/// `(1_Ω, (1/|Ω|)·1_Λ)` spectral.
pub fn find_spectrum(group: &FiniteGroup, omega: &[usize]) -> Option<Vec<usize>> {
    let k = omega.len();
    if k == 0 {
        return None;
    }
    let mu = Measure::counting_on(group, omega, Rational::one()).ok()?;
    let w = Rational::frac(1, k as i64);
    let rest: Vec<usize> = (1..group.order()).collect();
    let mut chosen = vec![0usize];
    search_spectrum(group, &mu, &w, &rest, 0, k, &mut chosen)
}

fn search_spectrum(
    group: &FiniteGroup,
    mu: &Measure,
    w: &Rational,
    rest: &[usize],
    start: usize,
    k: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == k {
        let nu = Measure::counting_on(group, chosen, w.clone()).ok()?;
        return is_spectral_pair_measures(mu, &nu)
            .ok()?
            .then(|| chosen.clone());
    }
    for i in start..rest.len() {
        if rest.len() - i < k - chosen.len() {
            break;
        }
        // exponentials indexed by a spectrum are pairwise orthogonal on Ω
        if chosen.iter().any(|&xi| !orthogonal_on(group, mu, xi, rest[i])) {
            continue;
        }
        chosen.push(rest[i]);
        let found = search_spectrum(group, mu, w, rest, i + 1, k, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn orthogonal_on(group: &FiniteGroup, mu: &Measure, xi: usize, eta: usize) -> bool {
    let s: Complex64 = mu
        .support()
        .iter()
        .map(|&x| group.pairing_index(x, xi) * group.pairing_index(x, eta).conj())
        .sum();
    s.norm() < 1e-9
}

/// `1_Ω` for a random small `Ω` in a cyclic group, with a searched spectrum when one exists.
pub fn searched_pair<R: Rng>(rng: &mut R, n: u64) -> Option<(Measure, Measure)> {
    let group = FiniteGroup::cyclic(n).ok()?;
    let size = rng.gen_range(1..=(n as usize).clamp(1, 4));
    let mut all: Vec<usize> = (0..group.order()).collect();
    all.shuffle(rng);
    let mut omega = all[..size].to_vec();
    omega.sort_unstable();
    let spectrum = find_spectrum(&group, &omega)?;
    let w = Rational::frac(1, size as i64);
    Some((
        Measure::counting_on(&group, &omega, Rational::one()).ok()?,
        Measure::counting_on(&group, &spectrum, w).ok()?,
    ))
}

/// A spectral pair on a group of order `≤ max_order` (coset or searched).
pub fn random_spectral_pair<R: Rng>(rng: &mut R, max_order: u64) -> (Measure, Measure) {
    if rng.gen_bool(0.3) {
        let n = rng.gen_range(2..=max_order.min(12));
        if let Some(pair) = searched_pair(rng, n) {
            return pair;
        }
    }
    let group = random_group(rng, max_order);
    coset_pair(rng, &group)
}

/// Breaks a pair in one of several ways; the result may still be spectral.
pub fn corrupt<R: Rng>(rng: &mut R, mu: &Measure, nu: &Measure) -> (Measure, Measure) {
    let group = mu.group();
    let n = group.order();
    let mut mu_w = mu.weights().to_vec();
    let mut nu_w = nu.weights().to_vec();
    match rng.gen_range(0..5) {
        0 => {
            // move one atom of ν
            let from = *nu.support().choose(rng).expect("nonempty support");
            let to = rng.gen_range(0..n);
            let w = std::mem::replace(&mut nu_w[from], Rational::zero());
            nu_w[to] = &nu_w[to] + &w;
        }
        1 => {
            let s = Rational::frac(rng.gen_range(1..=4), rng.gen_range(1..=4));
            nu_w.iter_mut().for_each(|w| *w = &*w * &s);
        }
        2 => {
            let at = *mu.support().choose(rng).expect("nonempty support");
            mu_w[at] = &mu_w[at] * &Rational::from_int(2);
        }
        3 => {
            let at = rng.gen_range(0..n);
            nu_w[at] = &nu_w[at] + &Rational::frac(1, rng.gen_range(1..=4));
        }
        _ => {
            // fresh random supports of equal size
            let k = mu.support().len();
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(rng);
            nu_w = vec![Rational::zero(); n];
            let w = Rational::frac(1, rng.gen_range(1..=8));
            for &xi in &all[..k] {
                nu_w[xi] = w.clone();
            }
        }
    }
    (
        Measure::new(group.clone(), mu_w).expect("nonnegative"),
        Measure::new(group.clone(), nu_w).expect("nonnegative"),
    )
}

/// Half spectral pairs, half corrupted ones.
pub fn random_measure_pair<R: Rng>(rng: &mut R, max_order: u64) -> (Measure, Measure) {
    let (mu, nu) = random_spectral_pair(rng, max_order);
    if rng.gen_bool(0.5) {
        (mu, nu)
    } else {
        corrupt(rng, &mu, &nu)
    }
}

/// A random function on `G`: dense, sparse, a single character, or an indicator.
pub fn random_function<R: Rng>(rng: &mut R, group: &FiniteGroup) -> Vec<Complex64> {
    let n = group.order();
    let zero = Complex64::new(0.0, 0.0);
    let mut f = vec![zero; n];
    match rng.gen_range(0..4) {
        0 => f.iter_mut().for_each(|v| {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }),
        1 => {
            for _ in 0..rng.gen_range(1..=3) {
                f[rng.gen_range(0..n)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        2 => {
            let xi = rng.gen_range(0..n);
            (0..n).for_each(|x| f[x] = group.pairing_index(x, xi));
        }
        _ => (0..n).for_each(|x| {
            if rng.gen_bool(0.5) {
                f[x] = Complex64::new(1.0, 0.0);
            }
        }),
    }
    f
}

/// Random subset; with some probability all of `G` or empty.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    match rng.gen_range(0..10) {
        0 => (0..n).collect(),
        1 => Vec::new(),
        _ => {
            let p = rng.gen_range(0.05..0.95);
            (0..n).filter(|_| rng.gen_bool(p)).collect()
        }
    }
}
