use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spectile::battery::sets::{perturb, random_dim2, random_dim3, random_tower, refine_lattice};
use spectile::linear::{RatMat, RatVec, Rational};
use spectile::lowdim::{
    build, build_2d, build_3d, build_tower, cross_product, recognize, BetaEntry, CatalogForm,
    CrossProductSpec, FormSpec, PeriodicTable,
};
use spectile::periodic::{
    classify_pair, enumerate_window, make_periodic_set, PairStatus, PeriodicSet, DEFAULT_WORK_CAP,
};
use spectile::tiling::{rasterized_tiling_check, DEFAULT_CELL_CAP};
use spectile::zeroset::{diffs_in_zeroset, in_zero_set};

/// `j/6` in `[0, period)` with reduced denominator at most 3.
fn coordinate_values(period: i64) -> Vec<Rational> {
    (0..6 * period)
        .filter(|j| j % 2 == 0 || j % 3 == 0)
        .map(|j| Rational::frac(j, 6))
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `R = diag(p, q)` with `pq ≤ 4` and `pq` offsets with denominators
/// at most 3, the first fixed at the origin.
fn desk_plane_sets() -> Vec<PeriodicSet> {
    let mut out = Vec::new();
    for (p, q) in [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (4, 1), (1, 4), (2, 2)] {
        let r = RatMat::diag_ints(&[p, q]);
        let points: Vec<RatVec> = coordinate_values(p)
            .iter()
            .flat_map(|x| coordinate_values(q).into_iter().map(move |y| RatVec(vec![x.clone(), y])))
            .filter(|v| !v.is_zero())
            .collect();
        let extra = (p * q - 1) as usize;
        for combo in combinations(points.len(), extra) {
            let mut offsets = vec![RatVec::zeros(2)];
            offsets.extend(combo.iter().map(|&i| points[i].clone()));
            out.push(make_periodic_set(&r, &offsets).unwrap());
        }
    }
    out
}

#[test]
fn plane_desk_tilings_are_all_catalog_forms() {
    let sets = desk_plane_sets();
    assert!(sets.len() > 100_000);
    let tilings: usize = sets
        .par_iter()
        .map(|ps| {
            let verdict = classify_pair(ps, DEFAULT_WORK_CAP).unwrap();
            let (raster, _) = rasterized_tiling_check(ps, DEFAULT_CELL_CAP).unwrap();
            assert_eq!(verdict.is_spectral(), raster, "{ps:?}");
            if !raster {
                return 0;
            }
            let rec = recognize(ps, DEFAULT_WORK_CAP).unwrap();
            assert!(matches!(rec.form, CatalogForm::Dim2(_)), "{ps:?} gave {rec:?}");
            assert!(rec.rebuild().unwrap().same_set(ps, DEFAULT_WORK_CAP).unwrap());
            1
        })
        .sum();
    assert!(tilings > 0);
}

#[test]
fn seventh_shifts_agree_with_raster_and_fail_on_doubled_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let seventh = Rational::frac(1, 7);
    for _ in 0..40 {
        let ps = build_2d(&random_dim2(&mut rng, 3, 3)).unwrap();
        for which in 0..ps.offsets().len() {
            for coord in 0..2 {
                let shifted = perturb(&ps, which, coord, &seventh);
                let verdict = classify_pair(&shifted, DEFAULT_WORK_CAP).unwrap();
                let (raster, _) = rasterized_tiling_check(&shifted, DEFAULT_CELL_CAP).unwrap();
                assert_eq!(verdict.is_spectral(), raster);

                // moving one of two offsets that share a coset of R breaks packing
                let doubled = refine_lattice(&ps, 2);
                let broken = perturb(&doubled, which, coord, &seventh);
                assert_eq!(
                    classify_pair(&broken, DEFAULT_WORK_CAP).unwrap().status,
                    PairStatus::NotPacking
                );
            }
        }
    }
}

/// `{(n + α(m), m + β(n, l), l + γ(n, m))}` over one period `2Z³`.
fn layered_set(point: impl Fn(i64, i64, i64) -> [Rational; 3]) -> PeriodicSet {
    let mut offsets = Vec::new();
    for n in 0..2 {
        for m in 0..2 {
            for l in 0..2 {
                offsets.push(RatVec(point(n, m, l).to_vec()));
            }
        }
    }
    make_periodic_set(&RatMat::diag_ints(&[2, 2, 2]), &offsets).unwrap()
}

fn half_if(odd: i64) -> Rational {
    Rational::frac(odd.rem_euclid(2), 2)
}

fn assert_not_packing(ps: &PeriodicSet) {
    let verdict = classify_pair(ps, DEFAULT_WORK_CAP).unwrap();
    assert_eq!(verdict.status, PairStatus::NotPacking);
    assert!(verdict.witness.unwrap().replays_against(ps.lattice()));
    assert!(!rasterized_tiling_check(ps, DEFAULT_CELL_CAP).unwrap().0);
    let (ok, witness) = diffs_in_zeroset(&enumerate_window(ps, 2).unwrap());
    assert!(!ok);
    assert!(!in_zero_set(&witness.unwrap().delta));
}

#[test]
fn mixed_slice_types_cannot_pack() {
    // even n slices shift along the second axis by β(l), odd n slices by a constant
    let beta = |l: i64| if l.rem_euclid(2) == 0 { Rational::frac(1, 3) } else { Rational::zero() };
    let point = |n: i64, m: i64, l: i64| {
        let second = if n.rem_euclid(2) == 0 { beta(l) } else { Rational::zero() };
        [
            Rational::from_int(n) + half_if(m),
            Rational::from_int(m) + second,
            Rational::from_int(l),
        ]
    };
    let ps = layered_set(point);
    assert_not_packing(&ps);

    // each slice family on its own is a packing
    for parity in 0i64..2 {
        let pts: Vec<RatVec> = (-2i64..=2)
            .flat_map(|n| (-2..=2).flat_map(move |m| (-2..=2).map(move |l| (n, m, l))))
            .filter(|&(n, _, _)| n.rem_euclid(2) == parity)
            .map(|(n, m, l)| RatVec(point(n, m, l).to_vec()))
            .collect();
        assert!(diffs_in_zeroset(&pts).0);
    }
}

#[test]
fn three_nonconstant_shifts_cannot_pack() {
    let ps = layered_set(|n, m, l| {
        [
            Rational::from_int(n) + half_if(m),
            Rational::from_int(m) + half_if(l),
            Rational::from_int(l) + half_if(n),
        ]
    });
    assert_not_packing(&ps);
    // (0,0,0) and (1,1,1) differ by (3/2, 3/2, 3/2)
    assert!(ps.contains(&RatVec::from_fracs(&[(3, 2), (3, 2), (3, 2)])));
    assert!(ps.contains(&RatVec::zeros(3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn recognized_forms_rebuild_the_input(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = match d {
            3 if seed % 2 == 0 => build_3d(&random_dim3(&mut rng, 4, 2, 2)).unwrap(),
            _ => build_tower(&random_tower(&mut rng, d, 4, 12)).unwrap(),
        };
        let rec = recognize(&ps, DEFAULT_WORK_CAP).unwrap();
        prop_assert!(!matches!(rec.form, CatalogForm::NotCatalogForm));
        prop_assert!(rec.rebuild().unwrap().same_set(&ps, DEFAULT_WORK_CAP).unwrap());
        for alt in &rec.alternatives {
            prop_assert!(alt != &rec.permutation);
        }
    }

    #[test]
    fn form_specs_survive_json(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let specs = [
            FormSpec::Dim2(random_dim2(&mut rng, 4, 3)),
            FormSpec::Dim3(random_dim3(&mut rng, 4, 3, 2)),
            FormSpec::Tower(random_tower(&mut rng, 3, 4, 8)),
        ];
        for spec in specs {
            let text = serde_json::to_string(&spec).unwrap();
            let back: FormSpec = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(build(&back).unwrap(), build(&spec).unwrap());
        }
    }
}

#[test]
fn cross_product_is_a_tiling_and_round_trips() {
    let left = build_2d(&spindle()).unwrap();
    let right = PeriodicSet::integer_lattice(1).unwrap();
    let beta = left
        .offsets()
        .iter()
        .enumerate()
        .map(|(i, l)| BetaEntry {
            offset: l.clone(),
            shift: RatVec(vec![Rational::frac(i as i64, 4)]),
        })
        .collect();
    let spec = FormSpec::CrossProduct(CrossProductSpec { left, right, beta });
    let ps = build(&spec).unwrap();
    assert_eq!(ps.dim(), 3);
    assert!(classify_pair(&ps, DEFAULT_WORK_CAP).unwrap().is_spectral());
    assert!(rasterized_tiling_check(&ps, DEFAULT_CELL_CAP).unwrap().0);

    let back: FormSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(build(&back).unwrap(), ps);

    let FormSpec::CrossProduct(mut bad) = spec else { unreachable!() };
    bad.beta.pop();
    assert!(cross_product(&bad).is_err());
}

fn spindle() -> spectile::lowdim::Dim2Form {
    spectile::lowdim::Dim2Form {
        orientation: spectile::lowdim::Orientation::ColumnShifted,
        alpha: Rational::frac(1, 3),
        beta: PeriodicTable::sequence(vec![Rational::zero(), Rational::frac(1, 2)]),
    }
}
