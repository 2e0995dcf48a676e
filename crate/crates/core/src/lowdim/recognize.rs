use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::build::{build_1d, build_2d, build_3d};
use super::forms::{Dim1Form, Dim2Form, Dim3Form, Orientation, PeriodicTable, SliceClass, SliceData};
use crate::error::{Error, Result};
use crate::linear::{RatVec, Rational};
use crate::periodic::{classify_pair, PeriodicSet};

/// Catalog form found by `recognize`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogForm {
    Dim1(Dim1Form),
    Dim2(Dim2Form),
    Dim3(Dim3Form),
    /// Only reachable if the input contradicts the catalog (internal error).
    NotCatalogForm,
}

/// `Λ = translation + P·(built form)`, where `P` sends built coordinate `i`
/// to ambient coordinate `permutation[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub form: CatalogForm,
    pub permutation: Vec<usize>,
    pub translation: RatVec,
    /// Other permutations that also give a catalog form, in lexicographic order.
    pub alternatives: Vec<Vec<usize>>,
}

impl Recognition {
    /// Rebuilds the periodic set this recognition describes.
    pub fn rebuild(&self) -> Result<PeriodicSet> {
        let built = match &self.form {
            CatalogForm::Dim1(f) => build_1d(f)?,
            CatalogForm::Dim2(f) => build_2d(f)?,
            CatalogForm::Dim3(f) => build_3d(f)?,
            CatalogForm::NotCatalogForm => {
                return Err(Error::InvalidForm("no catalog form to rebuild".into()))
            }
        };
        place(&built, &self.permutation, &self.translation)
    }
}

fn place(built: &PeriodicSet, perm: &[usize], translation: &RatVec) -> Result<PeriodicSet> {
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    built.permute_coordinates(&inverse)?.translate(translation)
}

/// The two planar shapes: constant first-coordinate fractions (columns) or
/// constant second-coordinate fractions (rows).
enum Planar {
    Column { lead: Rational, shifts: Vec<Rational> },
    Row { lead: Rational, shifts: Vec<Rational> },
}

fn constant_fraction<'a>(mut values: impl Iterator<Item = &'a Rational>) -> Option<Rational> {
    let first = values.next()?.fract();
    values.all(|v| v.fract() == first).then_some(first)
}

/// Fraction of `other` per integer part of `key`, over `[0, width)`.
fn shifts_by_line(
    points: &[(Rational, Rational)],
    width: usize,
    key: impl Fn(&(Rational, Rational)) -> &Rational,
    other: impl Fn(&(Rational, Rational)) -> &Rational,
) -> Option<Vec<Rational>> {
    let mut lines: BTreeMap<usize, Vec<&Rational>> = BTreeMap::new();
    for p in points {
        let line = key(p).floor().to_usize()?;
        lines.entry(line).or_default().push(other(p));
    }
    (0..width)
        .map(|m| constant_fraction(lines.get(&m)?.iter().copied()))
        .collect()
}

/// Planar shape of points in `[0, widths.0) × [0, widths.1)`; columns win ties.
fn planar_shape(points: &[(Rational, Rational)], widths: (usize, usize)) -> Option<Planar> {
    if let Some(lead) = constant_fraction(points.iter().map(|p| &p.0)) {
        if let Some(shifts) = shifts_by_line(points, widths.0, |p| &p.0, |p| &p.1) {
            return Some(Planar::Column { lead, shifts });
        }
    }
    let lead = constant_fraction(points.iter().map(|p| &p.1))?;
    let shifts = shifts_by_line(points, widths.1, |p| &p.1, |p| &p.0)?;
    Some(Planar::Row { lead, shifts })
}

fn recognize_2d(points: &[RatVec], periods: &[usize]) -> Option<Dim2Form> {
    let planar: Vec<(Rational, Rational)> =
        points.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
    let form = match planar_shape(&planar, (periods[0], periods[1]))? {
        Planar::Column { lead, shifts } => Dim2Form {
            orientation: Orientation::ColumnShifted,
            alpha: lead,
            beta: PeriodicTable::sequence(shifts),
        },
        Planar::Row { lead, shifts } => Dim2Form {
            orientation: Orientation::RowShifted,
            alpha: lead,
            beta: PeriodicTable::sequence(shifts),
        },
    };
    Some(form.normalized())
}

/// Returns the leading-coordinate shift and the form for already permuted points.
fn recognize_3d(points: &[RatVec], periods: &[usize]) -> Option<(Rational, Dim3Form)> {
    let theta = constant_fraction(points.iter().map(|p| &p[0]))?;
    let mut slices: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); periods[0]];
    for p in points {
        let a = p[0].floor().to_usize()?;
        slices.get_mut(a)?.push((p[1].clone(), p[2].clone()));
    }
    let data: Option<Vec<SliceData>> = slices
        .iter()
        .map(|s| {
            Some(match planar_shape(s, (periods[1], periods[2]))? {
                Planar::Column { lead, shifts } => SliceData {
                    class: SliceClass::A,
                    shift: lead,
                    row: shifts,
                },
                Planar::Row { lead, shifts } => SliceData {
                    class: SliceClass::B,
                    shift: lead,
                    row: shifts,
                },
            })
        })
        .collect();
    let raw = Dim3Form::from_slices(&data?);
    Some((theta, raw.normalized()))
}

fn permutations3() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ]
}

/// Writes a verified spectral/tiling pair in `d ≤ 3` as a catalog form.
///
/// `work_cap` bounds both the packing check and the number of points
/// materialized in one period box.
pub fn recognize(ps: &PeriodicSet, work_cap: u64) -> Result<Recognition> {
    let d = ps.dim();
    if d > 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    if !classify_pair(ps, work_cap)?.is_spectral() {
        return Err(Error::NotSpectral);
    }
    let identity: Vec<usize> = (0..d).collect();
    let not_catalog = Recognition {
        form: CatalogForm::NotCatalogForm,
        permutation: identity.clone(),
        translation: RatVec::zeros(d),
        alternatives: Vec::new(),
    };
    let rational_periods = ps.axis_periods();
    let periods: Option<Vec<usize>> = rational_periods
        .iter()
        .map(|t| t.to_integer().and_then(|n| n.to_usize()))
        .collect();
    let Some(periods) = periods else {
        return Ok(not_catalog);
    };
    let points = ps.points_in_period_box(&rational_periods, work_cap)?;
    let verified = |r: Recognition| -> Result<Option<Recognition>> {
        Ok(r.rebuild()?.same_set(ps, work_cap)?.then_some(r))
    };

    let found = match d {
        1 => verified(Recognition {
            form: CatalogForm::Dim1(Dim1Form {
                alpha: points[0][0].fract(),
            }),
            ..not_catalog.clone()
        })?,
        2 => match recognize_2d(&points, &periods) {
            Some(form) => verified(Recognition {
                form: CatalogForm::Dim2(form),
                ..not_catalog.clone()
            })?,
            None => None,
        },
        _ => {
            let mut working: Vec<Recognition> = Vec::new();
            for perm in permutations3() {
                let permuted: Vec<RatVec> = points
                    .iter()
                    .map(|p| perm.iter().map(|&i| p[i].clone()).collect())
                    .collect();
                let widths: Vec<usize> = perm.iter().map(|&i| periods[i]).collect();
                let Some((theta, form)) = recognize_3d(&permuted, &widths) else {
                    continue;
                };
                let mut translation = RatVec::zeros(3);
                translation[perm[0]] = theta;
                let candidate = Recognition {
                    form: CatalogForm::Dim3(form),
                    permutation: perm,
                    translation,
                    alternatives: Vec::new(),
                };
                if let Some(ok) = verified(candidate)? {
                    working.push(ok);
                }
            }
            let mut iter = working.into_iter();
            iter.next().map(|mut first| {
                first.alternatives = iter.map(|r| r.permutation).collect();
                first
            })
        }
    };
    Ok(found.unwrap_or(not_catalog))
}
