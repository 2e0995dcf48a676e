//! Deterministic SVG drawings of planar cube arrangements `I² + λ`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::periodic::{enumerate_window_labeled, PeriodicSet};

pub const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

pub const STROKE_WIDTH: &str = "0.02";

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Draws `I² + λ` for `λ = l + R·k`, `k ∈ [−window, window]²`, colored by offset index.
/// The y axis points up (SVG y is negated).
pub fn emit_tiling_svg(ps: &PeriodicSet, window: u32) -> Result<String> {
    if ps.dim() != 2 {
        return Err(Error::UnsupportedDimension(ps.dim()));
    }
    let points = enumerate_window_labeled(ps, window)?;
    let squares: Vec<(f64, f64, usize)> = points
        .iter()
        .map(|(p, idx)| (p[0].to_f64(), -(p[1].to_f64() + 1.0), *idx))
        .collect();
    let min_x = squares.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let min_y = squares.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let max_x = squares.iter().map(|s| s.0 + 1.0).fold(f64::NEG_INFINITY, f64::max);
    let max_y = squares.iter().map(|s| s.1 + 1.0).fold(f64::NEG_INFINITY, f64::max);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(min_x),
        num(min_y),
        num(max_x - min_x),
        num(max_y - min_y)
    );
    let _ = writeln!(out, "<g stroke=\"#000000\" stroke-width=\"{STROKE_WIDTH}\">");
    for (x, y, idx) in &squares {
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{}\"/>",
            num(*x),
            num(*y),
            PALETTE[idx % PALETTE.len()]
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{RatMat, RatVec};
    use crate::periodic::make_periodic_set;

    #[test]
    fn integer_grid() {
        let z2 = PeriodicSet::integer_lattice(2).unwrap();
        let svg = emit_tiling_svg(&z2, 2).unwrap();
        assert_eq!(svg.matches("<rect").count(), 25);
        assert!(svg.contains("viewBox=\"-2 -3 5 5\""));
        assert_eq!(svg, emit_tiling_svg(&z2, 2).unwrap());
    }

    #[test]
    fn two_colors() {
        let ps = make_periodic_set(
            &RatMat::diag_ints(&[2, 1]),
            &[RatVec::zeros(2), RatVec::from_fracs(&[(1, 1), (1, 2)])],
        )
        .unwrap();
        let svg = emit_tiling_svg(&ps, 1).unwrap();
        assert_eq!(svg.matches("<rect").count(), 18);
        assert_eq!(svg.matches(PALETTE[0]).count(), 9);
        assert_eq!(svg.matches(PALETTE[1]).count(), 9);
        assert!(svg.contains("y=\"-1.5\""));
    }

    #[test]
    fn rejects_other_dimensions() {
        let z3 = PeriodicSet::integer_lattice(3).unwrap();
        assert_eq!(emit_tiling_svg(&z3, 1), Err(Error::UnsupportedDimension(3)));
    }
}
