//! Exact rational arithmetic and integer lattice solvers.

mod affine;
mod matrix;
mod rational;
mod smith;
mod vector;

pub use affine::{solve_integer_affine, AffineSolution};
pub use matrix::{IntMat, RatMat};
pub use rational::{common_denominator, Rational};
pub use smith::{column_hermite_form, rational_hermite_form, smith_normal_form, SmithDecomposition};
pub use vector::RatVec;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;
