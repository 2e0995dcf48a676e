//! Verification and construction of spectral pairs and tilings of the unit
//! cube by periodic translation sets, with exact rational arithmetic, plus
//! spectral and tiling pairs of measures on finite abelian groups.

pub mod battery;
pub mod error;
pub mod lca;
pub mod linear;
pub mod lowdim;
pub mod periodic;
pub mod svg;
pub mod tiling;
pub mod zeroset;

pub use error::{Error, Result};
