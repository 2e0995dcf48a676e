//! Explicit catalog of spectral/tiling periodic sets in dimensions one to
//! three, constructors for them, and recognition of a verified pair.

mod build;
mod forms;
mod recognize;

pub use build::{build, build_1d, build_2d, build_3d, build_tower, cross_product, OFFSET_CAP};
pub use forms::{
    BetaEntry, CrossProductSpec, Dim1Form, Dim2Form, Dim3Form, FormSpec, Orientation,
    PeriodicTable, SliceClass, TowerSpec,
};
pub use recognize::{recognize, CatalogForm, Recognition};
