//! Curves, subsurface projections and curve, pants and
//! separating-multicurve complexes on low-complexity surfaces.

pub mod arrange;
pub mod closed;
pub mod complex;
pub mod curve;
pub mod enumerate;
pub mod estimate;
pub mod error;
pub mod lab;
pub mod mcg;
pub mod normal;
pub mod realize;
pub mod subsurface;
pub mod surface;
pub mod twist;
pub mod word;

pub use error::{Error, Result};
