//! Graded free modules, maps, complexes and resolutions.

mod certificate;
mod complex;
pub mod linalg;
mod map;
mod presented;
mod resolution;

pub use certificate::{be_exactness_certificate, exact_except_top_certificate, ExactnessCertificate, Grade};
pub use complex::{cohomological_index, BettiTable, FreeComplex};
pub use map::{GradedFreeModule, GradedMap};
pub use presented::PresentedModule;
pub use crate::cohomology::{ab_bounds_check, AbBoundsReport};
pub use resolution::{
    chi_line_bundle, dual_twist, euler_characteristic, koszul_complex, minimal_free_resolution, minimize,
    naive_truncate, Side,
};
