//! Group codes: linear codes, blockwise ideals, counting and distances.

mod count;
pub mod distance;
mod ideal;
mod linear;
mod swar;

pub use count::{count_group_codes, gaussian_binomial, ideal_count};
pub use distance::{
    estimate_filtered, min_distance, verify_distance, Budget, Certificate, CodeParams, DistanceResult, DistanceStatus, Strategy,
    WeightSearch,
};
pub use ideal::{code_dimension, code_from_ideal, dihedral_dual_ideal, dihedral_dual_ideal_with, IdealSpec};
pub use linear::{dot, rref, weight, LinearCode};
pub use swar::Packed;
