//! Schubert conditions as polynomial systems: coordinate patterns,
//! osculating flags, rank conditions and instance assembly.

mod conditions;
mod instance;
mod osculating;
mod pattern;

pub use conditions::{
    condition_polynomials, condition_polynomials_symbolic, condition_set, membership_check,
    membership_check_matrix, minors, raw_condition_set, RankCondition,
};
pub use instance::{build_instance, build_instance_unchecked, chart, condition_labels, Instance};
pub use osculating::{osculating_matrix, osculating_matrix_symbolic};
pub use pattern::{coordinate_pattern, CoordMatrix, Entry};
