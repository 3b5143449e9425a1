//! Sets of positive integers, densities, submeasures and ideals.

pub mod density;
pub mod ideal;
pub mod set;
pub mod submeasure;

pub use density::{
    lower_density, lower_density_with, prefix_ratio, upper_density, upper_density_with, Estimated,
    HorizonSchedule,
};
pub use ideal::{
    dual_filter_member, member, symm_diff_in_ideal, EstimateData, IdealSpec, SummableWeights,
    Verdict,
};
pub use set::{IntegerSet, SparseRule, DEFAULT_HORIZON};
pub use submeasure::{
    check_submeasure, exh_norm, BuiltinSubmeasure, ExhNormReport, Mass, Submeasure,
    WindowedSubmeasure,
};
