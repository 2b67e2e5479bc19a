//! Monte-Carlo integration over affine flats and rigid motions.

mod constants;
mod crofton;
mod kinematic;
mod mc;
mod minkowski;
mod sampler;

pub use constants::{
    c_nk, c_nk_exact, flag, flat_measure, q_mean_section, q_nij, q_nij_exact, GeometricConstants, PiRational,
};
pub use crofton::{crofton_integral, crofton_intrinsic, EstimateReport};
pub use kinematic::{
    kinematic_check, kinematic_integral, kinematic_target, kinematic_valuation, Comparison, CroftonTerm,
    HadwigerTerm, KinematicReport, ValuationKinematicReport,
};
pub use mc::{run, McConfig, Moments, DEFAULT_SHARDS};
pub use minkowski::{crofton_kernel, crofton_minkowski, CroftonMinkowskiReport, DegreeRow, BERG_BAR_TOL};
pub use sampler::{random_rotation, Flat, FlatSampler, Motion, MotionSampler, Window};
