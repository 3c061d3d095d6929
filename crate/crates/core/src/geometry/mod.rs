//! Lines, planes and points of `P^4` relative to a cubic threefold.

pub mod classify;
pub mod cubic;
pub mod points;
pub mod sections;
pub mod subspace;

pub use classify::{
    classify_line, dual_map_image, projective_points, tangent_plane_witness, tangent_plane_witness_scan, DoubleWitness,
    DualImage, LineReport, LineType,
};
pub use cubic::Cubic;
pub use points::{eckardt_test, lines_through_point, EckardtData, PointLines};
pub use sections::{hessian, hessian_on_line, linear_factors, plane_section, HessianOnLine, LinearFactor, PlaneSection};
pub use subspace::{normalize_point, pair_index, ProjLine, ProjPlane, PAIRS};
