//! Stationary-phase and saddle-point approximations, bifurcation sets and
//! asymptotic nodal-line estimates.
//!
//! All approximations are "primitive": they diverge where stationary points
//! coalesce, and the evaluators refuse to answer inside a guard band around
//! those sets rather than return meaningless numbers.

mod bifurcation;
mod large_args;
mod large_vn;
mod stationary;

pub use bifurcation::{
    bifurcation_lines, bifurcation_set_large_n, classify_region, line_ellipse_discriminant,
    BifurcationSet, Ellipse, Line, RegionClass, SectorLabel,
};
pub use large_args::{asym_large_args_12, asym_limit_v_12, in_divergence_zone_12, DIVERGENCE_GUARD};
pub use large_vn::{
    asym_large_vn, asym_large_vn_complex, asym_large_vn_real, nodal_lines_large_vn,
    NODAL_WINDOW, TURNING_GUARD,
};
pub use stationary::{
    saddle_points_large_vn, stationary_points, stationary_points_uv, PointKind, StationaryPoint,
    DEGENERATE_CURVATURE,
};
