//! Ideal hyperbolic polygons in the Poincaré disk.
//!
//! Reflection of a polygon across one of its sides is circular inversion in
//! the circle carrying that side. This crate computes those inversions in
//! closed form, grows the bodies obtained by repeatedly reflecting a polygon
//! across its free sides, evaluates Euclidean and hyperbolic areas, and runs
//! numerical checks of the extremal and monotonicity properties of the
//! inverted side angles.
//!
//! Angles are turn fractions throughout: a polygon's side widths sum to 1.

pub mod body;
pub mod disk;
pub mod error;
pub mod extremal;
pub mod measures;
pub mod polygon;

pub use body::{grow_body, grow_body_with, Body, Cell, GrowthLimits};
pub use disk::{
    invert_euclidean, invert_on_circle, inverse_distance, side_circle, unit_point, CirclePoint,
    GeodesicSide, OrthoCircle, PlanePoint,
};
pub use error::{Error, Result};
pub use extremal::{
    grid_scan, majorization_scan, minimax_objective, property_suite, refine_minimum, ScanReport,
    SimplexPoint, Suite,
};
pub use measures::{
    area_upper_bound, decreasing_rearrangement, euclidean_area, hyperbolic_area_ideal,
    hyperbolic_area_quadrature, majorizes, schur_concave_sum, side_region_area, AngleSpectrum,
};
pub use polygon::{
    inverted_angle_matrix, is_regular, max_inverted_angle, reflect_polygon, IdealPolygon,
    InvertedAngleMatrix, MaxEntry,
};
