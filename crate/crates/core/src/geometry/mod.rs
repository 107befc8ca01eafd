//! Exact computational geometry for polygonal patch regions: moments via
//! per-edge closed forms, polygon-disk intersection with circular-arc
//! corrections, symmetric-difference area, and the exact sup of the radial
//! weight over a symmetric difference.
//!
//! All operations are pure functions of immutable inputs and are safe to
//! call concurrently.

pub mod clip;
pub mod disk;
pub mod fixtures;
pub mod moments;
pub mod point;
pub mod region;
pub mod sup_weight;

pub use clip::{polygon_disk_intersection_area, symmetric_difference_area};
pub use disk::Disk;
pub use fixtures::{
    ellipse_ngon, perturbed_circle_ngon, random_star_polygon, regular_ngon, square_region,
};
pub use moments::{disk_moments, region_moments, region_second_moments, Moments, SecondMoments};
pub use point::Point;
pub use region::{Loop, PatchRegion};
pub use sup_weight::sup_weight;

/// Length tolerance for vertex coincidence, tangency classification, and
/// simplicity tests.
pub const EPS_GEOM: f64 = 1e-9;

/// Relative slack granted to inequality checks against rounding.
pub const EPS_NUM: f64 = 1e-9;
