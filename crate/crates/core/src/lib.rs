//! Geometric functionals, sharp stability inequalities, and contour
//! dynamics for planar vortex patches.
//!
//! The crate has four layers:
//!
//! - [`geometry`]: polygonal regions with holes, exact moments, polygon-disk
//!   intersection, symmetric-difference area, and the exact sup of the
//!   radial weight over a symmetric difference;
//! - [`stability`]: the disk-comparison functional Q evaluated through its
//!   moment identity, the nonnegative moment gap, the best-fit disk, the
//!   symmetric-difference inequality with its equality configuration, and
//!   the time-uniform stability bound;
//! - [`dynamics`]: boundary-marker evolution of a patch under its
//!   self-induced incompressible flow, with conservation diagnostics;
//! - [`oracle`]: independent rasterization and Monte Carlo verifiers for
//!   everything above.

pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod oracle;
pub mod stability;

pub use error::{Error, Result};
pub use geometry::{
    disk_moments, polygon_disk_intersection_area, region_moments, region_second_moments,
    sup_weight, symmetric_difference_area, Disk, Loop, Moments, PatchRegion, Point,
    SecondMoments, EPS_GEOM, EPS_NUM,
};
pub use stability::{
    best_fit_disk, equality_case_region, lemma1_gap, lemma2_check, prelim_check, q_value,
    theorem_bound, QValue, StabilityReport, TheoremBound,
};

pub use dynamics::{
    boundary_velocity, evolve, evolve_with, remesh, self_velocities, step_rk4, DiscretizedPatch,
    EvolutionParams, EvolveFailure, TimeSeriesRecord,
};

pub use oracle::{
    grid_moments, grid_q_additivity, grid_q_direct, grid_sup_weight, mc_symmetric_difference,
    GridSpec, McConfig,
};
