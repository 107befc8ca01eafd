//! Stability functionals for patches compared against disks.
//!
//! The central quantity is the weighted symmetric-difference deviation
//!
//! ```text
//! Q(A; B_r(x0)) = ∫_{A △ B_r(x0)} | |x - x0|² - r² | dx ,
//! ```
//!
//! which rearranges into the moment identity
//!
//! ```text
//! Q = i(A) - |A|²/2π - |M(A)|²/|A|
//!     + (πr² - |A|)²/2π + |A| |x0 - M(A)/|A||² ,
//! ```
//!
//! exact for any bounded region. The main path always evaluates Q through
//! this identity, which is exact for polygons; the direct quadrature of the
//! defining integral lives in the oracle module as an independent check.
//!
//! The first group of terms is the nonnegative moment gap, zero exactly for
//! disks; the remaining terms vanish when the disk has the same mass and
//! center of mass as `A`, which makes that best-fit disk the unique
//! minimizer of `Q(A; ·)`. Against an origin-centered disk the symmetric
//! difference obeys `‖I_A - I_B‖²_{L¹} ≤ 4π Q(A; B)`, with equality exactly
//! on the two-shell configurations built by [`equality_case_region`], and
//! since Q depends only on quantities conserved by the patch flow, the
//! time-uniform bound reported by [`theorem_bound`] follows.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{
    disk::Disk,
    fixtures::regular_ngon,
    moments::{region_moments, Moments},
    region::PatchRegion,
    symmetric_difference_area, sup_weight,
};

/// The value of the Q functional (length⁴, nonnegative up to rounding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct QValue(pub f64);

impl QValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// One static comparison of a region against an origin-centered disk.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StabilityReport {
    pub moments: Moments,
    pub q: f64,
    pub lemma1_gap: f64,
    pub l1_distance: f64,
    pub lemma2_lhs: f64,
    pub lemma2_rhs: f64,
    pub margin: f64,
}

/// Ingredients of the time-uniform stability bound
/// `‖I_{Ω_t} - I_B‖²_{L¹} ≤ 4π · sup_weight · ‖I_{Ω_0} - I_B‖_{L¹}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoremBound {
    pub sup_weight: f64,
    pub initial_l1: f64,
    pub bound: f64,
}

/// The moment gap `i(A) - |A|²/2π - |M(A)|²/|A|`; nonnegative, zero iff the
/// region is a disk.
pub fn lemma1_gap_from_moments(m: &Moments) -> Result<f64> {
    m.require_positive_mass()?;
    Ok(m.angular - m.mass * m.mass / (2.0 * PI) - m.momentum.norm_sq() / m.mass)
}

pub fn lemma1_gap(region: &PatchRegion) -> Result<f64> {
    lemma1_gap_from_moments(&region_moments(region))
}

/// Q evaluated through the moment identity.
pub fn q_value_from_moments(m: &Moments, disk: &Disk) -> Result<QValue> {
    let gap = lemma1_gap_from_moments(m)?;
    let mass_defect = PI * disk.radius * disk.radius - m.mass;
    let offset = disk.center - m.centroid();
    Ok(QValue(
        gap + mass_defect * mass_defect / (2.0 * PI) + m.mass * offset.norm_sq(),
    ))
}

pub fn q_value(region: &PatchRegion, disk: &Disk) -> Result<QValue> {
    q_value_from_moments(&region_moments(region), disk)
}

/// The disk with the same mass and center of mass as the region; the unique
/// minimizer of `Q(A; ·)`, where it attains the moment gap.
pub fn best_fit_disk_from_moments(m: &Moments) -> Result<Disk> {
    m.require_positive_mass()?;
    Disk::new(m.centroid(), (m.mass / PI).sqrt())
}

pub fn best_fit_disk(region: &PatchRegion) -> Result<Disk> {
    best_fit_disk_from_moments(&region_moments(region))
}

/// Checks `‖I_A - I_B‖²_{L¹} ≤ 4π Q(A; B)` for an origin-centered disk and
/// reports every intermediate quantity.
pub fn lemma2_check(region: &PatchRegion, disk: &Disk) -> Result<StabilityReport> {
    disk.require_origin_centered()?;
    let moments = region_moments(region);
    let q = q_value_from_moments(&moments, disk)?.value();
    let lemma1_gap = lemma1_gap_from_moments(&moments)?;
    let l1_distance = symmetric_difference_area(region, disk);
    let lemma2_lhs = l1_distance * l1_distance;
    let lemma2_rhs = 4.0 * PI * q;
    Ok(StabilityReport {
        moments,
        q,
        lemma1_gap,
        l1_distance,
        lemma2_lhs,
        lemma2_rhs,
        margin: lemma2_rhs - lemma2_lhs,
    })
}

/// The mass-defect inequality `(|A| - πr²)² ≤ 2π Q(A; B)` for an
/// origin-centered disk, with equality exactly for origin-centered disks.
pub fn prelim_check(region: &PatchRegion, disk: &Disk) -> Result<(f64, f64)> {
    disk.require_origin_centered()?;
    let m = region_moments(region);
    let defect = m.mass - PI * disk.radius * disk.radius;
    let rhs = 2.0 * PI * q_value_from_moments(&m, disk)?.value();
    Ok((defect * defect, rhs))
}

/// The equality configuration of the symmetric-difference bound: a disk of
/// radius `a` plus the annulus between `r` and `b`, with `b² - r² = r² - a²`.
/// Built from three area-matched regular n-gons (outer `b` loop, `r` hole,
/// inner `a` disk).
pub fn equality_case_region(r: f64, a: f64, n: usize) -> Result<PatchRegion> {
    if !(a > 0.0) || !(a < r) {
        return Err(crate::error::Error::InvalidParameter(format!(
            "equality case needs 0 < a < r, got a={a}, r={r}"
        )));
    }
    if n < 16 {
        return Err(crate::error::Error::InvalidParameter(format!(
            "equality case needs n >= 16, got {n}"
        )));
    }
    let b = (2.0 * r * r - a * a).sqrt();
    // Area-matched polygons bulge past their target circles; the three rings
    // must still be strictly separated.
    let k = crate::geometry::fixtures::area_match_factor(n);
    let apothem = (PI / n as f64).cos();
    if a * k >= r * k * apothem || r * k >= b * k * apothem {
        return Err(crate::error::Error::InvalidParameter(format!(
            "equality case radii too close for n = {n}; increase n"
        )));
    }
    let outer = regular_ngon(n, &Disk::at_origin(b)?, true)?;
    let hole = regular_ngon(n, &Disk::at_origin(r)?, true)?;
    let inner = regular_ngon(n, &Disk::at_origin(a)?, true)?;
    let mut hole_loop = hole.loops()[0].clone();
    hole_loop.reverse();
    Ok(PatchRegion::from_loops_unchecked(vec![
        outer.loops()[0].clone(),
        hole_loop,
        inner.loops()[0].clone(),
    ]))
}

/// The time-uniform bound for an initial region against a stationary
/// origin-centered disk.
pub fn theorem_bound(region: &PatchRegion, disk: &Disk) -> Result<TheoremBound> {
    disk.require_origin_centered()?;
    let w = sup_weight(region, disk)?;
    let l1 = symmetric_difference_area(region, disk);
    Ok(TheoremBound {
        sup_weight: w,
        initial_l1: l1,
        bound: 4.0 * PI * w * l1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::{ellipse_ngon, square_region, Point};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_disk() -> Disk {
        Disk::at_origin(1.0).unwrap()
    }

    #[test]
    fn square_gap_closed_form() {
        // 8/3 - 8/π for the square with corners (±1, ±1).
        let gap = lemma1_gap(&square_region(2.0)).unwrap();
        assert_relative_eq!(gap, 8.0 / 3.0 - 8.0 / PI, max_relative = 1e-13);
    }

    #[test]
    fn ellipse_gap_closed_form() {
        // (π a b / 4)(a - b)², independent of center.
        let e = ellipse_ngon(4096, 2.0, 1.0, true).unwrap();
        let gap = lemma1_gap(&e).unwrap();
        assert_relative_eq!(gap, PI / 2.0, max_relative = 1e-4);
        let shifted = lemma1_gap(&e.translated(Point::new(3.0, -1.0))).unwrap();
        assert_relative_eq!(gap, shifted, max_relative = 1e-9);
    }

    #[test]
    fn gap_vanishes_for_disk_polygons() {
        let off = Disk::new(Point::new(3.0, 4.0), 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for n in [64, 256, 1024] {
            let gap = lemma1_gap(&regular_ngon(n, &off, true).unwrap()).unwrap();
            assert!(gap >= -1e-12 && gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn q_of_offset_disk() {
        // Mass-matched offset polygon: Q ≈ |A| |x0 - centroid|² = 25π.
        let a = regular_ngon(2048, &Disk::new(Point::new(3.0, 4.0), 1.0).unwrap(), true).unwrap();
        let q = q_value(&a, &unit_disk()).unwrap().value();
        assert_relative_eq!(q, 25.0 * PI, max_relative = 1e-5);
    }

    #[test]
    fn q_of_equality_case() {
        // r = 1, a² = 1/2: i(A) = 3π/4, |A| = π, M = 0, so Q = π/4.
        let a = equality_case_region(1.0, 0.5f64.sqrt(), 4096).unwrap();
        let m = region_moments(&a);
        assert_relative_eq!(m.mass, PI, max_relative = 1e-12);
        assert!(m.momentum.norm() < 1e-12);
        assert_relative_eq!(m.angular, 3.0 * PI / 4.0, max_relative = 1e-6);
        let q = q_value(&a, &unit_disk()).unwrap().value();
        assert_relative_eq!(q, PI / 4.0, max_relative = 1e-5);
    }

    #[test]
    fn best_fit_of_square() {
        let d = best_fit_disk(&square_region(2.0)).unwrap();
        assert!(d.center.norm() < 1e-14);
        assert_relative_eq!(d.radius, 2.0 / PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn best_fit_translates_with_region() {
        let sq = square_region(2.0);
        let c = Point::new(1.5, -2.5);
        let d0 = best_fit_disk(&sq).unwrap();
        let d1 = best_fit_disk(&sq.translated(c)).unwrap();
        assert_relative_eq!(d1.center.x, d0.center.x + c.x, epsilon = 1e-12);
        assert_relative_eq!(d1.center.y, d0.center.y + c.y, epsilon = 1e-12);
        assert_relative_eq!(d1.radius, d0.radius, max_relative = 1e-14);
    }

    #[test]
    fn q_attains_gap_at_best_fit() {
        let e = ellipse_ngon(512, 1.4, 0.8, true).unwrap().translated(Point::new(0.7, 0.2));
        let m = region_moments(&e);
        let bf = best_fit_disk_from_moments(&m).unwrap();
        let q = q_value_from_moments(&m, &bf).unwrap().value();
        let gap = lemma1_gap_from_moments(&m).unwrap();
        assert_relative_eq!(q, gap, max_relative = 1e-12);
    }

    #[test]
    fn prelim_square_numbers() {
        let (lhs, rhs) = prelim_check(&square_region(2.0), &unit_disk()).unwrap();
        let expected_lhs = (4.0 - PI) * (4.0 - PI);
        assert_relative_eq!(lhs, expected_lhs, max_relative = 1e-13);
        let q = 8.0 / 3.0 - 8.0 / PI + expected_lhs / (2.0 * PI);
        assert_relative_eq!(rhs, 2.0 * PI * q, max_relative = 1e-13);
        assert!(lhs <= rhs);
    }

    #[test]
    fn prelim_equality_for_matched_ngon() {
        let a = regular_ngon(1024, &unit_disk(), true).unwrap();
        let (lhs, rhs) = prelim_check(&a, &unit_disk()).unwrap();
        assert!(lhs.abs() < 1e-20);
        assert!(rhs >= 0.0 && rhs < 1e-8);
    }

    #[test]
    fn lemma2_equality_case_hits_pi_squared() {
        let a = equality_case_region(1.0, 0.5f64.sqrt(), 4096).unwrap();
        let rep = lemma2_check(&a, &unit_disk()).unwrap();
        assert_relative_eq!(rep.lemma2_lhs, PI * PI, max_relative = 1e-3);
        assert_relative_eq!(rep.lemma2_rhs, PI * PI, max_relative = 1e-3);
        assert!(rep.margin.abs() < 1e-3 * rep.lemma2_rhs);
    }

    #[test]
    fn lemma2_strict_for_other_shapes() {
        for region in [
            square_region(2.0),
            ellipse_ngon(512, 2.0, 1.0, true).unwrap(),
        ] {
            let rep = lemma2_check(&region, &best_fit_origin_disk(&region)).unwrap();
            assert!(rep.margin > 0.01 * rep.lemma2_rhs, "margin = {}", rep.margin);
        }
    }

    fn best_fit_origin_disk(region: &PatchRegion) -> Disk {
        let m = region_moments(region);
        Disk::at_origin((m.mass / PI).sqrt()).unwrap()
    }

    #[test]
    fn equality_case_rejects_bad_radii() {
        assert!(matches!(
            equality_case_region(1.0, 1.0, 64),
            Err(Error::InvalidParameter(_))
        ));
        assert!(equality_case_region(1.0, -0.1, 64).is_err());
        assert!(equality_case_region(1.0, 0.7, 8).is_err());
        // a extremely close to r needs very large n.
        assert!(equality_case_region(1.0, 0.999999, 64).is_err());
    }

    #[test]
    fn theorem_bound_concentric_factor_four() {
        // Polygonal disk of radius 1.2 vs the unit disk: the bound exceeds
        // the (stationary) l1² by exactly a factor of 4.
        let a = regular_ngon(4096, &Disk::at_origin(1.2).unwrap(), true).unwrap();
        let tb = theorem_bound(&a, &unit_disk()).unwrap();
        let dr = 1.2f64 * 1.2 - 1.0;
        assert_relative_eq!(tb.sup_weight, dr, epsilon = 1e-5);
        assert_relative_eq!(tb.initial_l1, PI * dr, epsilon = 1e-5);
        assert_relative_eq!(
            tb.bound,
            4.0 * (tb.initial_l1 * tb.initial_l1),
            max_relative = 1e-4
        );
    }

    #[test]
    fn theorem_bound_dominates_q_route() {
        // Q(A; B) ≤ sup_weight · l1, the pointwise bound on the integrand.
        let a = perturbed();
        let d = unit_disk();
        let tb = theorem_bound(&a, &d).unwrap();
        let q = q_value(&a, &d).unwrap().value();
        assert!(q <= tb.sup_weight * tb.initial_l1 * (1.0 + 1e-12));
    }

    fn perturbed() -> PatchRegion {
        crate::geometry::perturbed_circle_ngon(512, 1.0, 3, 0.1).unwrap()
    }

    #[test]
    fn zero_mass_rejected() {
        let m = Moments {
            mass: 0.0,
            momentum: Point::ZERO,
            angular: 0.0,
        };
        assert!(matches!(
            q_value_from_moments(&m, &unit_disk()),
            Err(Error::ZeroMass { .. })
        ));
    }

    #[test]
    fn off_origin_disk_rejected_by_checks() {
        let sq = square_region(2.0);
        let off = Disk::new(Point::new(0.3, 0.0), 1.0).unwrap();
        assert!(lemma2_check(&sq, &off).is_err());
        assert!(prelim_check(&sq, &off).is_err());
        assert!(theorem_bound(&sq, &off).is_err());
    }
}
