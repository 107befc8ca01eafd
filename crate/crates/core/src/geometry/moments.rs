//! Area, first, and second moments of polygonal regions and disks.
//!
//! Polygon moments come from per-edge closed forms of the boundary integral
//! (Green's theorem), so they are exact for polygonal regions up to rounding.
//! Hole loops carry negative signed area and subtract automatically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::disk::Disk;
use crate::geometry::point::Point;
use crate::geometry::region::PatchRegion;
use crate::numerics::Accumulator;

/// The conserved triple of a patch: mass `|A|`, momentum `M(A) = ∫_A x dx`,
/// and angular momentum `i(A) = ∫_A |x|^2 dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mass: f64,
    pub momentum: Point,
    pub angular: f64,
}

impl Moments {
    pub fn centroid(&self) -> Point {
        self.momentum * (1.0 / self.mass)
    }

    /// Moments of the translate `A + c`, from the change-of-variables
    /// identities: mass invariant, `M += c|A|`, `i += 2 c·M + |c|^2 |A|`.
    pub fn translated(&self, c: Point) -> Moments {
        Moments {
            mass: self.mass,
            momentum: self.momentum + c * self.mass,
            angular: self.angular + 2.0 * c.dot(self.momentum) + c.norm_sq() * self.mass,
        }
    }

    pub(crate) fn require_positive_mass(&self) -> Result<()> {
        if self.mass > 0.0 {
            Ok(())
        } else {
            Err(Error::ZeroMass { mass: self.mass })
        }
    }
}

/// Exact moments of a polygonal region.
pub fn region_moments(region: &PatchRegion) -> Moments {
    let mut mass = Accumulator::new();
    let mut mx = Accumulator::new();
    let mut my = Accumulator::new();
    let mut ang = Accumulator::new();
    for l in region.loops() {
        for (a, b) in l.edges() {
            let c = a.cross(b);
            mass.add(c);
            mx.add(c * (a.x + b.x));
            my.add(c * (a.y + b.y));
            ang.add(c * (a.norm_sq() + a.dot(b) + b.norm_sq()));
        }
    }
    Moments {
        mass: 0.5 * mass.total(),
        momentum: Point::new(mx.total() / 6.0, my.total() / 6.0),
        angular: ang.total() / 12.0,
    }
}

/// Closed-form moments of a disk: `(πr², πr² x₀, πr⁴/2 + πr² |x₀|²)`.
pub fn disk_moments(disk: &Disk) -> Result<Moments> {
    if !(disk.radius > 0.0) {
        return Err(Error::NonPositiveRadius {
            radius: disk.radius,
        });
    }
    let mass = disk.area();
    Ok(Moments {
        mass,
        momentum: disk.center * mass,
        angular: 0.5 * mass * disk.radius * disk.radius + mass * disk.center.norm_sq(),
    })
}

/// Second-moment tensor `(∫x², ∫y², ∫xy)`, used to track the principal axis
/// of an evolving patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoments {
    pub ixx: f64,
    pub iyy: f64,
    pub ixy: f64,
}

impl SecondMoments {
    /// Orientation of the major principal axis, in `(-π/2, π/2]`, defined
    /// modulo π.
    pub fn principal_axis_angle(&self) -> f64 {
        0.5 * (2.0 * self.ixy).atan2(self.ixx - self.iyy)
    }
}

pub fn region_second_moments(region: &PatchRegion) -> SecondMoments {
    let mut sxx = Accumulator::new();
    let mut syy = Accumulator::new();
    let mut sxy = Accumulator::new();
    for l in region.loops() {
        for (a, b) in l.edges() {
            let c = a.cross(b);
            sxx.add(c * (a.x * a.x + a.x * b.x + b.x * b.x));
            syy.add(c * (a.y * a.y + a.y * b.y + b.y * b.y));
            sxy.add(c * (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y));
        }
    }
    SecondMoments {
        ixx: sxx.total() / 12.0,
        iyy: syy.total() / 12.0,
        ixy: sxy.total() / 24.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::{regular_ngon, square_region};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn square_moments() {
        // Square with corners (±1, ±1): mass 4, centered, ∫|x|² = 8/3.
        let r = square_region(2.0);
        let m = region_moments(&r);
        assert_relative_eq!(m.mass, 4.0, max_relative = 1e-14);
        assert!(m.momentum.norm() < 1e-14);
        assert_relative_eq!(m.angular, 8.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn unit_disk_moments() {
        let m = disk_moments(&Disk::at_origin(1.0).unwrap()).unwrap();
        assert_relative_eq!(m.mass, PI, max_relative = 1e-15);
        assert!(m.momentum.norm() == 0.0);
        assert_relative_eq!(m.angular, PI / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn offset_disk_moments() {
        let m = disk_moments(&Disk::new(Point::new(3.0, 4.0), 1.0).unwrap()).unwrap();
        assert_relative_eq!(m.mass, PI, max_relative = 1e-15);
        assert_relative_eq!(m.momentum.x, 3.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(m.momentum.y, 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(m.angular, PI / 2.0 + 25.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn tiny_disk_moments_vanish() {
        let m = disk_moments(&Disk::at_origin(1e-8).unwrap()).unwrap();
        assert!(m.mass < 1e-15 && m.angular < 1e-15);
    }

    #[test]
    fn nonpositive_radius_rejected() {
        assert!(Disk::at_origin(0.0).is_err());
        assert!(Disk::at_origin(-1.0).is_err());
    }

    #[test]
    fn ngon_moments_converge_to_disk() {
        // Area-matched polygons of the unit disk approach (π, 0, π/2).
        let target = Disk::at_origin(1.0).unwrap();
        let mut prev_err = f64::INFINITY;
        for n in [32, 128, 512] {
            let m = region_moments(&regular_ngon(n, &target, true).unwrap());
            assert_relative_eq!(m.mass, PI, max_relative = 1e-13);
            let err = (m.angular - PI / 2.0).abs();
            assert!(err < prev_err);
            prev_err = err;
        }
        assert!(prev_err < 1e-5);
    }

    #[test]
    fn translation_identities() {
        let r = square_region(2.0).translated(Point::new(0.3, -0.7));
        let c = Point::new(2.5, 1.25);
        let direct = region_moments(&r.translated(c));
        let formula = region_moments(&r).translated(c);
        assert_relative_eq!(direct.mass, formula.mass, max_relative = 1e-12);
        assert_relative_eq!(direct.momentum.x, formula.momentum.x, max_relative = 1e-12);
        assert_relative_eq!(direct.momentum.y, formula.momentum.y, max_relative = 1e-12);
        assert_relative_eq!(direct.angular, formula.angular, max_relative = 1e-12);
    }

    #[test]
    fn second_moments_of_square() {
        // Unit-area square centered at origin: ∫x² = ∫y² = 1/12, ∫xy = 0.
        let s = region_second_moments(&square_region(1.0));
        assert_relative_eq!(s.ixx, 1.0 / 12.0, max_relative = 1e-13);
        assert_relative_eq!(s.iyy, 1.0 / 12.0, max_relative = 1e-13);
        assert!(s.ixy.abs() < 1e-15);
    }

    #[test]
    fn principal_axis_of_tilted_ellipse() {
        let e = crate::geometry::fixtures::ellipse_ngon(512, 2.0, 1.0, true)
            .unwrap()
            .rotated(0.6);
        let s = region_second_moments(&e);
        assert_relative_eq!(s.principal_axis_angle(), 0.6, epsilon = 1e-6);
    }
}
