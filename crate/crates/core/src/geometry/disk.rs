use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::point::Point;
use crate::geometry::EPS_GEOM;

/// An open disk `{ x : |x - center| < radius }`. The disk is kept analytic
/// throughout the geometry operations; it is never polygonalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::NonPositiveRadius { radius });
        }
        Ok(Disk { center, radius })
    }

    /// `B_r(0)`.
    pub fn at_origin(radius: f64) -> Result<Self> {
        Disk::new(Point::ZERO, radius)
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }

    pub fn contains(&self, p: Point) -> bool {
        p.dist_sq(self.center) < self.radius * self.radius
    }

    pub fn is_origin_centered(&self) -> bool {
        self.center.norm() <= EPS_GEOM
    }

    pub(crate) fn require_origin_centered(&self) -> Result<()> {
        if self.is_origin_centered() {
            Ok(())
        } else {
            Err(Error::OffOriginDisk {
                x: self.center.x,
                y: self.center.y,
            })
        }
    }
}
