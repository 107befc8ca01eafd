//! Supremum of the weight `||x|² - r²|` over the closure of `A △ B_r(0)`.
//!
//! The weight depends only on `|x|`, so the supremum is controlled by the
//! extreme radii of the symmetric difference, and those are attained at a
//! finite candidate set:
//!
//!  - every polygon vertex (a vertex outside the closed disk lies in the
//!    closure of `A \ B`, one inside lies in the closure of `B \ A`, and in
//!    both cases the candidate value is `||v|² - r²|`);
//!  - the foot of the perpendicular from the origin to an edge, when it
//!    falls inside the segment and strictly inside the disk (the closest
//!    approach of `B \ A` to the origin can sit mid-edge);
//!  - the origin itself when it is not in `A`, contributing `r²`.
//!
//! Arc portions of the boundary have zero weight and never cap the sup.

use crate::error::Result;
use crate::geometry::disk::Disk;
use crate::geometry::point::Point;
use crate::geometry::region::PatchRegion;

pub fn sup_weight(region: &PatchRegion, disk: &Disk) -> Result<f64> {
    disk.require_origin_centered()?;
    let r2 = disk.radius * disk.radius;
    let mut best: f64 = 0.0;

    for l in region.loops() {
        for (a, b) in l.edges() {
            best = best.max((a.norm_sq() - r2).abs());
            let d = b - a;
            let len2 = d.norm_sq();
            if len2 > 0.0 {
                let t = -a.dot(d) / len2;
                if t > 0.0 && t < 1.0 {
                    let foot = a + d * t;
                    let f2 = foot.norm_sq();
                    if f2 < r2 {
                        best = best.max(r2 - f2);
                    }
                }
            }
        }
    }

    if !region.contains(Point::ZERO) {
        best = best.max(r2);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::fixtures::{regular_ngon, square_region};
    use approx::assert_relative_eq;

    #[test]
    fn small_square_in_unit_disk() {
        // Closest point of B \ A to the origin is the edge midpoint at 0.5.
        let sq = square_region(1.0);
        let w = sup_weight(&sq, &Disk::at_origin(1.0).unwrap()).unwrap();
        assert_relative_eq!(w, 0.75, max_relative = 1e-14);
    }

    #[test]
    fn enclosing_polygon() {
        let poly = regular_ngon(4096, &Disk::at_origin(1.2).unwrap(), true).unwrap();
        let w = sup_weight(&poly, &Disk::at_origin(1.0).unwrap()).unwrap();
        assert_relative_eq!(w, 1.2 * 1.2 - 1.0, epsilon = 1e-5);
    }

    #[test]
    fn near_matched_polygon_is_near_zero() {
        let poly = regular_ngon(4096, &Disk::at_origin(1.0).unwrap(), true).unwrap();
        let w = sup_weight(&poly, &Disk::at_origin(1.0).unwrap()).unwrap();
        assert!(w < 1e-5, "w = {w}");
    }

    #[test]
    fn annulus_with_disjoint_disk() {
        // A is a polygonal annulus between radii 2 and 3; B is the unit disk
        // inside the cavity. Sup over A \ B is 9 - 1 at the outer vertices,
        // and the origin lies in B \ A with weight 1.
        let outer = regular_ngon(64, &Disk::at_origin(3.0).unwrap(), false).unwrap();
        let inner = regular_ngon(64, &Disk::at_origin(2.0).unwrap(), false).unwrap();
        let mut loops: Vec<Vec<Point>> = outer
            .loops()
            .iter()
            .map(|l| l.vertices().to_vec())
            .collect();
        loops.extend(inner.loops().iter().map(|l| l.vertices().to_vec()));
        let annulus = PatchRegion::new(loops).unwrap();
        let w = sup_weight(&annulus, &Disk::at_origin(1.0).unwrap()).unwrap();
        assert_relative_eq!(w, 8.0, max_relative = 1e-13);
    }

    #[test]
    fn off_origin_disk_rejected() {
        let sq = square_region(1.0);
        let err = sup_weight(&sq, &Disk::new(Point::new(0.5, 0.0), 1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::OffOriginDisk { .. }));
    }
}
