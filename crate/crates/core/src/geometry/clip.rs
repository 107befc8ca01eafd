//! Exact polygon-disk intersection area.
//!
//! The area of `A ∩ B_r(c)` is assembled edge by edge: for each directed
//! boundary edge `(a, b)` the signed area of `disk ∩ triangle(c, a, b)` has a
//! closed form, and summing it over all edges of all loops reproduces the
//! winding number of the region, so holes subtract correctly. Each edge is
//! split at its circle crossings; sub-segments inside the disk contribute a
//! triangle term, sub-segments outside contribute a circular sector.

use crate::geometry::disk::Disk;
use crate::geometry::point::Point;
use crate::geometry::region::PatchRegion;
use crate::geometry::EPS_GEOM;
use crate::numerics::Accumulator;

/// Area of `A ∩ B`, exact up to rounding. Lies in `[0, min(|A|, πr²)]`.
pub fn polygon_disk_intersection_area(region: &PatchRegion, disk: &Disk) -> f64 {
    let r = disk.radius;
    let mut acc = Accumulator::new();
    for l in region.loops() {
        for (a, b) in l.edges() {
            acc.add(edge_disk_area(a - disk.center, b - disk.center, r));
        }
    }
    let raw = acc.total();
    let cap = region.total_signed_area().min(disk.area());
    // Rounding can push the sum marginally out of range.
    raw.clamp(0.0, cap.max(0.0))
}

/// `|A| + |B| - 2|A ∩ B|`, the L¹ distance between the indicator functions.
pub fn symmetric_difference_area(region: &PatchRegion, disk: &Disk) -> f64 {
    let inter = polygon_disk_intersection_area(region, disk);
    (region.total_signed_area() + disk.area() - 2.0 * inter).max(0.0)
}

/// Signed area of `disk(0, r) ∩ triangle(0, a, b)`.
fn edge_disk_area(a: Point, b: Point, r: f64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 <= EPS_GEOM * EPS_GEOM {
        return 0.0;
    }
    // Circle crossings of the segment: |a + t d|² = r².
    let qa = len2;
    let qb = 2.0 * a.dot(d);
    let qc = a.norm_sq() - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    let mut cuts = [0.0f64; 2];
    let mut ncuts = 0;
    if disc > 0.0 {
        let s = disc.sqrt();
        // Stable quadratic roots.
        let q = -0.5 * (qb + s.copysign(if qb >= 0.0 { 1.0 } else { -1.0 }));
        let mut t0 = q / qa;
        let mut t1 = if q != 0.0 { qc / q } else { f64::INFINITY };
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let tol = EPS_GEOM / len2.sqrt();
        for t in [t0, t1] {
            if t > tol && t < 1.0 - tol {
                // Grazing contacts collapse to a single cut.
                if ncuts == 0 || (t - cuts[ncuts - 1]).abs() > tol {
                    cuts[ncuts] = t;
                    ncuts += 1;
                }
            }
        }
    }

    let mut area = 0.0;
    let mut t_prev = 0.0;
    for k in 0..=ncuts {
        let t_next = if k == ncuts { 1.0 } else { cuts[k] };
        let p = a + d * t_prev;
        let q = a + d * t_next;
        let mid = a + d * (0.5 * (t_prev + t_next));
        if mid.norm_sq() < r * r {
            // Chord inside the disk: plain triangle with the center.
            area += 0.5 * p.cross(q);
        } else {
            // Chord outside: circular sector subtended at the center. The
            // angle at the apex of a triangle is below π, so atan2 gives the
            // correctly signed turn.
            area += 0.5 * r * r * p.cross(q).atan2(p.dot(q));
        }
        t_prev = t_next;
    }
    area
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::{regular_ngon, square_region};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_disk() -> Disk {
        Disk::at_origin(1.0).unwrap()
    }

    #[test]
    fn disk_inside_square() {
        let sq = square_region(4.0);
        assert_relative_eq!(
            polygon_disk_intersection_area(&sq, &unit_disk()),
            PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quarter_disk() {
        let sq = square_region(2.0).translated(Point::new(1.0, 1.0));
        assert_relative_eq!(
            polygon_disk_intersection_area(&sq, &unit_disk()),
            PI / 4.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn square_inside_disk() {
        let sq = square_region(1.0);
        assert_relative_eq!(
            polygon_disk_intersection_area(&sq, &unit_disk()),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn disjoint_sets() {
        let sq = square_region(2.0).translated(Point::new(10.0, 0.0));
        assert_eq!(polygon_disk_intersection_area(&sq, &unit_disk()), 0.0);
        assert_relative_eq!(
            symmetric_difference_area(&sq, &unit_disk()),
            4.0 + PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn hole_subtracts_from_intersection() {
        // 4x4 square with a 2x2 hole, disk of radius 1 in the middle:
        // the disk lies entirely in the hole.
        let outer = square_region(4.0);
        let mut loops: Vec<Vec<Point>> = outer
            .loops()
            .iter()
            .map(|l| l.vertices().to_vec())
            .collect();
        loops.push(square_region(2.0).loops()[0].vertices().to_vec());
        let annulus = PatchRegion::new(loops).unwrap();
        let inter = polygon_disk_intersection_area(&annulus, &unit_disk());
        assert!(inter.abs() < 1e-13);
    }

    #[test]
    fn matched_polygon_symmetric_difference_shrinks() {
        let mut prev = f64::INFINITY;
        for n in [64, 256, 1024] {
            let poly = regular_ngon(n, &unit_disk(), true).unwrap();
            let sd = symmetric_difference_area(&poly, &unit_disk());
            assert!(sd >= 0.0 && sd < prev);
            prev = sd;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn tangent_edge_is_not_double_counted() {
        // Square whose top edge is tangent to the unit disk from outside.
        let sq = square_region(2.0).translated(Point::new(0.0, 2.0));
        let inter = polygon_disk_intersection_area(&sq, &unit_disk());
        assert!(inter.abs() < 1e-9);
    }
}
