//! Polygonal test-fixture generators: regular polygons, ellipses, squares,
//! cosine-perturbed circles, and seeded random simple polygons.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::disk::Disk;
use crate::geometry::point::Point;
use crate::geometry::region::{Loop, PatchRegion};

/// Scale factor that gives a regular n-gon the same area as the unit circle.
pub(crate) fn area_match_factor(n: usize) -> f64 {
    let tau = std::f64::consts::TAU / n as f64;
    (std::f64::consts::TAU / (n as f64 * tau.sin())).sqrt()
}

fn circle_vertices(center: Point, radius: f64, n: usize) -> Vec<Point> {
    (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            let (s, c) = theta.sin_cos();
            center + Point::new(radius * c, radius * s)
        })
        .collect()
}

/// Regular n-gon approximating `target`. With `area_matched` the circumradius
/// is scaled so the polygon area equals `π r²` exactly, which removes the
/// mass-discretization bias from equality-case checks; otherwise the polygon
/// is inscribed.
pub fn regular_ngon(n: usize, target: &Disk, area_matched: bool) -> Result<PatchRegion> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular polygon needs n >= 3, got {n}"
        )));
    }
    let radius = if area_matched {
        target.radius * area_match_factor(n)
    } else {
        target.radius
    };
    Ok(PatchRegion::from_loops_unchecked(vec![Loop::new(
        circle_vertices(target.center, radius, n),
    )]))
}

/// Origin-centered ellipse with semi-axes `(a, b)`, discretized with vertices
/// at uniform parameter angles. With `area_matched` both axes are scaled so
/// the polygon area equals `π a b` exactly.
pub fn ellipse_ngon(n: usize, a: f64, b: f64, area_matched: bool) -> Result<PatchRegion> {
    if n < 3 || !(a > 0.0) || !(b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ellipse fixture needs n >= 3 and positive semi-axes, got n={n}, a={a}, b={b}"
        )));
    }
    let k = if area_matched {
        area_match_factor(n)
    } else {
        1.0
    };
    let vertices = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            let (s, c) = theta.sin_cos();
            Point::new(k * a * c, k * b * s)
        })
        .collect();
    Ok(PatchRegion::from_loops_unchecked(vec![Loop::new(vertices)]))
}

/// Axis-aligned square of side `s` centered at the origin.
pub fn square_region(s: f64) -> PatchRegion {
    let h = s / 2.0;
    PatchRegion::from_loops_unchecked(vec![Loop::new(vec![
        Point::new(-h, -h),
        Point::new(h, -h),
        Point::new(h, h),
        Point::new(-h, h),
    ])])
}

/// Circle of radius `r` with a radial mode-`k` cosine perturbation:
/// `ρ(θ) = r (1 + ε cos kθ)`, markers uniform in θ. Star-shaped for
/// `|ε| < 1`, hence simple.
pub fn perturbed_circle_ngon(n: usize, r: f64, k: u32, eps: f64) -> Result<PatchRegion> {
    if n < 3 || !(r > 0.0) || k == 0 || eps.abs() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "perturbed circle needs n >= 3, r > 0, k >= 1, |eps| < 1; got n={n}, r={r}, k={k}, eps={eps}"
        )));
    }
    let vertices = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            let rho = r * (1.0 + eps * (k as f64 * theta).cos());
            let (s, c) = theta.sin_cos();
            Point::new(rho * c, rho * s)
        })
        .collect();
    Ok(PatchRegion::from_loops_unchecked(vec![Loop::new(vertices)]))
}

/// Seeded random simple polygon: star-shaped about a random center with
/// jittered angles and random radii, then rotated and anisotropically
/// scaled (affine maps preserve simplicity). Coordinates stay in [-10, 10].
pub fn random_star_polygon<R: Rng>(rng: &mut R, min_vertices: usize, max_vertices: usize) -> PatchRegion {
    let n = rng.random_range(min_vertices..=max_vertices);
    let center = Point::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
    let rot = rng.random_range(0.0..std::f64::consts::TAU);
    let sx = rng.random_range(0.4..1.0);
    let sy = rng.random_range(0.4..1.0);
    let vertices = (0..n)
        .map(|j| {
            let jitter: f64 = rng.random_range(-0.3..0.3);
            let theta = std::f64::consts::TAU * (j as f64 + jitter) / n as f64;
            let rho: f64 = rng.random_range(0.3..5.5);
            let (s, c) = theta.sin_cos();
            let p = Point::new(sx * rho * c, sy * rho * s).rotated(rot);
            center + p
        })
        .collect();
    PatchRegion::from_loops_unchecked(vec![Loop::new(vertices)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    #[test]
    fn inscribed_square_has_area_two() {
        let r = regular_ngon(4, &Disk::at_origin(1.0).unwrap(), false).unwrap();
        assert_relative_eq!(r.total_signed_area(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn area_matched_hexagon_is_exact() {
        let r = regular_ngon(6, &Disk::at_origin(1.0).unwrap(), true).unwrap();
        assert_relative_eq!(r.total_signed_area(), PI, max_relative = 1e-14);
    }

    #[test]
    fn ngon_needs_three_vertices() {
        assert!(regular_ngon(2, &Disk::at_origin(1.0).unwrap(), false).is_err());
    }

    #[test]
    fn hausdorff_distance_is_second_order() {
        // For the inscribed n-gon the distance to the circle is the sagitta
        // r (1 - cos(π/n)) ~ r π²/(2n²); doubling n shrinks it ~4x.
        let sag = |n: u32| 1.0 - (PI / n as f64).cos();
        let ratio = sag(64) / sag(128);
        assert!((ratio - 4.0).abs() < 0.01, "ratio = {ratio}");
    }

    #[test]
    fn perturbed_circle_is_valid_region() {
        let r = perturbed_circle_ngon(256, 1.0, 3, 0.1).unwrap();
        // Re-validate through the checked constructor.
        let loops: Vec<Vec<Point>> = r.loops().iter().map(|l| l.vertices().to_vec()).collect();
        assert!(PatchRegion::new(loops).is_ok());
        assert!(perturbed_circle_ngon(256, 1.0, 3, 1.0).is_err());
    }

    #[test]
    fn random_polygons_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = random_star_polygon(&mut rng, 5, 60);
            let (lo, hi) = r.bounding_box();
            assert!(lo.x >= -10.0 && lo.y >= -10.0 && hi.x <= 10.0 && hi.y <= 10.0);
            let loops: Vec<Vec<Point>> = r.loops().iter().map(|l| l.vertices().to_vec()).collect();
            assert!(PatchRegion::new(loops).is_ok());
        }
    }
}
