//! Classical four-stage Runge-Kutta advection of the boundary markers.

use crate::error::{Error, Result};
use crate::geometry::point::Point;

use super::velocity::self_velocities;
use super::DiscretizedPatch;

fn displaced(patch: &DiscretizedPatch, k: &[Vec<Point>], scale: f64) -> DiscretizedPatch {
    let loops = patch
        .loops()
        .iter()
        .zip(k)
        .map(|(lp, kv)| lp.iter().zip(kv).map(|(&x, &v)| x + v * scale).collect())
        .collect();
    patch.with_loops(loops)
}

/// One RK4 step of every marker under the self-induced velocity field.
/// `dt = 0` returns the patch unchanged.
pub fn step_rk4(patch: &DiscretizedPatch, dt: f64) -> Result<DiscretizedPatch> {
    let k1 = self_velocities(patch);
    let p2 = displaced(patch, &k1, 0.5 * dt);
    let k2 = self_velocities(&p2);
    let p3 = displaced(patch, &k2, 0.5 * dt);
    let k3 = self_velocities(&p3);
    let p4 = displaced(patch, &k3, dt);
    let k4 = self_velocities(&p4);

    let sixth = dt / 6.0;
    let loops: Vec<Vec<Point>> = patch
        .loops()
        .iter()
        .enumerate()
        .map(|(li, lp)| {
            lp.iter()
                .enumerate()
                .map(|(mi, &x)| {
                    x + (k1[li][mi] + (k2[li][mi] + k3[li][mi]) * 2.0 + k4[li][mi]) * sixth
                })
                .collect()
        })
        .collect();

    let mut next = patch.with_loops(loops);
    next.advance_time(dt);
    check_step(&next)?;
    Ok(next)
}

/// Cheap per-step sanity: finite coordinates and no marker collisions.
/// Full self-intersection checks happen at sampling time in the evolution
/// driver.
fn check_step(patch: &DiscretizedPatch) -> Result<()> {
    let collapse = 1e-6 * patch.mean_spacing();
    for (li, lp) in patch.loops().iter().enumerate() {
        let n = lp.len();
        for i in 0..n {
            if !lp[i].is_finite() {
                return Err(Error::StepRejected {
                    reason: format!("non-finite marker {i} in loop {li}"),
                });
            }
            if lp[i].dist(lp[(i + 1) % n]) < collapse {
                return Err(Error::StepRejected {
                    reason: format!("markers {i} and {} of loop {li} collided", (i + 1) % n),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DiscretizedPatch;
    use crate::geometry::{region_moments, regular_ngon, Disk};

    fn circle_patch(n: usize) -> DiscretizedPatch {
        let region = regular_ngon(n, &Disk::at_origin(1.0).unwrap(), true).unwrap();
        DiscretizedPatch::from_region(&region).unwrap()
    }

    #[test]
    fn zero_dt_is_identity() {
        let p = circle_patch(64);
        let q = step_rk4(&p, 0.0).unwrap();
        assert_eq!(p.loops(), q.loops());
    }

    #[test]
    fn circular_patch_area_drift_per_step() {
        // The discrete circular patch rotates rigidly; the area drift per
        // step stays far below 1e-10 relative.
        let mut p = circle_patch(256);
        let a0 = p.to_region().total_signed_area();
        for _ in 0..10 {
            p = step_rk4(&p, 0.01).unwrap();
        }
        let a1 = p.to_region().total_signed_area();
        let per_step = ((a1 - a0) / a0).abs() / 10.0;
        assert!(per_step < 1e-10, "per-step drift {per_step:.3e}");
    }

    #[test]
    fn circular_patch_shape_is_stationary() {
        let mut p = circle_patch(128);
        let r0 = p.loops()[0][0].norm();
        for _ in 0..20 {
            p = step_rk4(&p, 0.02).unwrap();
        }
        for m in &p.loops()[0] {
            assert!((m.norm() - r0).abs() < 1e-6);
        }
        let m = region_moments(&p.to_region());
        assert!(m.momentum.norm() < 1e-12);
    }

    #[test]
    fn time_accumulates() {
        let p = circle_patch(64);
        let q = step_rk4(&p, 0.25).unwrap();
        assert_eq!(q.time(), 0.25);
    }
}
