//! Marker redistribution. Boundary stretching and compression move adjacent
//! marker spacings out of the `[s_min, s_max]` band; remeshing inserts
//! markers on long segments and merges markers on short ones, placing new
//! points on a chord-length cubic through the four surrounding markers.
//! After any change each loop is rescaled about its own centroid so the
//! enclosed area is restored exactly, keeping the remesh transparent to the
//! conservation diagnostics.

use crate::error::{Error, Result};
use crate::geometry::point::Point;
use crate::numerics::Accumulator;

use super::DiscretizedPatch;

/// Chord-length (alpha = 1) Catmull-Rom point between `p1` and `p2`,
/// `s` in [0, 1]. Barry-Goldman evaluation.
fn catmull_rom(p0: Point, p1: Point, p2: Point, p3: Point, s: f64) -> Point {
    let t0 = 0.0;
    let t1 = t0 + p0.dist(p1).max(1e-300);
    let t2 = t1 + p1.dist(p2).max(1e-300);
    let t3 = t2 + p2.dist(p3).max(1e-300);
    let t = t1 + s * (t2 - t1);

    let lerp = |pa: Point, pb: Point, ta: f64, tb: f64| pa * ((tb - t) / (tb - ta)) + pb * ((t - ta) / (tb - ta));
    let a1 = lerp(p0, p1, t0, t1);
    let a2 = lerp(p1, p2, t1, t2);
    let a3 = lerp(p2, p3, t2, t3);
    let b1 = lerp(a1, a2, t0, t2);
    let b2 = lerp(a2, a3, t1, t3);
    lerp(b1, b2, t1, t2)
}

fn loop_signed_area(vs: &[Point]) -> f64 {
    let mut acc = Accumulator::new();
    let n = vs.len();
    for i in 0..n {
        acc.add(vs[i].cross(vs[(i + 1) % n]));
    }
    0.5 * acc.total()
}

fn loop_centroid(vs: &[Point]) -> Point {
    let area = loop_signed_area(vs);
    let mut cx = Accumulator::new();
    let mut cy = Accumulator::new();
    let n = vs.len();
    for i in 0..n {
        let (a, b) = (vs[i], vs[(i + 1) % n]);
        let c = a.cross(b);
        cx.add(c * (a.x + b.x));
        cy.add(c * (a.y + b.y));
    }
    Point::new(cx.total(), cy.total()) * (1.0 / (6.0 * area))
}

fn remesh_loop(vs: &[Point], s_min: f64, s_max: f64, min_markers: usize) -> Vec<Point> {
    let needs_work = {
        let n = vs.len();
        (0..n).any(|i| {
            let d = vs[i].dist(vs[(i + 1) % n]);
            d < s_min || d > s_max
        })
    };
    if !needs_work {
        return vs.to_vec();
    }

    let area_before = loop_signed_area(vs);
    let mut work: Vec<Point> = vs.to_vec();

    // Merge pass: replace the endpoints of the shortest under-length segment
    // by one marker on the local cubic until the band holds.
    loop {
        let n = work.len();
        if n <= min_markers {
            break;
        }
        let mut shortest = (f64::INFINITY, 0usize);
        for i in 0..n {
            let d = work[i].dist(work[(i + 1) % n]);
            if d < shortest.0 {
                shortest = (d, i);
            }
        }
        if shortest.0 >= s_min {
            break;
        }
        let i = shortest.1;
        let p0 = work[(i + n - 1) % n];
        let p1 = work[i];
        let p2 = work[(i + 1) % n];
        let p3 = work[(i + 2) % n];
        let merged = catmull_rom(p0, p1, p2, p3, 0.5);
        work[i] = merged;
        work.remove((i + 1) % n);
    }

    // Insert pass: subdivide over-length segments on the local cubic.
    let n = work.len();
    let mut refined: Vec<Point> = Vec::with_capacity(n + 8);
    for i in 0..n {
        let p0 = work[(i + n - 1) % n];
        let p1 = work[i];
        let p2 = work[(i + 1) % n];
        let p3 = work[(i + 2) % n];
        refined.push(p1);
        let d = p1.dist(p2);
        if d > s_max {
            let pieces = (d / s_max).ceil() as usize;
            for j in 1..pieces {
                refined.push(catmull_rom(p0, p1, p2, p3, j as f64 / pieces as f64));
            }
        }
    }

    // Restore the enclosed area exactly by a dilation about the centroid.
    let area_after = loop_signed_area(&refined);
    if area_after != 0.0 && area_after.signum() == area_before.signum() {
        let k = (area_before / area_after).sqrt();
        let c = loop_centroid(&refined);
        for p in &mut refined {
            *p = c + (*p - c) * k;
        }
    }
    refined
}

/// Redistributes markers so adjacent spacings return to `[s_min, s_max]`.
/// Loops already inside the band are returned bit-identical.
pub fn remesh(patch: &DiscretizedPatch, s_min: f64, s_max: f64) -> Result<DiscretizedPatch> {
    if !(s_min > 0.0) || !(s_max > s_min) {
        return Err(Error::InvalidParameter(format!(
            "remesh needs 0 < s_min < s_max, got s_min={s_min}, s_max={s_max}"
        )));
    }
    let loops = patch
        .loops()
        .iter()
        .map(|vs| remesh_loop(vs, s_min, s_max, super::MIN_MARKERS_PER_LOOP))
        .collect();
    Ok(patch.with_loops(loops))
}
