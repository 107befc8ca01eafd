//! Boundary-integral velocity of a uniform-vorticity region.
//!
//! For vorticity `ω` constant on a region Ω and zero outside, the induced
//! velocity reduces to a line integral over the boundary,
//!
//! ```text
//! u(x) = -(ω / 2π) ∮_{∂Ω} ln|x - y| dy ,
//! ```
//!
//! and on a polygonal boundary each straight segment integrates in closed
//! form. The endpoint log singularity is integrable and the closed form
//! remains finite when `x` is a segment endpoint, so marker self-induction
//! needs no special quadrature.

use rayon::prelude::*;

use crate::geometry::point::Point;
use crate::numerics::Accumulator;

use super::DiscretizedPatch;

const INV_TWO_PI: f64 = 1.0 / (2.0 * std::f64::consts::PI);

/// `(b - a) · ∫₀¹ ln|a + t(b-a) - x| dt`, the segment's contribution to the
/// boundary integral at the evaluation point `x`.
///
/// With `u` the normalized coordinate along the segment measured from the
/// foot of the perpendicular through `x`, the antiderivative of the log of
/// the squared distance is `u ln(L²u² + h²) - 2u + 2(h/L) atan(Lu/h)`; the
/// two arctangents combine into a single `atan2`, which also handles the
/// `h → 0` limit.
#[inline]
pub(crate) fn segment_integral(x: Point, a: Point, b: Point) -> Point {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 <= 0.0 {
        return Point::ZERO;
    }
    let c = a - x;
    let u0 = c.dot(d) / len2;
    let u1 = u0 + 1.0;
    let cr = c.cross(d);
    let h2 = cr * cr / len2;

    let g0 = len2 * u0 * u0 + h2;
    let g1 = len2 * u1 * u1 + h2;
    let mut val = -2.0;
    if u1 != 0.0 && g1 > 0.0 {
        val += u1 * g1.ln();
    }
    if u0 != 0.0 && g0 > 0.0 {
        val -= u0 * g0.ln();
    }
    let cr_abs = cr.abs();
    if cr_abs > 0.0 {
        val += 2.0 * (cr_abs / len2) * cr_abs.atan2(h2 + len2 * u0 * u1);
    }
    d * (0.5 * val)
}

/// Velocity induced at `x` by the patch, summing all boundary segments in
/// loop order with compensated accumulation.
pub fn boundary_velocity(patch: &DiscretizedPatch, x: Point) -> Point {
    let mut ax = Accumulator::new();
    let mut ay = Accumulator::new();
    for lp in patch.loops() {
        let n = lp.len();
        for i in 0..n {
            let s = segment_integral(x, lp[i], lp[(i + 1) % n]);
            ax.add(s.x);
            ay.add(s.y);
        }
    }
    Point::new(ax.total(), ay.total()) * (-patch.strength() * INV_TWO_PI)
}

/// Velocity at marker `mi` of loop `li`. Segments of the marker's own loop
/// are summed starting from the marker's own edge, so that configurations
/// mapped onto themselves by point reflection produce exactly mirrored
/// sums; other loops are visited in order.
fn marker_velocity(patch: &DiscretizedPatch, li: usize, mi: usize) -> Point {
    let mut ax = Accumulator::new();
    let mut ay = Accumulator::new();
    let x = patch.loops()[li][mi];
    for (lj, lp) in patch.loops().iter().enumerate() {
        let n = lp.len();
        let start = if lj == li { mi } else { 0 };
        for k in 0..n {
            let i = if start + k < n { start + k } else { start + k - n };
            let s = segment_integral(x, lp[i], lp[(i + 1) % n]);
            ax.add(s.x);
            ay.add(s.y);
        }
    }
    Point::new(ax.total(), ay.total()) * (-patch.strength() * INV_TWO_PI)
}

/// Velocities at every marker, shaped like the marker loops.
///
/// Marker evaluations are data-parallel; each marker's sum runs in a fixed
/// order, so results are bit-identical for any thread count.
pub fn self_velocities(patch: &DiscretizedPatch) -> Vec<Vec<Point>> {
    let index: Vec<(usize, usize)> = patch
        .loops()
        .iter()
        .enumerate()
        .flat_map(|(li, lp)| (0..lp.len()).map(move |mi| (li, mi)))
        .collect();
    let flat: Vec<Point> = index
        .par_iter()
        .map(|&(li, mi)| marker_velocity(patch, li, mi))
        .collect();
    let mut out: Vec<Vec<Point>> = patch.loops().iter().map(|l| Vec::with_capacity(l.len())).collect();
    for (&(li, _), v) in index.iter().zip(flat) {
        out[li].push(v);
    }
    out
}
