//! Polygonal patch regions: oriented boundary loops with holes.
//!
//! A region is a finite union of simple polygonal loops. Loops at even
//! nesting depth bound material and are oriented counterclockwise (positive
//! signed area); loops at odd depth are holes and run clockwise. Orientation
//! is inferred and normalized on construction, so callers may supply loops
//! in either direction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::point::Point;
use crate::geometry::EPS_GEOM;
use crate::numerics::Accumulator;

/// One closed polygonal boundary loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Loop {
    vertices: Vec<Point>,
}

impl Loop {
    pub fn new(vertices: Vec<Point>) -> Self {
        Loop { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area; positive for counterclockwise loops.
    pub fn signed_area(&self) -> f64 {
        let mut acc = Accumulator::new();
        for (a, b) in self.edges() {
            acc.add(a.cross(b));
        }
        0.5 * acc.total()
    }

    /// Cyclic edge iterator `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reverse(&mut self) {
        self.vertices.reverse();
    }

    /// Winding number of this loop around `p` (Sunday's crossing rule).
    pub fn winding_number(&self, p: Point) -> i32 {
        let mut w = 0;
        for (a, b) in self.edges() {
            if a.y <= p.y {
                if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                    w += 1;
                }
            } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
                w -= 1;
            }
        }
        w
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    fn map_points(&self, f: impl Fn(Point) -> Point) -> Loop {
        Loop::new(self.vertices.iter().map(|&v| f(v)).collect())
    }
}

/// A bounded open region of the plane given by polygonal boundary loops.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchRegion {
    loops: Vec<Loop>,
}

/// Serialized form: `{"loops": [[[x, y], ...], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionFile {
    loops: Vec<Vec<Point>>,
}

impl PatchRegion {
    /// Validates loop simplicity and mutual non-crossing, infers nesting
    /// depth, and normalizes orientation (even depth counterclockwise,
    /// odd depth clockwise).
    pub fn new(loops: Vec<Vec<Point>>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(loops.len());
        for (li, mut vs) in loops.into_iter().enumerate() {
            // Accept a repeated closing vertex.
            if vs.len() >= 2 && vs[0].dist(*vs.last().unwrap()) <= EPS_GEOM {
                vs.pop();
            }
            validate_loop(li, &vs)?;
            cleaned.push(Loop::new(vs));
        }
        if cleaned.is_empty() {
            return Err(Error::NonPositiveArea { area: 0.0 });
        }
        check_loops_disjoint(&cleaned)?;
        let mut region = PatchRegion { loops: cleaned };
        region.normalize_orientation();
        let total = region.total_signed_area();
        if !(total > 0.0) {
            return Err(Error::NonPositiveArea { area: total });
        }
        Ok(region)
    }

    /// Constructor for loops already known to be simple, disjoint, and
    /// correctly oriented (fixture generators, the marker-advection loop).
    pub(crate) fn from_loops_unchecked(loops: Vec<Loop>) -> Self {
        PatchRegion { loops }
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    /// Sum of signed loop areas: the region's mass for valid regions.
    pub fn total_signed_area(&self) -> f64 {
        self.loops.iter().map(|l| l.signed_area()).sum()
    }

    pub fn winding_number(&self, p: Point) -> i32 {
        self.loops.iter().map(|l| l.winding_number(p)).sum()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.winding_number(p) != 0
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for l in &self.loops {
            let (a, b) = l.bounding_box();
            lo.x = lo.x.min(a.x);
            lo.y = lo.y.min(a.y);
            hi.x = hi.x.max(b.x);
            hi.y = hi.y.max(b.y);
        }
        (lo, hi)
    }

    pub fn perimeter(&self) -> f64 {
        self.loops.iter().map(|l| l.perimeter()).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.loops.iter().map(|l| l.len()).sum()
    }

    pub fn translated(&self, c: Point) -> PatchRegion {
        self.map_loops(|v| v + c)
    }

    /// Rotation about the origin.
    pub fn rotated(&self, angle: f64) -> PatchRegion {
        self.map_loops(|v| v.rotated(angle))
    }

    /// Dilation about the origin, `k > 0`.
    pub fn scaled(&self, k: f64) -> PatchRegion {
        self.map_loops(|v| v * k)
    }

    fn map_loops(&self, f: impl Fn(Point) -> Point + Copy) -> PatchRegion {
        PatchRegion {
            loops: self.loops.iter().map(|l| l.map_points(f)).collect(),
        }
    }

    fn normalize_orientation(&mut self) {
        let depths: Vec<usize> = (0..self.loops.len())
            .map(|i| {
                let probe = self.loops[i].vertices()[0];
                self.loops
                    .iter()
                    .enumerate()
                    .filter(|&(j, l)| j != i && l.winding_number(probe) != 0)
                    .count()
            })
            .collect();
        for (l, depth) in self.loops.iter_mut().zip(depths) {
            let ccw = l.signed_area() > 0.0;
            let want_ccw = depth % 2 == 0;
            if ccw != want_ccw {
                l.reverse();
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: RegionFile =
            serde_json::from_str(s).map_err(|e| Error::RegionFormat(e.to_string()))?;
        PatchRegion::new(file.loops)
    }

    pub fn to_json_string(&self) -> String {
        let file = RegionFile {
            loops: self.loops.iter().map(|l| l.vertices().to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("region serialization cannot fail")
    }
}

fn validate_loop(li: usize, vs: &[Point]) -> Result<()> {
    if vs.len() < 3 {
        return Err(Error::TooFewVertices {
            loop_index: li,
            got: vs.len(),
            min: 3,
        });
    }
    for (vi, v) in vs.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteCoordinate {
                loop_index: li,
                vertex: vi,
            });
        }
    }
    let n = vs.len();
    for i in 0..n {
        if vs[i].dist(vs[(i + 1) % n]) <= EPS_GEOM {
            return Err(Error::DuplicateVertex {
                loop_index: li,
                vertex: i,
            });
        }
    }
    let area = Loop::new(vs.to_vec()).signed_area();
    if area.abs() <= EPS_GEOM * EPS_GEOM {
        return Err(Error::DegenerateLoop {
            loop_index: li,
            area,
        });
    }
    check_simple(li, vs)?;
    Ok(())
}

/// Self-intersection test. Non-adjacent edge pairs must stay farther apart
/// than the geometric tolerance; adjacent pairs only need the collinear
/// fold-back (spike) check, since two non-collinear segments sharing an
/// endpoint meet only there.
fn check_simple(li: usize, vs: &[Point]) -> Result<()> {
    let n = vs.len();
    for i in 0..n {
        let u = vs[(i + 1) % n] - vs[i];
        let v = vs[(i + 2) % n] - vs[(i + 1) % n];
        if u.cross(v).abs() <= EPS_GEOM * u.norm().max(v.norm()) && u.dot(v) < 0.0 {
            return Err(Error::SelfIntersection {
                loop_index: li,
                edge_a: i,
                edge_b: (i + 1) % n,
            });
        }
    }
    for i in 0..n {
        let (p, q) = (vs[i], vs[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent through the wrap
            }
            let (a, b) = (vs[j], vs[(j + 1) % n]);
            if segments_touch(p, q, a, b, EPS_GEOM) {
                return Err(Error::SelfIntersection {
                    loop_index: li,
                    edge_a: i,
                    edge_b: j,
                });
            }
        }
    }
    Ok(())
}

fn check_loops_disjoint(loops: &[Loop]) -> Result<()> {
    for i in 0..loops.len() {
        for j in (i + 1)..loops.len() {
            let (ilo, ihi) = loops[i].bounding_box();
            let (jlo, jhi) = loops[j].bounding_box();
            if ilo.x > jhi.x + EPS_GEOM
                || jlo.x > ihi.x + EPS_GEOM
                || ilo.y > jhi.y + EPS_GEOM
                || jlo.y > ihi.y + EPS_GEOM
            {
                continue;
            }
            for (p, q) in loops[i].edges() {
                for (a, b) in loops[j].edges() {
                    if segments_touch(p, q, a, b, EPS_GEOM) {
                        return Err(Error::CrossingLoops {
                            loop_a: i,
                            loop_b: j,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// True when the two closed segments come within `eps` of each other.
pub(crate) fn segments_touch(p: Point, q: Point, a: Point, b: Point, eps: f64) -> bool {
    // Cheap bounding-box reject.
    if p.x.min(q.x) > a.x.max(b.x) + eps
        || a.x.min(b.x) > p.x.max(q.x) + eps
        || p.y.min(q.y) > a.y.max(b.y) + eps
        || a.y.min(b.y) > p.y.max(q.y) + eps
    {
        return false;
    }
    let d1 = (q - p).cross(a - p);
    let d2 = (q - p).cross(b - p);
    let d3 = (b - a).cross(p - a);
    let d4 = (b - a).cross(q - a);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let e2 = eps * eps;
    point_segment_dist_sq(a, p, q) <= e2
        || point_segment_dist_sq(b, p, q) <= e2
        || point_segment_dist_sq(p, a, b) <= e2
        || point_segment_dist_sq(q, a, b) <= e2
}

pub(crate) fn point_segment_dist_sq(x: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 == 0.0 {
        return x.dist_sq(a);
    }
    let t = ((x - a).dot(d) / len2).clamp(0.0, 1.0);
    x.dist_sq(a + d * t)
}
