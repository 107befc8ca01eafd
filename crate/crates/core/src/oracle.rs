//! Brute-force verifiers for the exact geometry and stability paths.
//!
//! Everything here is deliberately simple: cell-center rasterization with a
//! first-order error model, and seeded uniform Monte Carlo. The rasterizer
//! walks grid rows, collects the even-odd crossing intervals of the region
//! and the chord of the disk, and then visits the cell centers inside the
//! requested interval combination. The oracles only need to bound the exact
//! path, not compete with it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{disk::Disk, moments::Moments, point::Point, region::PatchRegion};
use crate::numerics::Accumulator;
use crate::stability::q_value;

/// Uniform cell grid. Cell centers are `lo + (i + 1/2) h`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub pitch: f64,
    pub lo: Point,
    pub hi: Point,
}

impl GridSpec {
    /// Grid covering the region (and optional disk) with a 2h pad.
    pub fn covering(region: &PatchRegion, disk: Option<&Disk>, pitch: f64) -> Result<GridSpec> {
        if !(pitch > 0.0) || !pitch.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid pitch must be positive, got {pitch}"
            )));
        }
        let (mut lo, mut hi) = inputs_bbox(region, disk);
        lo = lo - Point::new(2.0 * pitch, 2.0 * pitch);
        hi = hi + Point::new(2.0 * pitch, 2.0 * pitch);
        Ok(GridSpec { pitch, lo, hi })
    }

    fn check_contains(&self, region: &PatchRegion, disk: Option<&Disk>) -> Result<()> {
        let (blo, bhi) = inputs_bbox(region, disk);
        let pad = 2.0 * self.pitch;
        if blo.x - self.lo.x < pad - 1e-12
            || blo.y - self.lo.y < pad - 1e-12
            || self.hi.x - bhi.x < pad - 1e-12
            || self.hi.y - bhi.y < pad - 1e-12
        {
            return Err(Error::BoundingBoxTooSmall);
        }
        Ok(())
    }

    fn rows(&self) -> usize {
        (((self.hi.y - self.lo.y) / self.pitch) - 0.5).ceil().max(0.0) as usize
    }

    fn row_y(&self, j: usize) -> f64 {
        self.lo.y + (j as f64 + 0.5) * self.pitch
    }

    /// Integer range of cell indices whose centers fall in `[x0, x1)`.
    fn cell_range(&self, x0: f64, x1: f64) -> (i64, i64) {
        let a = ((x0 - self.lo.x) / self.pitch - 0.5).ceil() as i64;
        let b = ((x1 - self.lo.x) / self.pitch - 0.5).ceil() as i64;
        (a, b)
    }

    fn cell_x(&self, i: i64) -> f64 {
        self.lo.x + (i as f64 + 0.5) * self.pitch
    }
}

fn inputs_bbox(region: &PatchRegion, disk: Option<&Disk>) -> (Point, Point) {
    let (mut lo, mut hi) = region.bounding_box();
    if let Some(d) = disk {
        lo.x = lo.x.min(d.center.x - d.radius);
        lo.y = lo.y.min(d.center.y - d.radius);
        hi.x = hi.x.max(d.center.x + d.radius);
        hi.y = hi.y.max(d.center.y + d.radius);
    }
    (lo, hi)
}

/// Sorted x-crossings of the region boundary with the horizontal line at
/// `y`, paired into even-odd intervals.
fn region_row_intervals(region: &PatchRegion, y: f64) -> Vec<(f64, f64)> {
    let mut xs: Vec<f64> = Vec::new();
    for l in region.loops() {
        for (a, b) in l.edges() {
            // Half-open span so a row through a vertex counts once.
            let (ylo, yhi) = if a.y <= b.y { (a.y, b.y) } else { (b.y, a.y) };
            if ylo <= y && y < yhi {
                xs.push(a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y));
            }
        }
    }
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    xs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

fn disk_row_interval(disk: &Disk, y: f64) -> Option<(f64, f64)> {
    let dy = y - disk.center.y;
    let w2 = disk.radius * disk.radius - dy * dy;
    if w2 > 0.0 {
        let w = w2.sqrt();
        Some((disk.center.x - w, disk.center.x + w))
    } else {
        None
    }
}

#[derive(Clone, Copy)]
enum BoolOp {
    Union,
    Intersection,
    Xor,
    AMinusB,
}

/// Boolean combination of two disjoint sorted interval sets on a row.
fn combine_intervals(a: &[(f64, f64)], b: &[(f64, f64)], op: BoolOp) -> Vec<(f64, f64)> {
    let mut events: Vec<(f64, i8, i8)> = Vec::with_capacity(2 * (a.len() + b.len()));
    for &(lo, hi) in a {
        events.push((lo, 1, 0));
        events.push((hi, -1, 0));
    }
    for &(lo, hi) in b {
        events.push((lo, 0, 1));
        events.push((hi, 0, -1));
    }
    events.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    let keep = |ina: bool, inb: bool| match op {
        BoolOp::Union => ina || inb,
        BoolOp::Intersection => ina && inb,
        BoolOp::Xor => ina != inb,
        BoolOp::AMinusB => ina && !inb,
    };
    let mut out: Vec<(f64, f64)> = Vec::new();
    let (mut ca, mut cb) = (0i32, 0i32);
    let mut inside = false;
    let mut start = 0.0;
    for (x, da, db) in events {
        ca += da as i32;
        cb += db as i32;
        let now = keep(ca > 0, cb > 0);
        if now && !inside {
            start = x;
            inside = true;
        } else if !now && inside {
            if x > start {
                out.push((start, x));
            }
            inside = false;
        }
    }
    out
}

/// Cell-center occupancy moments; error O(h · perimeter) for the mass and
/// analogously for the higher moments.
pub fn grid_moments(region: &PatchRegion, g: &GridSpec) -> Result<Moments> {
    g.check_contains(region, None)?;
    let h = g.pitch;
    let cell = h * h;
    let mut mass = Accumulator::new();
    let mut mx = Accumulator::new();
    let mut my = Accumulator::new();
    let mut ang = Accumulator::new();
    for j in 0..g.rows() {
        let y = g.row_y(j);
        for (x0, x1) in region_row_intervals(region, y) {
            let (i0, i1) = g.cell_range(x0, x1);
            for i in i0..i1 {
                let x = g.cell_x(i);
                mass.add(cell);
                mx.add(cell * x);
                my.add(cell * y);
                ang.add(cell * (x * x + y * y));
            }
        }
    }
    Ok(Moments {
        mass: mass.total(),
        momentum: Point::new(mx.total(), my.total()),
        angular: ang.total(),
    })
}

fn weighted_sum_over(intervals: &[(f64, f64)], g: &GridSpec, y: f64, disk: &Disk) -> f64 {
    let r2 = disk.radius * disk.radius;
    let mut acc = Accumulator::new();
    for &(x0, x1) in intervals {
        let (i0, i1) = g.cell_range(x0, x1);
        let dy = y - disk.center.y;
        for i in i0..i1 {
            let dx = g.cell_x(i) - disk.center.x;
            acc.add((dx * dx + dy * dy - r2).abs());
        }
    }
    acc.total()
}

/// Direct quadrature of the defining integral of Q: the weight summed over
/// cells whose centers lie in exactly one of the two sets.
pub fn grid_q_direct(region: &PatchRegion, disk: &Disk, g: &GridSpec) -> Result<f64> {
    g.check_contains(region, Some(disk))?;
    let mut acc = Accumulator::new();
    for j in 0..g.rows() {
        let y = g.row_y(j);
        let ra = region_row_intervals(region, y);
        let rb: Vec<(f64, f64)> = disk_row_interval(disk, y).into_iter().collect();
        let xor = combine_intervals(&ra, &rb, BoolOp::Xor);
        acc.add(weighted_sum_over(&xor, g, y, disk));
    }
    Ok(acc.total() * g.pitch * g.pitch)
}

/// Checks the set-splitting identity `Q(A∪B; B) + Q(A∩B; B) = Q(A; B)` on
/// the rasterized sets. Returns `(lhs, rhs)` where `lhs` goes through the
/// union/intersection decomposition and `rhs` is the direct rasterized
/// quadrature; the identity is exact cell-for-cell, so the two differ only
/// by summation rounding.
pub fn grid_q_additivity(region: &PatchRegion, disk: &Disk, g: &GridSpec) -> Result<(f64, f64)> {
    g.check_contains(region, Some(disk))?;
    let mut lhs = Accumulator::new();
    let mut rhs = Accumulator::new();
    for j in 0..g.rows() {
        let y = g.row_y(j);
        let ra = region_row_intervals(region, y);
        let rb: Vec<(f64, f64)> = disk_row_interval(disk, y).into_iter().collect();
        // (A∪B) △ B = (A∪B) \ B and (A∩B) △ B = B \ (A∩B).
        let union = combine_intervals(&ra, &rb, BoolOp::Union);
        let inter = combine_intervals(&ra, &rb, BoolOp::Intersection);
        lhs.add(weighted_sum_over(
            &combine_intervals(&union, &rb, BoolOp::AMinusB),
            g,
            y,
            disk,
        ));
        lhs.add(weighted_sum_over(
            &combine_intervals(&rb, &inter, BoolOp::AMinusB),
            g,
            y,
            disk,
        ));
        rhs.add(weighted_sum_over(
            &combine_intervals(&ra, &rb, BoolOp::Xor),
            g,
            y,
            disk,
        ));
    }
    let h2 = g.pitch * g.pitch;
    Ok((lhs.total() * h2, rhs.total() * h2))
}

/// Rasterization error of the grid Q against the exact moment-identity
/// value, for refinement studies.
pub fn grid_q_error(region: &PatchRegion, disk: &Disk, g: &GridSpec) -> Result<f64> {
    let grid = grid_q_direct(region, disk, g)?;
    let exact = q_value(region, disk)?.value();
    Ok((grid - exact).abs())
}

/// Grid estimate of the sup of `||x|² - r²|` over the symmetric difference:
/// the maximum of the weight over cell centers classified into exactly one
/// of the two sets. Never exceeds the exact sup; lags it by O(h · diameter).
pub fn grid_sup_weight(region: &PatchRegion, disk: &Disk, g: &GridSpec) -> Result<f64> {
    g.check_contains(region, Some(disk))?;
    let r2 = disk.radius * disk.radius;
    let mut best: f64 = 0.0;
    for j in 0..g.rows() {
        let y = g.row_y(j);
        let ra = region_row_intervals(region, y);
        let rb: Vec<(f64, f64)> = disk_row_interval(disk, y).into_iter().collect();
        for (x0, x1) in combine_intervals(&ra, &rb, BoolOp::Xor) {
            let (i0, i1) = g.cell_range(x0, x1);
            for i in i0..i1 {
                let p = Point::new(g.cell_x(i), y);
                best = best.max((p.dist_sq(disk.center) - r2).abs());
            }
        }
    }
    Ok(best)
}

/// Monte Carlo configuration. A fixed seed yields a bit-identical estimate.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
}

/// Uniform-sampling estimate of `|A △ B|` with its standard error.
pub fn mc_symmetric_difference(
    region: &PatchRegion,
    disk: &Disk,
    cfg: &McConfig,
) -> Result<(f64, f64)> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter(
            "Monte Carlo needs at least one sample".into(),
        ));
    }
    let (lo, hi) = inputs_bbox(region, Some(disk));
    let extent = hi - lo;
    let box_area = extent.x * extent.y;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut hits: u64 = 0;
    for _ in 0..cfg.samples {
        let x = lo.x + extent.x * rng.random::<f64>();
        let y = lo.y + extent.y * rng.random::<f64>();
        let p = Point::new(x, y);
        if region.contains(p) != disk.contains(p) {
            hits += 1;
        }
    }
    let p_hat = hits as f64 / cfg.samples as f64;
    let estimate = box_area * p_hat;
    let stderr = box_area * (p_hat * (1.0 - p_hat) / cfg.samples as f64).sqrt();
    Ok((estimate, stderr))
}
