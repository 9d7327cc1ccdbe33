//! d = 1 support-line envelopes: polyline boundaries of the planar bodies
//! K^> (inner, half-planes (x,n) ≥ c) and K^< (Wulff, half-planes
//! (x,n) ≤ c), plus the region-area machinery used for volumes and the
//! dilatation solve.

use super::{BodySense, ConvexShape, VolumeModel};
use crate::entropy::{Direction, TensionFunction};
use crate::{Error, Result};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SupportLine {
    theta: f64,
    nx: f64,
    ny: f64,
    c: f64,
}

impl SupportLine {
    fn at_angle(theta: f64, c: f64) -> Self {
        SupportLine { theta, nx: theta.cos().max(0.0), ny: theta.sin().max(0.0), c }
    }

    fn slack(&self, p: [f64; 2]) -> f64 {
        p[0] * self.nx + p[1] * self.ny - self.c
    }
}

fn intersect(a: &SupportLine, b: &SupportLine) -> [f64; 2] {
    let det = a.nx * b.ny - a.ny * b.nx; // sin(theta_b - theta_a)
    [
        (a.c * b.ny - b.c * a.ny) / det,
        (b.c * a.nx - a.c * b.nx) / det,
    ]
}

/// Envelope of sorted support lines. `ge = true` keeps the boundary of
/// ∩ {(x,n) ≥ c} (inner body), `ge = false` of ∩ {(x,n) ≤ c} (Wulff body).
/// Returns the active lines (angle-sorted) and the chain vertices between
/// consecutive active lines.
pub(crate) struct CurveEnvelope {
    lines: Vec<SupportLine>,
    verts: Vec<[f64; 2]>,
    ge: bool,
}

fn envelope(mut lines: Vec<SupportLine>, ge: bool) -> Result<CurveEnvelope> {
    lines.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
    // merge near-equal angles, keeping the tighter constraint
    let mut merged: Vec<SupportLine> = Vec::with_capacity(lines.len());
    for l in lines {
        if let Some(last) = merged.last_mut() {
            if (l.theta - last.theta).abs() < 1e-13 {
                let tighter = if ge { l.c > last.c } else { l.c < last.c };
                if tighter {
                    *last = l;
                }
                continue;
            }
        }
        merged.push(l);
    }
    if merged.len() < 2 {
        return Err(Error::Build("not enough distinct support directions".into()));
    }

    let mut stack: Vec<SupportLine> = Vec::with_capacity(merged.len());
    for l in merged {
        while stack.len() >= 2 {
            let v = intersect(&stack[stack.len() - 2], &stack[stack.len() - 1]);
            let eps = 1e-12 * (1.0 + l.c.abs() + v[0].abs() + v[1].abs());
            let s = l.slack(v);
            let violated = if ge { s < -eps } else { s > eps };
            if violated {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(l);
    }
    let verts: Vec<[f64; 2]> = stack
        .windows(2)
        .map(|w| intersect(&w[0], &w[1]))
        .collect();
    Ok(CurveEnvelope { lines: stack, verts, ge })
}

impl CurveEnvelope {
    /// Full boundary polyline at dilatation `lam`, clipped to the box
    /// [0, bx]², with the facet line index for each returned segment.
    /// Points come back ordered from the high-y end to the high-x end for
    /// inner bodies, from the x-axis to the y-axis for Wulff bodies.
    fn polyline_in_box(&self, lam: f64, bx: f64) -> Vec<([f64; 2], usize)> {
        // travel direction along line i on the body boundary
        let dir = |l: &SupportLine| {
            if self.ge {
                [l.ny, -l.nx]
            } else {
                [-l.ny, l.nx]
            }
        };
        let k = self.lines.len();
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(k + 2);
        let scaled: Vec<[f64; 2]> =
            self.verts.iter().map(|v| [v[0] * lam, v[1] * lam]).collect();
        // far endpoints along the first and last rays
        let reach = 4.0 * (bx + 1.0)
            + scaled
                .iter()
                .fold(0.0f64, |m, v| m.max(v[0].abs()).max(v[1].abs()));
        let first = &self.lines[0];
        let last = &self.lines[k - 1];
        if scaled.is_empty() {
            // single active line: a chord across the box
            let d = dir(first);
            // any point on the scaled line
            let p0 = [first.nx * first.c * lam, first.ny * first.c * lam];
            pts.push([p0[0] - reach * d[0], p0[1] - reach * d[1]]);
            pts.push([p0[0] + reach * d[0], p0[1] + reach * d[1]]);
        } else {
            let d0 = dir(first);
            let v0 = scaled[0];
            pts.push([v0[0] - reach * d0[0], v0[1] - reach * d0[1]]);
            pts.extend_from_slice(&scaled);
            let dl = dir(last);
            let vl = scaled[scaled.len() - 1];
            pts.push([vl[0] + reach * dl[0], vl[1] + reach * dl[1]]);
        }
        // clip each segment to the box; segment j lies on line j
        let mut run: Vec<([f64; 2], usize)> = Vec::new();
        for j in 0..pts.len() - 1 {
            if let Some((a, b)) = clip_segment(pts[j], pts[j + 1], bx) {
                push_point(&mut run, a, j, bx);
                push_point(&mut run, b, j, bx);
            }
        }
        run
    }

    /// Origin-side area of the body complement (ge) or the body itself
    /// (le/Wulff) within [0, bx]², at dilatation lam.
    pub(crate) fn region_area(&self, lam: f64, bx: f64) -> f64 {
        let run = self.polyline_in_box(lam, bx);
        if run.len() < 2 {
            // chain misses the box entirely: decide by the far corner
            let corner = [bx, bx];
            let inside_body = self.lines.iter().all(|l| {
                let s = corner[0] * l.nx + corner[1] * l.ny - l.c * lam;
                if self.ge {
                    s >= 0.0
                } else {
                    s <= 0.0
                }
            });
            return if self.ge {
                if inside_body {
                    0.0
                } else {
                    bx * bx
                }
            } else {
                // Wulff body containing the whole box
                if inside_body {
                    bx * bx
                } else {
                    0.0
                }
            };
        }
        let pts: Vec<[f64; 2]> = run.iter().map(|(p, _)| *p).collect();
        region_area_from_run(&pts, bx)
    }

    /// Exponential-model estimate of the origin-side area beyond [0, bx]²
    /// where the chain exits through the box faces, for inner bodies.
    fn tail_estimate(&self, lam: f64, bx: f64) -> f64 {
        if !self.ge {
            return 0.0;
        }
        let run = self.polyline_in_box(lam, bx);
        if run.len() < 2 {
            return 0.0;
        }
        let tol = 1e-9 * bx.max(1.0);
        let mut tail = 0.0;
        let (start, si) = run[0];
        if start[1] >= bx - tol && start[0] > tol {
            // exits through the top: x decays as y grows
            let l = &self.lines[si];
            if l.ny > 1e-300 {
                tail += start[0] * start[0] * l.nx / l.ny;
            }
        }
        let (end, ei) = run[run.len() - 1];
        if end[0] >= bx - tol && end[1] > tol {
            let l = &self.lines[ei];
            if l.nx > 1e-300 {
                tail += end[1] * end[1] * l.ny / l.nx;
            }
        }
        tail
    }

    /// Materialize the boundary at dilatation `lam` clipped to [0, bx]² as a
    /// public shape. Returns the shape and the facet line indices touching
    /// the far box faces (used by the cube-largeness check).
    pub(crate) fn to_shape(&self, lam: f64, bx: f64, with_tail: bool) -> Result<ConvexShape> {
        let run = self.polyline_in_box(lam, bx);
        if run.len() < 2 {
            return Err(Error::Build(
                "envelope does not intersect the requested window".into(),
            ));
        }
        let mut vertices: Vec<[f64; 3]> = Vec::with_capacity(run.len());
        let mut segments = Vec::new();
        let mut normals = Vec::new();
        let mut areas = Vec::new();
        for (p, _) in &run {
            vertices.push([p[0].max(0.0), p[1].max(0.0), 0.0]);
        }
        for j in 0..run.len() - 1 {
            let (a, _) = run[j];
            // shared points keep the tag of the segment that produced them
            // first, so the facet's line is carried by its second endpoint
            let (b, ia) = run[j + 1];
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            if len < 1e-14 * bx.max(1.0) {
                continue;
            }
            let l = &self.lines[ia];
            segments.push([j, j + 1]);
            normals.push(Direction::new(&[l.nx, l.ny])?);
            areas.push(len);
        }
        if segments.is_empty() {
            return Err(Error::Build("clipped envelope is degenerate".into()));
        }
        let first = vertices[segments[0][0]];
        let last = vertices[segments[segments.len() - 1][1]];
        let bounded = endpoint_on_axis(first, bx) && endpoint_on_axis(last, bx);
        let mut shape = ConvexShape {
            dim: 1,
            window: bx,
            vertices,
            segments,
            triangles: Vec::new(),
            facet_normals: normals,
            facet_areas: areas,
            vertex_normals: Vec::new(),
            tail: 0.0,
            bounded,
            sense: if self.ge { BodySense::Inner } else { BodySense::Wulff },
            model: VolumeModel::PolylineRegion,
        };
        if with_tail {
            shape.set_tail(self.tail_estimate(lam, bx));
        }
        Ok(shape)
    }

    /// Minimum normal component among facets that touch the far box faces
    /// at dilatation lam; `None` when the chain stays inside (the body
    /// continuation hugs the axes by construction).
    pub(crate) fn far_face_contact(&self, lam: f64, bx: f64) -> Option<f64> {
        let run = self.polyline_in_box(lam, bx);
        if run.len() < 2 {
            return None;
        }
        let tol = 1e-9 * bx.max(1.0);
        let mut worst: Option<f64> = None;
        for &(p, i) in [&run[0], &run[run.len() - 1]] {
            if p[0] >= bx - tol || p[1] >= bx - tol {
                let l = &self.lines[i];
                let m = l.nx.min(l.ny);
                worst = Some(worst.map_or(m, |w: f64| w.max(m)));
            }
        }
        worst
    }

    pub(crate) fn max_offset(&self) -> f64 {
        self.lines.iter().fold(0.0f64, |m, l| m.max(l.c))
    }
}

/// An endpoint closes the region against the octant boundary when it sits
/// on a coordinate axis and not on a far face of the box (a far-face exit
/// means the body continues beyond the truncation).
pub(crate) fn endpoint_on_axis(p: [f64; 3], bx: f64) -> bool {
    let tol = 1e-9 * bx.max(1.0);
    (p[0] <= tol || p[1] <= tol) && p[0] < bx - tol && p[1] < bx - tol
}

fn push_point(run: &mut Vec<([f64; 2], usize)>, p: [f64; 2], line: usize, bx: f64) {
    if let Some((last, _)) = run.last() {
        let d = (last[0] - p[0]).abs() + (last[1] - p[1]).abs();
        if d < 1e-13 * bx.max(1.0) {
            return;
        }
    }
    run.push((p, line));
}

/// Liang-Barsky clip of a segment against [0, bx]².
fn clip_segment(a: [f64; 2], b: [f64; 2], bx: f64) -> Option<([f64; 2], [f64; 2])> {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (p, q) in [
        (-dx, a[0]),
        (dx, bx - a[0]),
        (-dy, a[1]),
        (dy, bx - a[1]),
    ] {
        if p.abs() < 1e-300 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            if r > t1 {
                return None;
            }
            if r > t0 {
                t0 = r;
            }
        } else {
            if r < t0 {
                return None;
            }
            if r < t1 {
                t1 = r;
            }
        }
    }
    Some((
        [a[0] + t0 * dx, a[1] + t0 * dy],
        [a[0] + t1 * dx, a[1] + t1 * dy],
    ))
}

/// Clip an ordered polyline to [0, bx]², returning the contiguous in-box run.
pub(crate) fn clip_polyline_to_box(pts: &[[f64; 2]], bx: f64) -> Vec<[f64; 2]> {
    let mut run: Vec<[f64; 2]> = Vec::new();
    let mut push = |p: [f64; 2]| {
        if let Some(last) = run.last() {
            if (last[0] - p[0]).abs() + (last[1] - p[1]).abs() < 1e-13 * bx.max(1.0) {
                return;
            }
        }
        run.push(p);
    };
    for w in pts.windows(2) {
        if let Some((a, b)) = clip_segment(w[0], w[1], bx) {
            push(a);
            push(b);
        }
    }
    run
}

/// Area of the origin-side region bounded by the in-box polyline run, the
/// coordinate axes and (when the run starts or ends on the far faces) the
/// box edges adjacent to the origin-side corners.
pub(crate) fn region_area_from_run(run: &[[f64; 2]], bx: f64) -> f64 {
    if run.len() < 2 {
        return 0.0;
    }
    let tol = 1e-9 * bx.max(1.0);
    let mut poly: Vec<[f64; 2]> = Vec::with_capacity(run.len() + 3);
    poly.push([0.0, 0.0]);
    let start = run[0];
    if start[0] > tol {
        if start[1] >= bx - tol {
            poly.push([0.0, bx]);
        } else {
            // open start: close horizontally to the y-axis
            poly.push([0.0, start[1]]);
        }
    }
    poly.extend_from_slice(run);
    let end = run[run.len() - 1];
    if end[1] > tol {
        if end[0] >= bx - tol {
            poly.push([bx, 0.0]);
        } else {
            poly.push([end[0], 0.0]);
        }
    }
    shoelace(&poly).abs()
}

fn shoelace(poly: &[[f64; 2]]) -> f64 {
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    s / 2.0
}

/// Angle samples for inner envelopes: geometric ladders near both endpoints
/// of the quarter circle (so the envelope reaches coordinate ≈ window) and a
/// uniform bulk.
fn inner_angles(samples: usize, window: f64) -> Vec<f64> {
    let theta_floor = (-(window + 3.0)).exp().max(1e-290);
    let theta_star: f64 = 0.03;
    let k = (samples / 8).max(2);
    let unif = samples.saturating_sub(2 * k).max(4);
    let mut angles = Vec::with_capacity(samples + 2);
    angles.push(0.0);
    let ratio = (theta_star / theta_floor).ln() / k as f64;
    for j in 0..k {
        let t = theta_floor * (ratio * j as f64).exp();
        angles.push(t);
        angles.push(FRAC_PI_2 - t);
    }
    for i in 0..unif {
        angles.push(theta_star + (FRAC_PI_2 - 2.0 * theta_star) * i as f64 / (unif - 1) as f64);
    }
    angles.push(FRAC_PI_2);
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    angles
}

pub(crate) fn inner_envelope(
    eta: &TensionFunction,
    samples: usize,
    window: f64,
) -> Result<CurveEnvelope> {
    let mut lines = Vec::new();
    for theta in inner_angles(samples, window) {
        let d = Direction::from_angle(theta)?;
        let c = eta.eval(&d);
        if c < -1e-12 {
            return Err(Error::Build(format!(
                "tension is negative ({c}) at angle {theta}"
            )));
        }
        lines.push(SupportLine::at_angle(theta, c.max(0.0)));
    }
    envelope(lines, true)
}

pub(crate) fn build_inner_d1(
    eta: &TensionFunction,
    samples: usize,
    window: f64,
) -> Result<ConvexShape> {
    inner_envelope(eta, samples, window)?.to_shape(1.0, window, true)
}

pub(crate) fn build_wulff_d1(tau: &TensionFunction, samples: usize) -> Result<ConvexShape> {
    let mut lines = Vec::with_capacity(samples);
    let mut cmax = 0.0f64;
    for i in 0..samples {
        let theta = FRAC_PI_2 * i as f64 / (samples - 1) as f64;
        let d = Direction::from_angle(theta)?;
        let c = tau.eval(&d);
        if c <= 1e-12 {
            return Err(Error::Build(format!(
                "Wulff tension must be strictly positive, got {c} at angle {theta}"
            )));
        }
        cmax = cmax.max(c);
        lines.push(SupportLine::at_angle(theta, c));
    }
    let env = envelope(lines, false)?;
    let mut shape = env.to_shape(1.0, 4.0 * cmax, false)?;
    // bounded body: tighten the window to the actual extent
    let extent = shape
        .vertices
        .iter()
        .fold(0.0f64, |m, v| m.max(v[0]).max(v[1]));
    shape.window = extent;
    shape.set_bounded(true);
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_keeps_interior() {
        let (a, b) = clip_segment([-1.0, 0.5], [2.0, 0.5], 1.0).unwrap();
        assert!((a[0] - 0.0).abs() < 1e-15 && (b[0] - 1.0).abs() < 1e-15);
        assert!(clip_segment([2.0, 2.0], [3.0, 3.0], 1.0).is_none());
    }

    #[test]
    fn region_area_quarter_square() {
        // diagonal chain from (0, 1) to (1, 0) inside a unit box: area 1/2
        let run = vec![[0.0, 1.0], [1.0, 0.0]];
        assert!((region_area_from_run(&run, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn region_area_with_corner_closure() {
        // chain entering through the top face and leaving through the right
        // face of a 2-box: region is the box minus the far corner triangle
        let run = vec![[1.0, 2.0], [2.0, 1.0]];
        assert!((region_area_from_run(&run, 2.0) - 3.5).abs() < 1e-14);
    }
}
