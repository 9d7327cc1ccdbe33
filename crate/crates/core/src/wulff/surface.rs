//! d = 2 parametric grid surfaces: the gradient of the homogeneous tension
//! extension over a graded barycentric grid on the ℓ₁-simplex, with prism
//! volumes of the resulting graph over the (x₂, x₃) plane.

use super::{BodySense, ConvexShape, VolumeModel};
use crate::entropy::{Direction, TensionFunction};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct MeshData {
    pub verts: Vec<[f64; 3]>,
    pub tris: Vec<[usize; 3]>,
    pub gens: Vec<Direction>,
}

/// Node values for one barycentric coordinate: a geometric ladder from
/// `p_floor` up to the uniform zone, then uniform spacing to 1. The ladder
/// lets the parametrization reach the exponentially thin tails of the body
/// without starving the bulk resolution.
fn ladder(m: usize, p_floor: f64) -> Vec<f64> {
    let q_star: f64 = 0.02;
    let dln = 0.33;
    let k = (((q_star / p_floor).ln() / dln).ceil() as usize).clamp(2, m / 2);
    let mut vals = Vec::with_capacity(m + 1);
    let span = (q_star / p_floor).ln();
    for j in 0..k {
        vals.push(p_floor * (span * j as f64 / k as f64).exp());
    }
    for j in k..=m {
        vals.push(q_star + (1.0 - q_star) * (j - k) as f64 / (m - k) as f64);
    }
    vals
}

/// Evaluate the gradient parametrization of `t` on the graded simplex grid.
pub(crate) fn parametric_mesh(
    t: &TensionFunction,
    m: usize,
    p_floor: f64,
) -> Result<MeshData> {
    let vals = ladder(m, p_floor);
    let mut index = vec![vec![usize::MAX; m + 1]; m + 1];
    let mut verts = Vec::new();
    let mut gens = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let k = m - i - j;
            let raw = [vals[i], vals[j], vals[k]];
            let s = raw[0] + raw[1] + raw[2];
            let p = [raw[0] / s, raw[1] / s, raw[2] / s];
            let v = t.surface_point(&p)?;
            index[i][j] = verts.len();
            verts.push([v[0], v[1], v[2]]);
            gens.push(Direction::new(&p)?);
        }
    }
    let mut tris = Vec::new();
    for i in 0..m {
        for j in 0..(m - i) {
            tris.push([index[i][j], index[i + 1][j], index[i][j + 1]]);
            if i + j + 2 <= m {
                tris.push([index[i + 1][j], index[i + 1][j + 1], index[i][j + 1]]);
            }
        }
    }
    // orient every triangle away from the origin
    for t in &mut tris {
        let cr = cross(&verts, *t);
        if cr[0] + cr[1] + cr[2] < 0.0 {
            t.swap(1, 2);
        }
    }
    Ok(MeshData { verts, tris, gens })
}

fn cross(verts: &[[f64; 3]], t: [usize; 3]) -> [f64; 3] {
    let a = verts[t[0]];
    let b = verts[t[1]];
    let c = verts[t[2]];
    let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ]
}

/// Volume under the piecewise-linear graph x₁ = h(x₂, x₃): the signed prism
/// sum is exact for the interpolant.
pub(crate) fn prism_volume(verts: &[[f64; 3]], tris: &[[usize; 3]]) -> f64 {
    let mut total = 0.0;
    for t in tris {
        let a = verts[t[0]];
        let b = verts[t[1]];
        let c = verts[t[2]];
        let area2 = (b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]);
        total += area2 / 2.0 * (a[0] + b[0] + c[0]) / 3.0;
    }
    total
}

/// Volume of [0, n]³ ∩ (octant \ λ·body): integrate min(h_λ, n) over the
/// square [0, n]², triangle by triangle, exactly for the PL interpolant.
pub(crate) fn volume_in_cube_mesh(mesh: &MeshData, lam: f64, n: f64) -> f64 {
    let mut total = 0.0;
    for t in &mesh.tris {
        let a = scale3(mesh.verts[t[0]], lam);
        let b = scale3(mesh.verts[t[1]], lam);
        let c = scale3(mesh.verts[t[2]], lam);
        let cr = {
            let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            [
                e1[1] * e2[2] - e1[2] * e2[1],
                e1[2] * e2[0] - e1[0] * e2[2],
                e1[0] * e2[1] - e1[1] * e2[0],
            ]
        };
        if cr[0].abs() < 1e-30 {
            continue; // vertical facet: no graph contribution
        }
        // plane x0 = al + be*x1 + ga*x2 through the triangle
        let be = -cr[1] / cr[0];
        let ga = -cr[2] / cr[0];
        let al = a[0] - be * a[1] - ga * a[2];
        let mut poly = vec![[a[1], a[2]], [b[1], b[2]], [c[1], c[2]]];
        if polygon_area(&poly) < 0.0 {
            poly.reverse();
        }
        let poly = clip_poly_to_square(poly, n);
        if poly.len() < 3 {
            continue;
        }
        let (below, above) = split_by_line(&poly, al - n, be, ga);
        if below.len() >= 3 {
            let (area, cx, cy) = polygon_area_centroid(&below);
            total += area * (al + be * cx + ga * cy);
        }
        if above.len() >= 3 {
            let (area, _, _) = polygon_area_centroid(&above);
            total += area * n;
        }
    }
    total
}

fn scale3(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    s / 2.0
}

fn polygon_area_centroid(poly: &[[f64; 2]]) -> (f64, f64, f64) {
    let mut area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let w = a[0] * b[1] - b[0] * a[1];
        area += w;
        cx += (a[0] + b[0]) * w;
        cy += (a[1] + b[1]) * w;
    }
    area /= 2.0;
    if area.abs() < 1e-300 {
        return (0.0, 0.0, 0.0);
    }
    (area, cx / (6.0 * area), cy / (6.0 * area))
}

/// Sutherland–Hodgman clip of a convex polygon against {f(p) >= 0}.
fn clip_halfplane(poly: Vec<[f64; 2]>, f: impl Fn(&[f64; 2]) -> f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = (f(&a), f(&b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let t = fa / (fa - fb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

fn clip_poly_to_square(poly: Vec<[f64; 2]>, n: f64) -> Vec<[f64; 2]> {
    let p = clip_halfplane(poly, |p| p[0]);
    let p = clip_halfplane(p, |p| n - p[0]);
    let p = clip_halfplane(p, |p| p[1]);
    clip_halfplane(p, |p| n - p[1])
}

/// Split a convex polygon by the line c0 + be*x + ga*y = 0 into the parts
/// with the expression ≤ 0 (`below`) and ≥ 0 (`above`).
fn split_by_line(poly: &[[f64; 2]], c0: f64, be: f64, ga: f64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let f = |p: &[f64; 2]| c0 + be * p[0] + ga * p[1];
    let below = clip_halfplane(poly.to_vec(), |p| -f(p));
    let above = clip_halfplane(poly.to_vec(), |p| f(p));
    (below, above)
}

/// Estimate of the origin-side volume in the three prongs beyond the mesh
/// reach. The cross-section at the extreme vertex is bounded by the
/// rectangle of its transverse coordinates and decays at least
/// exponentially, so half the rectangle per unit length is an upper-bound
/// flavored estimate; for the built-in tensions at window 30 it is below
/// 1e-6 by a wide margin.
fn prong_tail(verts: &[[f64; 3]]) -> f64 {
    let mut tail = 0.0;
    for axis in 0..3 {
        let mut best = 0.0f64;
        let mut cap = 0.0f64;
        for v in verts {
            if v[axis] > best {
                best = v[axis];
                cap = v[(axis + 1) % 3].abs() * v[(axis + 2) % 3].abs();
            }
        }
        tail += cap / 2.0;
    }
    tail
}

pub(crate) fn mesh_to_shape(mesh: MeshData, window: f64, bounded: bool) -> Result<ConvexShape> {
    let mut triangles = Vec::with_capacity(mesh.tris.len());
    let mut normals = Vec::with_capacity(mesh.tris.len());
    let mut areas = Vec::with_capacity(mesh.tris.len());
    let max_norm = mesh
        .tris
        .iter()
        .map(|t| {
            let cr = cross(&mesh.verts, *t);
            (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt()
        })
        .fold(0.0f64, f64::max);
    if max_norm <= 0.0 {
        return Err(Error::Build("parametric mesh is degenerate".into()));
    }
    for t in &mesh.tris {
        let cr = cross(&mesh.verts, *t);
        let norm = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        if norm < 1e-10 * max_norm {
            continue; // degenerate sliver: no reliable normal, negligible area
        }
        let dir = Direction::new_lenient(&[cr[0] / norm, cr[1] / norm, cr[2] / norm], 1e-3)?;
        triangles.push(*t);
        normals.push(dir);
        areas.push(norm / 2.0);
    }
    if triangles.is_empty() {
        return Err(Error::Build("parametric mesh is degenerate".into()));
    }
    let mut shape = ConvexShape {
        dim: 2,
        window,
        vertices: mesh.verts,
        segments: Vec::new(),
        triangles,
        facet_normals: normals,
        facet_areas: areas,
        vertex_normals: Vec::new(),
        tail: 0.0,
        bounded,
        sense: if bounded { BodySense::Wulff } else { BodySense::Inner },
        model: VolumeModel::MeshPrism,
    };
    shape.set_vertex_normals(mesh.gens);
    Ok(shape)
}

pub(crate) fn grid_side(samples: usize) -> usize {
    ((samples as f64).sqrt().round() as usize).max(8)
}

pub(crate) fn inner_p_floor(window: f64) -> f64 {
    (-(window + 2.0).min(17.0)).exp()
}

pub(crate) fn build_inner_d2(
    eta: &TensionFunction,
    samples: usize,
    window: f64,
) -> Result<ConvexShape> {
    let m = grid_side(samples);
    let mesh = parametric_mesh(eta, m, inner_p_floor(window))?;
    let tail = prong_tail(&mesh.verts);
    let mut shape = mesh_to_shape(mesh, window, false)?;
    shape.set_tail(tail);
    Ok(shape)
}

pub(crate) fn build_wulff_d2(tau: &TensionFunction, samples: usize) -> Result<ConvexShape> {
    let m = grid_side(samples);
    // positivity sweep on the grid itself happens via the offsets below
    let mesh = parametric_mesh(tau, m, 1e-9)?;
    for g in &mesh.gens {
        if tau.eval(g) <= 1e-12 {
            return Err(Error::Build(
                "Wulff tension must be strictly positive on the normal domain".into(),
            ));
        }
    }
    let extent = mesh
        .verts
        .iter()
        .fold(0.0f64, |a, v| a.max(v[0]).max(v[1]).max(v[2]));
    mesh_to_shape(mesh, extent, true)
}

/// Clip every triangle of the mesh (scaled by `lam`) to the cube [0, n]³.
/// Returns the clipped shape and the smallest normal component among facets
/// that were actually cut by a far face.
pub(crate) fn clip_mesh_to_cube(
    mesh: &MeshData,
    lam: f64,
    n: f64,
) -> Result<(ConvexShape, Option<f64>)> {
    let mut verts: Vec<[f64; 3]> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut normals: Vec<Direction> = Vec::new();
    let mut areas: Vec<f64> = Vec::new();
    let mut contact: Option<f64> = None;

    for t in &mesh.tris {
        let p0 = scale3(mesh.verts[t[0]], lam);
        let p1 = scale3(mesh.verts[t[1]], lam);
        let p2 = scale3(mesh.verts[t[2]], lam);
        let mut poly = vec![p0, p1, p2];
        let mut cut = false;
        for axis in 0..3 {
            if poly.iter().any(|p| p[axis] > n) {
                cut = true;
                poly = clip_poly3(&poly, axis, n);
            }
            if poly.len() < 3 {
                break;
            }
        }
        if poly.len() < 3 {
            continue;
        }
        let e1 = [p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]];
        let e2 = [p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]];
        let cr = [
            e1[1] * e2[2] - e1[2] * e2[1],
            e1[2] * e2[0] - e1[0] * e2[2],
            e1[0] * e2[1] - e1[1] * e2[0],
        ];
        let norm = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        if norm < 1e-30 {
            continue;
        }
        let dir = match Direction::new_lenient(&[cr[0] / norm, cr[1] / norm, cr[2] / norm], 1e-3)
        {
            Ok(d) => d,
            Err(_) => continue,
        };
        if cut {
            let m = dir
                .components()
                .iter()
                .fold(f64::INFINITY, |a, &x| a.min(x));
            contact = Some(contact.map_or(m, |c: f64| c.max(m)));
        }
        // fan triangulation of the clipped polygon
        let base = verts.len();
        verts.extend_from_slice(&poly);
        for i in 1..poly.len() - 1 {
            let tri = [base, base + i, base + i + 1];
            let a = verts[tri[0]];
            let b = verts[tri[1]];
            let c = verts[tri[2]];
            let f1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let f2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let fc = [
                f1[1] * f2[2] - f1[2] * f2[1],
                f1[2] * f2[0] - f1[0] * f2[2],
                f1[0] * f2[1] - f1[1] * f2[0],
            ];
            let fn_ = (fc[0] * fc[0] + fc[1] * fc[1] + fc[2] * fc[2]).sqrt();
            if fn_ < 1e-30 {
                continue;
            }
            triangles.push(tri);
            normals.push(dir);
            areas.push(fn_ / 2.0);
        }
    }
    if triangles.is_empty() {
        return Err(Error::Build("cube clip removed the whole surface".into()));
    }
    let mut shape = ConvexShape {
        dim: 2,
        window: n,
        vertices: verts,
        segments: Vec::new(),
        triangles,
        facet_normals: normals,
        facet_areas: areas,
        vertex_normals: Vec::new(),
        tail: 0.0,
        bounded: false,
        sense: BodySense::Inner,
        model: VolumeModel::MeshPrism,
    };
    let scaled = MeshData {
        verts: mesh.verts.iter().map(|v| scale3(*v, lam)).collect(),
        tris: mesh.tris.clone(),
        gens: Vec::new(),
    };
    shape.set_cube_model(scaled, n);
    Ok((shape, contact))
}

/// Clip a planar 3-D polygon against {x[axis] <= bound}.
fn clip_poly3(poly: &[[f64; 3]], axis: usize, bound: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = (bound - a[axis], bound - b[axis]);
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let t = fa / (fa - fb);
            out.push([
                a[0] + t * (b[0] - a[0]),
                a[1] + t * (b[1] - a[1]),
                a[2] + t * (b[2] - a[2]),
            ]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_volume_of_flat_plate() {
        // unit square at height 2 over the (x2, x3) plane: volume 2
        let verts = vec![
            [2.0, 0.0, 0.0],
            [2.0, 1.0, 0.0],
            [2.0, 1.0, 1.0],
            [2.0, 0.0, 1.0],
        ];
        let tris = vec![[0, 1, 2], [0, 2, 3]];
        let v = prism_volume(&verts, &tris);
        assert!((v.abs() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cube_clamp_limits_height() {
        // plate at height 2 clipped to the unit cube contributes 1
        let verts = vec![
            [2.0, 0.0, 0.0],
            [2.0, 1.0, 0.0],
            [2.0, 1.0, 1.0],
            [2.0, 0.0, 1.0],
        ];
        let mut tris = vec![[0usize, 1, 2], [0, 2, 3]];
        for t in &mut tris {
            let cr = cross(&verts, *t);
            if cr[0] < 0.0 {
                t.swap(1, 2);
            }
        }
        let mesh = MeshData { verts, tris, gens: Vec::new() };
        let v = volume_in_cube_mesh(&mesh, 1.0, 1.0);
        assert!((v - 1.0).abs() < 1e-14, "got {v}");
    }

    #[test]
    fn ladder_is_monotone() {
        let v = ladder(64, 1e-12);
        assert_eq!(v.len(), 65);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        assert!((v[64] - 1.0).abs() < 1e-15);
        assert!((v[0] - 1e-12).abs() < 1e-24);
    }
}
