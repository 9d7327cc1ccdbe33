//! Closed-form limit shapes: the exponential curve of uniform Young
//! diagrams and the Cerf–Kenyon parametric surface of uniform plane
//! partitions, together with the identities and metrics tying them to the
//! support-inequality engine.

use crate::entropy::Direction;
use crate::special::{lobachevsky, ronkin_f, SKYSCRAPER_EXPONENT};
use crate::wulff::ConvexShape;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Strictly interior point of the 2-simplex {A + B + C = 1, all > 0}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexPoint {
    a: f64,
    b: f64,
    c: f64,
}

impl SimplexPoint {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) {
            return Err(Error::Domain(format!(
                "simplex point ({a}, {b}, {c}) must be strictly positive"
            )));
        }
        if ((a + b + c) - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "simplex point sums to {} instead of 1",
                a + b + c
            )));
        }
        Ok(SimplexPoint { a, b, c })
    }

    pub fn coords(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }
}

/// Point of the Young-diagram limit curve, parametrized by t ∈ (0, 1):
/// raw form (-ln t, -ln(1-t)), on which e^{-x} + e^{-y} = 1 identically;
/// scaled form multiplies by √6/π, normalizing the enclosed area to 1.
pub fn vershik_point(t: f64, scaled: bool) -> Result<[f64; 2]> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("parameter {t} outside (0, 1)")));
    }
    let mut p = [-t.ln(), -(1.0 - t).ln()];
    if scaled {
        let s = 6f64.sqrt() / PI;
        p[0] *= s;
        p[1] *= s;
    }
    Ok(p)
}

/// The curve sampled at t = i/(samples+1), i = 1..=samples.
pub fn vershik_polyline(samples: usize, scaled: bool) -> Result<Vec<[f64; 2]>> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    (1..=samples)
        .map(|i| vershik_point(i as f64 / (samples + 1) as f64, scaled))
        .collect()
}

/// The sampled curve as a d = 1 facet surface (ordered by descending y, so
/// facet normals lie in the quarter circle).
pub fn vershik_shape(samples: usize, scaled: bool, window: f64) -> Result<ConvexShape> {
    let mut pts = vershik_polyline(samples, scaled)?;
    // t ascending gives x descending; reverse into polyline order
    pts.reverse();
    ConvexShape::from_polyline(&pts, window)
}

/// Point of the plane-partition limit surface at simplex parameter
/// (A, B, C): raw form (f - ln A, f - ln B, f - ln C) with f = ronkin_f;
/// scaled form multiplies by (ζ(3)/4)^{-1/3}, normalizing the enclosed
/// volume to 1.
pub fn cerf_kenyon_point(p: &SimplexPoint, scaled: bool) -> Result<[f64; 3]> {
    let (a, b, c) = p.coords();
    let f = ronkin_f(a, b, c)?;
    let mut x = [f - a.ln(), f - b.ln(), f - c.ln()];
    if scaled {
        let s = SKYSCRAPER_EXPONENT / 3.0; // (zeta(3)/4)^{1/3}
        for v in &mut x {
            *v /= s;
        }
    }
    Ok(x)
}

/// ℓ₁-normalized normal direction of the limit surface at (A, B, C): the
/// facet densities (p_A, p_B, p_C) = (A ∂f/∂A, B ∂f/∂B, C ∂f/∂C).
///
/// Computed by the triangle rule: p_A is the angle opposite the side of
/// length A in the triangle with side lengths (A, B, C), divided by π; the
/// clamped arccos extends the rule continuously to the frozen regimes where
/// the triangle degenerates (A ≥ B + C gives (1, 0, 0) and cyclically).
/// Validated against the finite-difference oracle of f in the test suite.
pub fn facet_densities(p: &SimplexPoint) -> [f64; 3] {
    let (a, b, c) = p.coords();
    let alpha = (((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0)).acos();
    let beta = (((a * a + c * c - b * b) / (2.0 * a * c)).clamp(-1.0, 1.0)).acos();
    let pa = alpha / PI;
    let pb = beta / PI;
    [pa, pb, (1.0 - pa - pb).max(0.0)]
}

/// Residual of the support identity Σ xᵢ pᵢ = (1/π) Σ L(π pᵢ) at a simplex
/// parameter: x is the raw surface point and p its facet densities. A zero
/// residual certifies that the parametric surface is exactly the
/// support-inequality shape of the skyscraper entropy.
pub fn support_identity_residual(p: &SimplexPoint) -> Result<f64> {
    let x = cerf_kenyon_point(p, false)?;
    let d = facet_densities(p);
    let lhs = x[0] * d[0] + x[1] * d[1] + x[2] * d[2];
    let mut rhs = 0.0;
    for &q in &d {
        if q > 0.0 {
            rhs += lobachevsky((PI * q).min(PI))?;
        }
    }
    rhs /= PI;
    Ok((lhs - rhs).abs())
}

/// The limit surface sampled on the uniform barycentric grid of side `m`
/// (boundary nodes nudged strictly inside), as a triangulated shape.
pub fn cerf_kenyon_shape(m: usize, scaled: bool) -> Result<ConvexShape> {
    if m < 2 {
        return Err(Error::Domain("grid side must be at least 2".into()));
    }
    let nudge = 1e-7;
    let mut index = vec![vec![usize::MAX; m + 1]; m + 1];
    let mut verts: Vec<[f64; 3]> = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let k = m - i - j;
            let ra = (i as f64).max(nudge);
            let rb = (j as f64).max(nudge);
            let rc = (k as f64).max(nudge);
            let s = ra + rb + rc;
            let p = SimplexPoint::new(ra / s, rb / s, rc / s)?;
            index[i][j] = verts.len();
            verts.push(cerf_kenyon_point(&p, scaled)?);
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
    let extent = verts
        .iter()
        .fold(0.0f64, |a, v| a.max(v[0]).max(v[1]).max(v[2]));
    ConvexShape::from_triangles(&verts, &tris, extent)
}

/// Symmetric Hausdorff distance between the two shapes, restricted to
/// vertices inside [0, window]^{d+1}. Distances are measured from vertices
/// of one shape to the facets (segments or triangles) of the other, which
/// removes sampling-phase artifacts.
pub fn hausdorff_distance(a: &ConvexShape, b: &ConvexShape, window: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Domain("shapes have different dimensions".into()));
    }
    let d1 = directed_hausdorff(a, b, window)?;
    let d2 = directed_hausdorff(b, a, window)?;
    Ok(d1.max(d2))
}

fn directed_hausdorff(from: &ConvexShape, to: &ConvexShape, window: f64) -> Result<f64> {
    let tol = 1e-12 * window.max(1.0);
    let inside = |v: &[f64; 3]| {
        v[0] <= window + tol && v[1] <= window + tol && v[2] <= window + tol
    };
    let queries: Vec<[f64; 3]> = from
        .vertices()
        .iter()
        .filter(|v| inside(v))
        .copied()
        .collect();
    if queries.is_empty() {
        return Err(Error::Domain(
            "no vertices inside the comparison window".into(),
        ));
    }
    // facet bounding boxes of the target shape for early rejection
    let tv = to.vertices();
    let mut boxes: Vec<([f64; 3], [f64; 3])> = Vec::new();
    let mut facets: Vec<[usize; 3]> = Vec::new();
    if to.dim() == 1 {
        for s in to.segments() {
            facets.push([s[0], s[1], s[1]]);
        }
    } else {
        for t in to.triangles() {
            facets.push(*t);
        }
    }
    for f in &facets {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &vi in &f[..] {
            for k in 0..3 {
                lo[k] = lo[k].min(tv[vi][k]);
                hi[k] = hi[k].max(tv[vi][k]);
            }
        }
        boxes.push((lo, hi));
    }
    let mut worst = 0.0f64;
    for q in &queries {
        let mut best = f64::INFINITY;
        for (f, (lo, hi)) in facets.iter().zip(&boxes) {
            let mut bd2 = 0.0;
            for k in 0..3 {
                let d = (lo[k] - q[k]).max(0.0).max(q[k] - hi[k]);
                bd2 += d * d;
            }
            if bd2 >= best {
                continue;
            }
            let d2 = if to.dim() == 1 {
                dist2_point_segment(q, &tv[f[0]], &tv[f[1]])
            } else {
                dist2_point_triangle(q, &tv[f[0]], &tv[f[1]], &tv[f[2]])
            };
            best = best.min(d2);
        }
        worst = worst.max(best);
    }
    Ok(worst.sqrt())
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dist2_point_segment(p: &[f64; 3], a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let ab = sub(b, a);
    let ap = sub(p, a);
    let denom = dot(&ab, &ab);
    let t = if denom > 0.0 {
        (dot(&ap, &ab) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q = [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]];
    let d = sub(p, &q);
    dot(&d, &d)
}

/// Squared distance from a point to a triangle (Ericson, Real-Time
/// Collision Detection, §5.1.5).
fn dist2_point_triangle(p: &[f64; 3], a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(p, a);
    let d1 = dot(&ab, &ap);
    let d2 = dot(&ac, &ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return dot(&ap, &ap);
    }
    let bp = sub(p, b);
    let d3 = dot(&ab, &bp);
    let d4 = dot(&ac, &bp);
    if d3 >= 0.0 && d4 <= d3 {
        return dot(&bp, &bp);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let t = d1 / (d1 - d3);
        let q = [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]];
        let d = sub(p, &q);
        return dot(&d, &d);
    }
    let cp = sub(p, c);
    let d5 = dot(&ab, &cp);
    let d6 = dot(&ac, &cp);
    if d6 >= 0.0 && d5 <= d6 {
        return dot(&cp, &cp);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let t = d2 / (d2 - d6);
        let q = [a[0] + t * ac[0], a[1] + t * ac[1], a[2] + t * ac[2]];
        let d = sub(p, &q);
        return dot(&d, &d);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        let bc = sub(c, b);
        let q = [b[0] + t * bc[0], b[1] + t * bc[1], b[2] + t * bc[2]];
        let d = sub(p, &q);
        return dot(&d, &d);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    let q = [
        a[0] + ab[0] * v + ac[0] * w,
        a[1] + ab[1] * v + ac[1] * w,
        a[2] + ab[2] * v + ac[2] * w,
    ];
    let d = sub(p, &q);
    dot(&d, &d)
}

/// Finite-difference oracle for the facet densities: p_A ≈ A (f(A+h,B,C) -
/// f(A-h,B,C)) / 2h. Exposed for the validation suite.
pub fn facet_densities_fd(p: &SimplexPoint, h: f64) -> Result<[f64; 3]> {
    let (a, b, c) = p.coords();
    let g = |x: f64, y: f64, z: f64| ronkin_f(x, y, z);
    Ok([
        a * (g(a + h, b, c)? - g(a - h, b, c)?) / (2.0 * h),
        b * (g(a, b + h, c)? - g(a, b - h, c)?) / (2.0 * h),
        c * (g(a, b, c + h)? - g(a, b, c - h)?) / (2.0 * h),
    ])
}

/// Direction of the surface normal at a simplex parameter, as a unit vector.
pub fn facet_normal(p: &SimplexPoint) -> Result<Direction> {
    let d = facet_densities(p);
    Direction::new(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sp(a: f64, b: f64, c: f64) -> SimplexPoint {
        let s = a + b + c;
        SimplexPoint::new(a / s, b / s, c / s).unwrap()
    }

    #[test]
    fn vershik_examples() {
        let p = vershik_point(0.5, true).unwrap();
        assert!((p[0] - 0.5404446394667307).abs() < 1e-12);
        assert!((p[1] - p[0]).abs() < 1e-15);
        let q = vershik_point(0.5, false).unwrap();
        assert!((q[0] - 2f64.ln()).abs() < 1e-15);
        assert!(vershik_point(0.0, false).is_err());
        assert!(vershik_point(1.0, true).is_err());
    }

    #[test]
    fn vershik_defining_equation() {
        let s = PI / 6f64.sqrt();
        for i in 1..200 {
            let t = i as f64 / 200.0;
            let raw = vershik_point(t, false).unwrap();
            assert!(((-raw[0]).exp() + (-raw[1]).exp() - 1.0).abs() < 1e-12);
            let sc = vershik_point(t, true).unwrap();
            assert!(((-s * sc[0]).exp() + (-s * sc[1]).exp() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vershik_areas() {
        // area under y(x) = -ln(1 - e^{-x}): split the log singularity at 0
        // as -ln x - ln((1-e^{-x})/x), integrate the body, add the
        // exponential tail sum beyond x_max
        let a = 0.5_f64;
        let exact_head = a * (1.0 - a.ln()); // integral of -ln x on (0, a]
        let correction = quad::adaptive(
            &|x: f64| -((1.0 - (-x).exp()) / x).ln(),
            1e-12,
            a,
            1e-12,
        );
        let y = |x: f64| -(-(-x).exp()).ln_1p(); // -ln(1 - e^{-x})
        let x_max = 30.0;
        let body = quad::adaptive(&y, a, x_max, 1e-10);
        let tail: f64 = (1..6)
            .map(|k| (-(k as f64) * x_max).exp() / (k * k) as f64)
            .sum();
        let raw_area = exact_head + correction + body + tail;
        assert!(
            (raw_area - PI * PI / 6.0).abs() < 1e-6,
            "raw area {raw_area}"
        );
        // scaled curve: area scales by (sqrt6/pi)^2 = 6/pi^2
        let scaled = raw_area * 6.0 / (PI * PI);
        assert!((scaled - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cerf_kenyon_examples() {
        let sym = sp(1.0, 1.0, 1.0);
        let raw = cerf_kenyon_point(&sym, false).unwrap();
        for v in raw {
            assert!((v - 0.3230659472194505).abs() < 1e-9, "got {v}");
        }
        let scaled = cerf_kenyon_point(&sym, true).unwrap();
        for v in scaled {
            assert!((v - 0.4823210005267569).abs() < 1e-9, "got {v}");
        }
        let frozen = cerf_kenyon_point(&sp(0.6, 0.2, 0.2), false).unwrap();
        assert!(frozen[0].abs() < 1e-12);
        assert!((frozen[1] - 3f64.ln()).abs() < 1e-12);
        assert!((frozen[2] - 3f64.ln()).abs() < 1e-12);
        assert!(SimplexPoint::new(0.5, 0.5, 0.0).is_err());
        assert!(SimplexPoint::new(0.5, 0.4, 0.2).is_err());
    }

    #[test]
    fn cerf_kenyon_permutation_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a: f64 = rng.gen_range(0.05..0.9);
            let b: f64 = rng.gen_range(0.05..(0.95 - a));
            let c = 1.0 - a - b;
            let x = cerf_kenyon_point(&sp(a, b, c), false).unwrap();
            let y = cerf_kenyon_point(&sp(b, c, a), false).unwrap();
            assert!((x[1] - y[0]).abs() < 1e-9);
            assert!((x[2] - y[1]).abs() < 1e-9);
            assert!((x[0] - y[2]).abs() < 1e-9);
        }
    }

    #[test]
    fn facet_densities_examples() {
        let d = facet_densities(&sp(1.0, 1.0, 1.0));
        for v in d {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
        let frozen = facet_densities(&sp(0.6, 0.2, 0.2));
        assert!((frozen[0] - 1.0).abs() < 1e-12 && frozen[1].abs() < 1e-12);
        // degenerate triangle 0.5 = 0.3 + 0.2: boundary-frozen limit
        let deg = facet_densities(&sp(0.5, 0.3, 0.2));
        assert!((deg[0] - 1.0).abs() < 1e-6 && deg[1].abs() < 1e-6);
    }

    #[test]
    fn facet_densities_sum_and_fd_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 50 {
            let a: f64 = rng.gen_range(0.1..0.8);
            let b: f64 = rng.gen_range(0.1..(0.9 - a).max(0.11));
            let c = 1.0 - a - b;
            if c <= 0.05 {
                continue;
            }
            // strict triangle inequality with margin
            if a >= b + c - 0.02 || b >= a + c - 0.02 || c >= a + b - 0.02 {
                continue;
            }
            let p = sp(a, b, c);
            let d = facet_densities(&p);
            assert!((d[0] + d[1] + d[2] - 1.0).abs() < 1e-12);
            let fd = facet_densities_fd(&p, 1e-5).unwrap();
            for k in 0..3 {
                assert!(
                    (d[k] - fd[k]).abs() < 1e-5,
                    "densities {d:?} vs fd {fd:?} at ({a}, {b}, {c})"
                );
            }
            checked += 1;
        }
    }

    #[test]
    fn support_identity() {
        let r = support_identity_residual(&sp(1.0, 1.0, 1.0)).unwrap();
        assert!(r < 1e-8, "residual {r}");
        let frozen = support_identity_residual(&sp(0.6, 0.2, 0.2)).unwrap();
        assert!(frozen < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 50 {
            let a: f64 = rng.gen_range(0.08..0.8);
            let b: f64 = rng.gen_range(0.08..(0.92 - a).max(0.09));
            let c = 1.0 - a - b;
            if c <= 0.05 || a >= b + c || b >= a + c || c >= a + b {
                continue;
            }
            let r = support_identity_residual(&sp(a, b, c)).unwrap();
            assert!(r < 1e-6, "residual {r} at ({a}, {b}, {c})");
            checked += 1;
        }
    }

    #[test]
    fn hausdorff_identical_and_translated() {
        let axes = ConvexShape::from_polyline(&[[0.0, 3.0], [0.0, 0.0], [3.0, 0.0]], 3.0)
            .unwrap();
        assert_eq!(hausdorff_distance(&axes, &axes, 3.0).unwrap(), 0.0);

        let eps = 0.01;
        let shifted = ConvexShape::from_polyline(
            &[[eps, 3.0], [eps, 0.0], [3.0 + eps, 0.0]],
            3.0 + eps,
        )
        .unwrap();
        let d = hausdorff_distance(&axes, &shifted, 4.0).unwrap();
        assert!((d - eps).abs() < 1e-12, "got {d}");
    }

    #[test]
    fn hausdorff_empty_window_fails() {
        let a = ConvexShape::from_polyline(&[[0.0, 3.0], [0.0, 0.0], [3.0, 0.0]], 3.0).unwrap();
        let b = ConvexShape::from_polyline(&[[5.0, 9.0], [5.0, 5.0], [9.0, 5.0]], 9.0).unwrap();
        assert!(hausdorff_distance(&a, &b, 1.0).is_err());
    }
}
