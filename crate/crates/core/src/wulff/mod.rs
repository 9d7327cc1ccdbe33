//! The geometric core: convex shapes cut out of the positive octant by
//! support inequalities, surface functionals and enclosed volumes on them,
//! the dilatation solver fitting shapes into a cube at prescribed volume,
//! and the dual-tension identities connecting the maximizing problem to the
//! classical Wulff minimization.

mod curve;
mod solve;
mod surface;

pub use solve::{scaled_maximizer, solve_dilatation, solve_dilatation_with, wulff_minimizer};

use crate::entropy::{Direction, TensionFunction};
use crate::{Error, Result};

/// Default truncation window for the unbounded inner bodies.
pub const DEFAULT_WINDOW: f64 = 30.0;

/// Which side of the hypersurface a volume refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeSide {
    /// Region between the octant corner and the shape (the paper's
    /// vol(G, N); always defined).
    Origin,
    /// Volume of the convex body itself; only defined for bounded bodies
    /// (Wulff shapes), fails for the unbounded inner bodies.
    Infinity,
}

/// Which support inequality carved the body out, when known. Convexity
/// checks are directional: inner bodies lie beyond their support planes as
/// seen from the origin, Wulff bodies before them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BodySense {
    Inner,
    Wulff,
    Free,
}

#[derive(Debug, Clone)]
enum VolumeModel {
    /// d = 1: ordered polyline closed against the axes inside the window box.
    PolylineRegion,
    /// d = 2: prism sum of the triangulated graph over the (x2, x3) plane.
    MeshPrism,
    /// d = 2 maximizer: clamped integration of the full source mesh inside
    /// the cube [0, n]^3.
    MeshInCube { mesh: surface::MeshData, n: f64 },
}

/// A discretized convex hypersurface in the positive octant: a polyline for
/// d = 1, a triangulated grid surface for d = 2, with per-facet unit normals
/// and areas.
///
/// Envelope constructors ([`build_inner_shape`], [`build_wulff_shape`])
/// guarantee convexity; [`ConvexShape::from_polyline`] and
/// [`ConvexShape::from_triangles`] admit any surface with normals in the
/// positive octant (the admissible class of the variational problem), and
/// [`ConvexShape::validate`] checks the convexity invariants on demand.
#[derive(Debug, Clone)]
pub struct ConvexShape {
    dim: usize,
    window: f64,
    vertices: Vec<[f64; 3]>,
    segments: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    facet_normals: Vec<Direction>,
    facet_areas: Vec<f64>,
    /// Generating normal per vertex for parametric d = 2 builds.
    vertex_normals: Vec<Direction>,
    /// Analytic estimate of the origin-side volume beyond the window.
    tail: f64,
    /// Shape touches the octant boundary on both ends (bounded body).
    bounded: bool,
    sense: BodySense,
    model: VolumeModel,
}

impl ConvexShape {
    /// Spatial dimension d (1 or 2).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation window: the shape is represented where coordinates are
    /// at most this value (up to the graded fringe of parametric meshes).
    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    /// Facet vertex indices: segment pairs for d = 1, triangles for d = 2.
    pub fn segments(&self) -> &[[usize; 2]] {
        &self.segments
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn facet_normals(&self) -> &[Direction] {
        &self.facet_normals
    }

    pub fn facet_areas(&self) -> &[f64] {
        &self.facet_areas
    }

    pub fn facet_count(&self) -> usize {
        self.facet_areas.len()
    }

    /// Total d-dimensional surface area.
    pub fn surface_area(&self) -> f64 {
        self.facet_areas.iter().sum()
    }

    /// Documented bound on the volume missed beyond the truncation window;
    /// the matching estimate is already added by [`Self::enclosed_volume`].
    pub fn volume_tail_bound(&self) -> f64 {
        2.0 * self.tail.abs() + 1e-300
    }

    /// Build a d = 1 shape from an ordered polyline in the octant. Facet
    /// normals point away from the origin and must lie in the quarter
    /// circle; no convexity is required (use [`Self::validate`] to check it).
    pub fn from_polyline(points: &[[f64; 2]], window: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Build("polyline needs at least 2 points".into()));
        }
        let mut vertices = Vec::with_capacity(points.len());
        for p in points {
            if p[0] < -1e-12 || p[1] < -1e-12 {
                return Err(Error::Build(format!(
                    "polyline point ({}, {}) outside the octant",
                    p[0], p[1]
                )));
            }
            vertices.push([p[0].max(0.0), p[1].max(0.0), 0.0]);
        }
        let mut segments = Vec::new();
        let mut normals = Vec::new();
        let mut areas = Vec::new();
        for i in 0..vertices.len() - 1 {
            let a = vertices[i];
            let b = vertices[i + 1];
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len = (dx * dx + dy * dy).sqrt();
            if len < 1e-15 {
                continue;
            }
            // outward normal: rotate the travel direction so components are
            // nonnegative (admissibility of the normal field)
            let n = Direction::new(&[-dy / len, dx / len])
                .or_else(|_| Direction::new(&[dy / len, -dx / len]))
                .map_err(|_| {
                    Error::Build(format!(
                        "segment {i} has no normal in the positive quadrant"
                    ))
                })?;
            segments.push([i, i + 1]);
            normals.push(n);
            areas.push(len);
        }
        if segments.is_empty() {
            return Err(Error::Build("polyline is degenerate".into()));
        }
        let first = vertices[0];
        let last = vertices[vertices.len() - 1];
        let bounded =
            curve::endpoint_on_axis(first, window) && curve::endpoint_on_axis(last, window);
        Ok(ConvexShape {
            dim: 1,
            window,
            vertices,
            segments,
            triangles: Vec::new(),
            facet_normals: normals,
            facet_areas: areas,
            vertex_normals: Vec::new(),
            tail: 0.0,
            bounded,
            sense: BodySense::Free,
            model: VolumeModel::PolylineRegion,
        })
    }

    /// Build a d = 2 shape from an explicit triangle list. Triangle normals
    /// are oriented away from the origin and must lie in the spherical
    /// triangle.
    pub fn from_triangles(
        points: &[[f64; 3]],
        tris: &[[usize; 3]],
        window: f64,
    ) -> Result<Self> {
        let vertices: Vec<[f64; 3]> = points.to_vec();
        let mut triangles = Vec::new();
        let mut normals = Vec::new();
        let mut areas = Vec::new();
        for (ti, t) in tris.iter().enumerate() {
            let [a, b, c] = *t;
            if a >= vertices.len() || b >= vertices.len() || c >= vertices.len() {
                return Err(Error::Build(format!("triangle {ti} index out of range")));
            }
            let cr = cross_of(&vertices, a, b, c);
            let norm = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
            if norm < 1e-30 {
                continue;
            }
            let flip = cr[0] + cr[1] + cr[2] < 0.0;
            let n = if flip {
                [-cr[0] / norm, -cr[1] / norm, -cr[2] / norm]
            } else {
                [cr[0] / norm, cr[1] / norm, cr[2] / norm]
            };
            let dir = Direction::new(&n).map_err(|_| {
                Error::Build(format!("triangle {ti} normal outside the positive octant"))
            })?;
            triangles.push(if flip { [a, c, b] } else { [a, b, c] });
            normals.push(dir);
            areas.push(norm / 2.0);
        }
        if triangles.is_empty() {
            return Err(Error::Build("triangle surface is degenerate".into()));
        }
        Ok(ConvexShape {
            dim: 2,
            window,
            vertices,
            segments: Vec::new(),
            triangles,
            facet_normals: normals,
            facet_areas: areas,
            vertex_normals: Vec::new(),
            tail: 0.0,
            bounded: false,
            sense: BodySense::Free,
            model: VolumeModel::MeshPrism,
        })
    }

    /// Uniformly scale the shape about the origin.
    pub fn scale(&self, s: f64) -> ConvexShape {
        let mut out = self.clone();
        for v in &mut out.vertices {
            for x in v.iter_mut() {
                *x *= s;
            }
        }
        let d = self.dim as i32;
        for a in &mut out.facet_areas {
            *a *= s.powi(d);
        }
        out.window *= s;
        out.tail *= s.powi(d + 1);
        if let VolumeModel::MeshInCube { mesh, .. } = &mut out.model {
            for v in &mut mesh.verts {
                for x in v.iter_mut() {
                    *x *= s;
                }
            }
        }
        out
    }

    /// (d+1)-dimensional volume between the shape and the octant corner
    /// (`Origin`), or of the convex body itself (`Infinity`, bounded bodies
    /// only). Origin-side volumes of truncated inner shapes include the
    /// analytic tail estimate beyond the window (see
    /// [`Self::volume_tail_bound`]).
    pub fn enclosed_volume(&self, side: VolumeSide) -> Result<f64> {
        if side == VolumeSide::Infinity && !self.bounded {
            return Err(Error::Domain(
                "infinity-side volume undefined for an unbounded body".into(),
            ));
        }
        match &self.model {
            VolumeModel::PolylineRegion => {
                let pts: Vec<[f64; 2]> =
                    self.vertices.iter().map(|v| [v[0], v[1]]).collect();
                let run = curve::clip_polyline_to_box(&pts, self.window);
                Ok(curve::region_area_from_run(&run, self.window) + self.tail)
            }
            VolumeModel::MeshPrism => {
                Ok(surface::prism_volume(&self.vertices, &self.triangles) + self.tail)
            }
            VolumeModel::MeshInCube { mesh, n } => {
                Ok(surface::volume_in_cube_mesh(mesh, 1.0, *n))
            }
        }
    }

    /// Largest relative violation of the active support constraint
    /// |(x, n) - w(n)| / (1 + |x|) over vertex/normal incidences.
    pub fn max_support_residual(&self, weight: &TensionFunction) -> f64 {
        let mut worst: f64 = 0.0;
        if self.dim == 1 {
            for (f, seg) in self.segments.iter().enumerate() {
                let n = &self.facet_normals[f];
                let c = weight.eval(n);
                for &vi in seg {
                    let v = self.vertices[vi];
                    let dot = v[0] * n.components()[0] + v[1] * n.components()[1];
                    let mag = (v[0] * v[0] + v[1] * v[1]).sqrt();
                    worst = worst.max((dot - c).abs() / (1.0 + mag));
                }
            }
        } else {
            for (vi, n) in self.vertex_normals.iter().enumerate() {
                let v = self.vertices[vi];
                let nc = n.components();
                let dot = v[0] * nc[0] + v[1] * nc[1] + v[2] * nc[2];
                let c = weight.eval(n);
                let mag = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                worst = worst.max((dot - c).abs() / (1.0 + mag));
            }
        }
        worst
    }

    /// Check the representation invariants: normals admissible, areas
    /// consistent with the vertices, and convexity. For d = 1 the normal
    /// angle must be monotone along the polyline and every vertex must lie
    /// on or outside every facet's supporting line (origin side for inner
    /// bodies, body side for Wulff bodies). For d = 2 the supporting planes
    /// are the tangent planes at the generating normals, and every vertex
    /// must lie on their body side.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e-9 * self.window.max(1.0);
        if self.dim == 1 {
            let mut prev = -1.0;
            for (f, seg) in self.segments.iter().enumerate() {
                let n = self.facet_normals[f].components();
                let theta = n[1].atan2(n[0]);
                if theta < prev - 1e-9 {
                    return Err(Error::Integrity(format!(
                        "facet {f}: normal angle decreases along the polyline"
                    )));
                }
                prev = theta;
                let a = self.vertices[seg[0]];
                let b = self.vertices[seg[1]];
                let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
                if (len - self.facet_areas[f]).abs() > 1e-12 * len.max(1.0) {
                    return Err(Error::Integrity(format!("facet {f}: stale area")));
                }
            }
            if self.sense != BodySense::Free {
                for (f, seg) in self.segments.iter().enumerate() {
                    let n = self.facet_normals[f].components();
                    let a = self.vertices[seg[0]];
                    let offset = a[0] * n[0] + a[1] * n[1];
                    for v in &self.vertices {
                        let d = v[0] * n[0] + v[1] * n[1] - offset;
                        let bad = match self.sense {
                            BodySense::Inner => d < -tol,
                            BodySense::Wulff => d > tol,
                            BodySense::Free => false,
                        };
                        if bad {
                            return Err(Error::Integrity(format!(
                                "vertex beyond the supporting line of facet {f} by {d}"
                            )));
                        }
                    }
                }
            }
        } else {
            for (f, t) in self.triangles.iter().enumerate() {
                let cr = cross_of(&self.vertices, t[0], t[1], t[2]);
                let area = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt() / 2.0;
                if (area - self.facet_areas[f]).abs() > 1e-12 * area.max(1.0) {
                    return Err(Error::Integrity(format!("facet {f}: stale area")));
                }
            }
            if self.sense != BodySense::Free && !self.vertex_normals.is_empty() {
                for (vi, nv) in self.vertex_normals.iter().enumerate() {
                    let n = nv.components();
                    let a = self.vertices[vi];
                    let offset = a[0] * n[0] + a[1] * n[1] + a[2] * n[2];
                    for v in &self.vertices {
                        let d = v[0] * n[0] + v[1] * n[1] + v[2] * n[2] - offset;
                        let bad = match self.sense {
                            BodySense::Inner => d < -tol,
                            BodySense::Wulff => d > tol,
                            BodySense::Free => false,
                        };
                        if bad {
                            return Err(Error::Integrity(format!(
                                "vertex beyond the tangent plane at vertex {vi} by {d}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn set_vertex_normals(&mut self, normals: Vec<Direction>) {
        self.vertex_normals = normals;
    }

    pub(crate) fn set_tail(&mut self, tail: f64) {
        self.tail = tail;
    }

    pub(crate) fn set_bounded(&mut self, bounded: bool) {
        self.bounded = bounded;
    }

    pub(crate) fn set_cube_model(&mut self, mesh: surface::MeshData, n: f64) {
        self.model = VolumeModel::MeshInCube { mesh, n };
    }
}

fn cross_of(verts: &[[f64; 3]], a: usize, b: usize, c: usize) -> [f64; 3] {
    let e1 = [
        verts[b][0] - verts[a][0],
        verts[b][1] - verts[a][1],
        verts[b][2] - verts[a][2],
    ];
    let e2 = [
        verts[c][0] - verts[a][0],
        verts[c][1] - verts[a][1],
        verts[c][2] - verts[a][2],
    ];
    [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ]
}

/// Boundary of the intersection of the upper half-spaces
/// {x : (x, n) ≥ η(n)} over sampled normals, clipped to [0, window]^{d+1}.
///
/// For d = 1 the sampling is uniform in angle with geometric refinement
/// toward the quarter-circle endpoints so that the envelope reaches the
/// window; for d = 2 the surface is the gradient parametrization of the
/// homogeneous extension over a graded barycentric grid, `samples` ≈ m²
/// triangles.
pub fn build_inner_shape(
    eta: &TensionFunction,
    samples: usize,
    window: f64,
) -> Result<ConvexShape> {
    if samples < 16 {
        return Err(Error::Domain("need at least 16 samples".into()));
    }
    if !(window > 0.0) {
        return Err(Error::Domain(format!("window {window} must be positive")));
    }
    match eta.dim() {
        1 => curve::build_inner_d1(eta, samples, window),
        2 => surface::build_inner_d2(eta, samples, window),
        d => Err(Error::Domain(format!("unsupported dimension {d}"))),
    }
}

/// Boundary of the intersection of the lower half-spaces
/// {x : (x, n) ≤ τ(n)}, restricted to the positive octant. The tension must
/// be strictly positive (after reflection-symmetric extension the body is
/// bounded and convex); a vanishing tension is rejected.
pub fn build_wulff_shape(tau: &TensionFunction, samples: usize) -> Result<ConvexShape> {
    if samples < 16 {
        return Err(Error::Domain("need at least 16 samples".into()));
    }
    match tau.dim() {
        1 => curve::build_wulff_d1(tau, samples),
        2 => surface::build_wulff_d2(tau, samples),
        d => Err(Error::Domain(format!("unsupported dimension {d}"))),
    }
}

/// Riemann sum of the surface integral ∫ w(n_x) ds over the shape:
/// Σ facets w(normal) · area.
pub fn functional_value(weight: &TensionFunction, shape: &ConvexShape) -> Result<f64> {
    if weight.dim() != shape.dim() {
        return Err(Error::Domain(format!(
            "weight dimension {} does not match shape dimension {}",
            weight.dim(),
            shape.dim()
        )));
    }
    let mut total = 0.0;
    for (n, a) in shape.facet_normals.iter().zip(&shape.facet_areas) {
        total += weight.eval(n) * a;
    }
    Ok(total)
}

/// The dual tension τ_η(n) = N |n|₁ - η(n): the distance from the far cube
/// corner A = (N, ..., N) to the support plane of η, extended to the whole
/// sphere by reflection symmetry. Fails when the result is not strictly
/// positive at some sampled direction (N too small).
pub fn dual_tension(eta: &TensionFunction, n: f64) -> Result<TensionFunction> {
    if !(n > 0.0) {
        return Err(Error::Domain(format!("cube size {n} must be positive")));
    }
    let tau = crate::entropy::dual_raw(eta.clone(), n);
    // positivity sweep over the normal domain
    if eta.dim() == 1 {
        for i in 0..=2048 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 2048.0;
            let d = Direction::from_angle(theta)?;
            if tau.eval(&d) <= 0.0 {
                return Err(Error::Build(format!(
                    "dual tension vanishes at angle {theta}: cube size {n} too small"
                )));
            }
        }
    } else {
        let m = 64;
        for i in 0..=m {
            for j in 0..=(m - i) {
                let k = m - i - j;
                let d = Direction::new(&[
                    (i as f64).max(1e-9),
                    (j as f64).max(1e-9),
                    (k as f64).max(1e-9),
                ])?;
                if tau.eval(&d) <= 0.0 {
                    return Err(Error::Build(format!(
                        "dual tension vanishes near ({i}, {j}, {k})/{m}: cube size {n} too small"
                    )));
                }
            }
        }
    }
    Ok(tau)
}

/// Area of the orthogonal projection of the shape onto the hyperplane
/// orthogonal to the cube diagonal (N, ..., N): Σ facets
/// (normal · (1, ..., 1)/√(d+1)) · area. Normals in Δ^d make the projection
/// injective, so the facet sum is the exact projected area.
pub fn projection_area(shape: &ConvexShape, n: f64) -> Result<f64> {
    // circumscribed envelopes overshoot the smooth body by O(h^2); give the
    // cube membership check matching slack
    let bound = n * (1.0 + 1e-6) + 1e-12;
    for v in &shape.vertices {
        if v[0] > bound || v[1] > bound || v[2] > bound {
            return Err(Error::Domain(format!(
                "shape vertex ({}, {}, {}) outside the cube of side {n}",
                v[0], v[1], v[2]
            )));
        }
    }
    let root = ((shape.dim + 1) as f64).sqrt();
    let mut total = 0.0;
    for (dir, a) in shape.facet_normals.iter().zip(&shape.facet_areas) {
        total += dir.l1() / root * a;
    }
    Ok(total)
}

/// Residual of the projection identity
/// V_η(G) + W_{τ_η}(G) = ∫_G (n_x, OA) ds = N √(d+1) · S(P(G)).
///
/// The identity holds facet by facet, so the residual measures only the
/// consistency of the three quadratures sharing the same facets.
pub fn duality_residual(
    eta: &TensionFunction,
    n: f64,
    shape: &ConvexShape,
) -> Result<f64> {
    let tau = crate::entropy::dual_raw(eta.clone(), n);
    let v = functional_value(eta, shape)?;
    let w = functional_value(&tau, shape)?;
    let proj = projection_area(shape, n)?;
    let root = ((shape.dim + 1) as f64).sqrt();
    Ok((v + w - n * root * proj).abs())
}

/// Cube-constrained maximization instance: cube side N, target origin-side
/// volume V ∈ (0, N^{d+1}), and the surface entropy to maximize.
#[derive(Debug, Clone)]
pub struct CubeProblem {
    n: f64,
    v: f64,
    eta: TensionFunction,
}

impl CubeProblem {
    pub fn new(n: f64, v: f64, eta: TensionFunction) -> Result<Self> {
        if !(n > 0.0) {
            return Err(Error::Domain(format!("cube side {n} must be positive")));
        }
        let cap = n.powi(eta.dim() as i32 + 1);
        if !(v > 0.0 && v < cap) {
            return Err(Error::Domain(format!(
                "target volume {v} outside (0, {cap})"
            )));
        }
        Ok(CubeProblem { n, v, eta })
    }

    pub fn cube_side(&self) -> f64 {
        self.n
    }

    pub fn target_volume(&self) -> f64 {
        self.v
    }

    pub fn eta(&self) -> &TensionFunction {
        &self.eta
    }
}

#[cfg(test)]
mod tests;
