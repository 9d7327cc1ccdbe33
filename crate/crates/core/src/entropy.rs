//! Surface-entropy densities on the positive unit sphere octants.
//!
//! A [`Direction`] is a unit normal with nonnegative components (an element
//! of Δ¹, the quarter circle, or Δ², the spherical triangle). A
//! [`TensionFunction`] is an evaluatable weight on those directions; the two
//! built-ins are the Young entropy (binary entropy of the ℓ₁-normalized
//! normal) and the skyscraper entropy (Lobachevsky sum). Both vanish on the
//! boundary of their domain.

use crate::special::lobachevsky;
use crate::{Error, Result};
use std::f64::consts::PI;
use std::sync::Arc;

/// Unit vector with nonnegative components in R^{d+1}, d = 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    comps: [f64; 3],
    dim: usize,
}

impl Direction {
    /// Normalizes `comps` (length 2 or 3) to a unit vector. Components may
    /// carry roundoff as low as -1e-12, which is clamped to zero; anything
    /// more negative is rejected.
    pub fn new(comps: &[f64]) -> Result<Self> {
        let dim = match comps.len() {
            2 => 1,
            3 => 2,
            n => {
                return Err(Error::Domain(format!(
                    "direction needs 2 or 3 components, got {n}"
                )))
            }
        };
        let mut c = [0.0; 3];
        for (i, &x) in comps.iter().enumerate() {
            if x.is_nan() || x < -1e-12 {
                return Err(Error::Domain(format!(
                    "direction component {i} is negative: {x}"
                )));
            }
            c[i] = x.max(0.0);
        }
        let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        if norm < 1e-300 {
            return Err(Error::Domain("direction cannot be the zero vector".into()));
        }
        for x in &mut c {
            *x /= norm;
        }
        Ok(Direction { comps: c, dim })
    }

    /// As [`Direction::new`] but forgiving discretization-level negative
    /// components up to `tol` (used for chord normals of near-degenerate
    /// sliver facets in parametric meshes).
    pub(crate) fn new_lenient(comps: &[f64], tol: f64) -> Result<Self> {
        let clamped: Vec<f64> = comps
            .iter()
            .map(|&x| if x < 0.0 && x >= -tol { 0.0 } else { x })
            .collect();
        Direction::new(&clamped)
    }

    /// Quarter-circle direction (cos θ, sin θ) for θ ∈ [0, π/2].
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !(0.0..=PI / 2.0 + 1e-12).contains(&theta) {
            return Err(Error::Domain(format!(
                "angle {theta} outside [0, pi/2]"
            )));
        }
        Direction::new(&[theta.cos().max(0.0), theta.sin().max(0.0)])
    }

    /// Spatial dimension d of the hypersurfaces this normal belongs to.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The d+1 components.
    pub fn components(&self) -> &[f64] {
        &self.comps[..=self.dim]
    }

    /// ℓ₁ norm (all components are nonnegative).
    pub fn l1(&self) -> f64 {
        self.components().iter().sum()
    }

    /// Angular distance to the boundary of Δ^d: min over components of
    /// arcsin(nᵢ).
    pub fn boundary_distance(&self) -> f64 {
        self.components()
            .iter()
            .map(|&x| x.clamp(0.0, 1.0).asin())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone)]
enum Kind {
    Young,
    Skyscraper,
    /// τ(n) = c.
    Constant(f64),
    /// τ(n) = c |n|₁ (support function of the cube [-c, c]^{d+1}).
    L1Scaled(f64),
    /// τ(n) = s |n|₁ - η(n): the dual tension at cube size s.
    Dual { base: Arc<TensionFunction>, scale: f64 },
    /// Piecewise interpolation of sampled (direction, value) pairs.
    Sampled(SampledTable),
    /// Arbitrary evaluator on unit directions.
    Custom(Arc<dyn Fn(&Direction) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Young => write!(f, "Young"),
            Kind::Skyscraper => write!(f, "Skyscraper"),
            Kind::Constant(c) => write!(f, "Constant({c})"),
            Kind::L1Scaled(c) => write!(f, "L1Scaled({c})"),
            Kind::Dual { scale, .. } => write!(f, "Dual(scale = {scale})"),
            Kind::Sampled(_) => write!(f, "Sampled"),
            Kind::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Sampled tension table. For d = 1 the samples are sorted by angle and
/// interpolated linearly in θ, extended linearly to zero at the octant
/// boundary when the samples do not reach it. For d = 2 inverse-distance
/// weighting over the unit sphere is used (continuous, exact at the nodes).
#[derive(Clone, Debug)]
struct SampledTable {
    dim: usize,
    /// d=1: (theta, value), sorted. d=2: unused.
    angular: Vec<(f64, f64)>,
    /// d=2: (unit direction, value).
    points: Vec<([f64; 3], f64)>,
}

impl SampledTable {
    fn eval(&self, n: &Direction) -> f64 {
        if self.dim == 1 {
            let c = n.components();
            let theta = c[1].atan2(c[0]);
            let t = &self.angular;
            if theta <= t[0].0 {
                // interpolate to zero at the boundary angle 0
                return if t[0].0 <= 1e-14 {
                    t[0].1
                } else {
                    t[0].1 * theta / t[0].0
                };
            }
            let last = t[t.len() - 1];
            if theta >= last.0 {
                let gap = PI / 2.0 - last.0;
                return if gap <= 1e-14 {
                    last.1
                } else {
                    last.1 * (PI / 2.0 - theta).max(0.0) / gap
                };
            }
            let idx = t.partition_point(|&(a, _)| a <= theta);
            let (a0, v0) = t[idx - 1];
            let (a1, v1) = t[idx];
            let w = (theta - a0) / (a1 - a0);
            v0 + w * (v1 - v0)
        } else {
            let c = n.components();
            let mut num = 0.0;
            let mut den = 0.0;
            for (p, v) in &self.points {
                let d2 = (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2);
                if d2 < 1e-24 {
                    return *v;
                }
                let w = 1.0 / d2;
                num += w * v;
                den += w;
            }
            num / den
        }
    }
}

/// A normal-dependent surface weight on Δ^d with optional boundary
/// mollification. Values are nonnegative on the domain; the evaluator
/// clamps small negative roundoff to zero.
#[derive(Debug, Clone)]
pub struct TensionFunction {
    dim: usize,
    kind: Kind,
    mollify_delta: f64,
}

impl TensionFunction {
    /// Young-diagram entropy η_Y on Δ¹:
    /// η_Y(n) = -(n₁ ln(n₁/(n₁+n₂)) + n₂ ln(n₂/(n₁+n₂))).
    pub fn young() -> Self {
        TensionFunction { dim: 1, kind: Kind::Young, mollify_delta: 0.0 }
    }

    /// Skyscraper entropy η_S on Δ²:
    /// η_S(n) = (|n|₁/π) Σᵢ L(π nᵢ/|n|₁).
    pub fn skyscraper() -> Self {
        TensionFunction { dim: 2, kind: Kind::Skyscraper, mollify_delta: 0.0 }
    }

    /// Constant (isotropic) tension.
    pub fn constant(value: f64, dim: usize) -> Self {
        TensionFunction { dim, kind: Kind::Constant(value), mollify_delta: 0.0 }
    }

    /// τ(n) = scale · |n|₁.
    pub fn l1_scaled(scale: f64, dim: usize) -> Self {
        TensionFunction { dim, kind: Kind::L1Scaled(scale), mollify_delta: 0.0 }
    }

    /// Arbitrary evaluator.
    pub fn custom(dim: usize, f: Arc<dyn Fn(&Direction) -> f64 + Send + Sync>) -> Self {
        TensionFunction { dim, kind: Kind::Custom(f), mollify_delta: 0.0 }
    }

    /// Interpolating tension from sampled (direction components, value)
    /// pairs. Directions need not be normalized.
    pub fn from_samples(dim: usize, samples: &[(Vec<f64>, f64)]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empty tension sample table".into()));
        }
        let mut angular = Vec::new();
        let mut points = Vec::new();
        for (comps, value) in samples {
            let d = Direction::new(comps)?;
            if d.dim() != dim {
                return Err(Error::Domain(format!(
                    "sample dimension {} does not match table dimension {dim}",
                    d.dim()
                )));
            }
            if *value < 0.0 || !value.is_finite() {
                return Err(Error::Domain(format!("invalid tension value {value}")));
            }
            if dim == 1 {
                let c = d.components();
                angular.push((c[1].atan2(c[0]), *value));
            } else {
                let c = d.components();
                points.push(([c[0], c[1], c[2]], *value));
            }
        }
        if dim == 1 {
            angular.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            angular.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14);
        }
        Ok(TensionFunction {
            dim,
            kind: Kind::Sampled(SampledTable { dim, angular, points }),
            mollify_delta: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mollify_delta(&self) -> f64 {
        self.mollify_delta
    }

    /// Evaluate the tension at a unit direction.
    pub fn eval(&self, n: &Direction) -> f64 {
        debug_assert_eq!(n.dim(), self.dim);
        let raw = match &self.kind {
            Kind::Young | Kind::Skyscraper => section_closed_form(&self.kind, n.components()),
            Kind::Constant(c) => *c,
            Kind::L1Scaled(c) => c * n.l1(),
            Kind::Dual { base, scale } => scale * n.l1() - base.eval(n),
            Kind::Sampled(t) => t.eval(n),
            Kind::Custom(f) => f(n),
        };
        let v = match &self.kind {
            // dual tensions are support heights, not entropies; keep sign
            Kind::Dual { .. } => raw,
            // clamp roundoff-level negatives only, so the shape builders
            // still see genuinely negative evaluators and can reject them
            _ if raw < 0.0 && raw > -1e-12 => 0.0,
            _ => raw,
        };
        if self.mollify_delta > 0.0 {
            v * band_multiplier(n.boundary_distance(), self.mollify_delta)
        } else {
            v
        }
    }

    /// 1-homogeneous extension: η̂(v) = |v|₂ · η(v/|v|₂) for v with
    /// nonnegative components, v ≠ 0.
    pub fn homogeneous(&self, v: &[f64]) -> Result<f64> {
        let norm2: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm2 < 1e-300 {
            return Err(Error::Domain(
                "homogeneous extension undefined at the zero vector".into(),
            ));
        }
        for &x in v {
            if x < -1e-12 || x.is_nan() {
                return Err(Error::Domain(format!("negative component {x}")));
            }
        }
        if self.mollify_delta == 0.0 {
            // closed forms avoid the normalize-evaluate roundtrip
            match &self.kind {
                Kind::Young | Kind::Skyscraper => {
                    return Ok(section_closed_form(&self.kind, v))
                }
                Kind::Constant(c) => return Ok(c * norm2),
                Kind::L1Scaled(c) => return Ok(c * v.iter().sum::<f64>()),
                Kind::Dual { base, scale } => {
                    return Ok(scale * v.iter().sum::<f64>() - base.homogeneous(v)?)
                }
                _ => {}
            }
        }
        let n = Direction::new(v)?;
        Ok(norm2 * self.eval(&n))
    }

    /// Gradient of the homogeneous extension at `v`: the support-plane
    /// tangency point of the shape {x : (x, n) = η(n)}. Closed forms are
    /// used for the built-in tensions; otherwise central differences of
    /// step 1e-5.
    pub fn surface_point(&self, v: &[f64]) -> Result<Vec<f64>> {
        let k = v.len();
        if self.mollify_delta == 0.0 {
            match &self.kind {
                Kind::Young | Kind::Skyscraper => {
                    return section_gradient(&self.kind, v);
                }
                Kind::Constant(c) => {
                    let norm2: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    return Ok(v.iter().map(|x| c * x / norm2).collect());
                }
                Kind::L1Scaled(c) => return Ok(vec![*c; k]),
                Kind::Dual { base, scale } => {
                    let inner = base.surface_point(v)?;
                    return Ok(inner.iter().map(|x| scale - x).collect());
                }
                _ => {}
            }
        }
        // central finite differences on the homogeneous extension
        let scale: f64 = v.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(1.0);
        let h = 1e-5 * scale;
        let mut g = vec![0.0; k];
        for i in 0..k {
            let mut hi = v.to_vec();
            let mut lo = v.to_vec();
            hi[i] += h;
            lo[i] = (lo[i] - h).max(0.0);
            let dh = hi[i] - lo[i];
            g[i] = (self.homogeneous(&hi)? - self.homogeneous(&lo)?) / dh;
        }
        Ok(g)
    }

    /// Boundary mollification: the returned tension equals `self` at angular
    /// distance ≥ delta from ∂Δ^d, is zero within delta/2, and is linear in
    /// the angular distance in between.
    pub fn mollify(&self, delta: f64) -> Result<TensionFunction> {
        if delta < 0.0 || delta.is_nan() {
            return Err(Error::Domain(format!("mollification delta {delta} < 0")));
        }
        let inradius = if self.dim == 1 {
            PI / 4.0
        } else {
            (1.0f64 / 3.0f64.sqrt()).asin()
        };
        if delta >= inradius {
            return Err(Error::Domain(format!(
                "delta {delta} exceeds the inradius {inradius} of the normal domain"
            )));
        }
        let mut t = self.clone();
        t.mollify_delta = delta;
        Ok(t)
    }
}

/// Dual tension s|n|₁ - base(n) without the positivity sweep; the checked
/// constructor lives in the wulff module.
pub(crate) fn dual_raw(base: TensionFunction, scale: f64) -> TensionFunction {
    TensionFunction {
        dim: base.dim,
        kind: Kind::Dual { base: Arc::new(base), scale },
        mollify_delta: 0.0,
    }
}

fn band_multiplier(dist: f64, delta: f64) -> f64 {
    if dist <= delta / 2.0 {
        0.0
    } else if dist >= delta {
        1.0
    } else {
        (dist - delta / 2.0) / (delta / 2.0)
    }
}

/// Value of the homogeneous extension for the two built-in entropies; valid
/// for any nonzero vector with nonnegative components. Terms with a zero
/// component contribute zero (the 0·ln 0 = 0 convention keeps both densities
/// continuous up to the boundary).
fn section_closed_form(kind: &Kind, v: &[f64]) -> f64 {
    let s: f64 = v.iter().sum();
    match kind {
        Kind::Young => {
            let mut total = 0.0;
            for &x in v {
                if x > 0.0 {
                    total -= x * (x / s).ln();
                }
            }
            total
        }
        Kind::Skyscraper => {
            let mut total = 0.0;
            for &x in v {
                let q = (x / s).clamp(0.0, 1.0);
                if q > 0.0 {
                    total += lob_unchecked(PI * q);
                }
            }
            s * total / PI
        }
        _ => unreachable!(),
    }
}

/// Gradient of the homogeneous extension for the built-ins, evaluated on the
/// ℓ₁-normalized section (the gradient is 0-homogeneous). Requires strictly
/// positive components.
fn section_gradient(kind: &Kind, v: &[f64]) -> Result<Vec<f64>> {
    let s: f64 = v.iter().sum();
    for &x in v {
        if x <= 0.0 {
            return Err(Error::Domain(
                "surface point undefined on the boundary of the normal domain".into(),
            ));
        }
    }
    match kind {
        // grad of -sum v_i ln(v_i/|v|_1) is -ln(v_i/|v|_1)
        Kind::Young => Ok(v.iter().map(|&x| -(x / s).ln()).collect()),
        // grad of (|v|_1/pi) sum L(pi v_i/|v|_1) is
        //   g(q) + L'(pi q_i) - sum_j q_j L'(pi q_j),  L'(x) = -ln(2 sin x)
        Kind::Skyscraper => {
            let q: Vec<f64> = v.iter().map(|&x| x / s).collect();
            let g: f64 = q.iter().map(|&qi| lob_unchecked(PI * qi)).sum::<f64>() / PI;
            let lp: Vec<f64> = q.iter().map(|&qi| -(2.0 * (PI * qi).sin()).ln()).collect();
            let mean: f64 = q.iter().zip(&lp).map(|(qi, l)| qi * l).sum();
            Ok(lp.iter().map(|l| g + l - mean).collect())
        }
        _ => unreachable!(),
    }
}

fn lob_unchecked(x: f64) -> f64 {
    lobachevsky(x.clamp(0.0, PI)).expect("clamped argument")
}

/// η_Y evaluated at a quarter-circle direction.
pub fn eta_young(n: &Direction) -> f64 {
    TensionFunction::young().eval(n)
}

/// η_S evaluated at a spherical-triangle direction.
pub fn eta_skyscraper(n: &Direction) -> f64 {
    TensionFunction::skyscraper().eval(n)
}

/// Free-function form of [`TensionFunction::homogeneous`].
pub fn homogeneous_extension(eta: &TensionFunction, v: &[f64]) -> Result<f64> {
    eta.homogeneous(v)
}
