//! Dilatation solve and the two variational constructions: the cube-clipped
//! scaled maximizer and the volume-normalized Wulff minimizer.

use super::{build_wulff_shape, curve, surface, ConvexShape, CubeProblem, VolumeSide};
use crate::entropy::TensionFunction;
use crate::{Error, Result};

const DEFAULT_SAMPLES_D1: usize = 4096;
const DEFAULT_SAMPLES_D2: usize = 16384;

fn default_samples(dim: usize) -> usize {
    if dim == 1 {
        DEFAULT_SAMPLES_D1
    } else {
        DEFAULT_SAMPLES_D2
    }
}

/// Monotone bisection of vol(λ) = V. The map λ ↦ vol is strictly increasing
/// from 0 toward the full cube, so any attainable target brackets.
fn bisect_volume(vol: impl Fn(f64) -> f64, target: f64, cap: f64) -> Result<f64> {
    let mut hi = 1.0f64;
    let mut grow = 0;
    while vol(hi) < target {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::Solve(format!(
                "target volume {target} unattainable (cube volume {cap})"
            )));
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = vol(mid);
        if (v - target).abs() <= 1e-12 * target {
            return Ok(mid);
        }
        if v < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Dilatation parameter λ(V, N): the unique solution of
/// vol(Q_N ∩ (octant \ λ K_η^>)) = V, by bisection on the monotone volume
/// map. Uses the default sampling resolution.
pub fn solve_dilatation(problem: &CubeProblem) -> Result<f64> {
    solve_dilatation_with(problem, default_samples(problem.eta().dim()))
}

/// As [`solve_dilatation`] with explicit sampling resolution.
pub fn solve_dilatation_with(problem: &CubeProblem, samples: usize) -> Result<f64> {
    let n = problem.cube_side();
    let v = problem.target_volume();
    let eta = problem.eta();
    let cap = n.powi(eta.dim() as i32 + 1);
    match eta.dim() {
        1 => {
            let window = super::DEFAULT_WINDOW.max(n) + 5.0;
            let env = curve::inner_envelope(eta, samples, window)?;
            if env.max_offset() <= 1e-13 {
                return Err(Error::Solve(
                    "tension is identically zero: the volume map is degenerate".into(),
                ));
            }
            bisect_volume(|lam| env.region_area(lam, n), v, cap)
        }
        2 => {
            let window = super::DEFAULT_WINDOW.max(n) + 5.0;
            let m = surface::grid_side(samples);
            let mesh = surface::parametric_mesh(eta, m, surface::inner_p_floor(window))?;
            bisect_volume(|lam| surface::volume_in_cube_mesh(&mesh, lam, n), v, cap)
        }
        d => Err(Error::Domain(format!("unsupported dimension {d}"))),
    }
}

/// The maximizing surface Q_N ∩ λ(V,N) G_η: the inner shape scaled by the
/// dilatation and clipped to the cube. Fails when the scaled shape touches
/// the far cube faces away from the octant boundary (the cube is too small
/// for the construction to represent the maximizer).
pub fn scaled_maximizer(problem: &CubeProblem, samples: usize) -> Result<ConvexShape> {
    let n = problem.cube_side();
    let v = problem.target_volume();
    let eta = problem.eta();
    let cap = n.powi(eta.dim() as i32 + 1);
    let window = super::DEFAULT_WINDOW.max(n) + 5.0;
    match eta.dim() {
        1 => {
            let env = curve::inner_envelope(eta, samples, window)?;
            if env.max_offset() <= 1e-13 {
                // degenerate tension: the body is the whole octant and the
                // boundary hugs the axes; any dilatation gives the same shape
                return env.to_shape(1.0, n, false);
            }
            let lam = bisect_volume(|l| env.region_area(l, n), v, cap)?;
            if let Some(m) = env.far_face_contact(lam, n) {
                if m > 0.02 {
                    return Err(Error::Solve(format!(
                        "cube side {n} too small: scaled shape meets a far face \
                         with normal component {m:.3}"
                    )));
                }
            }
            env.to_shape(lam, n, false)
        }
        2 => {
            let m = surface::grid_side(samples);
            let mesh = surface::parametric_mesh(eta, m, surface::inner_p_floor(window))?;
            let lam = bisect_volume(|l| surface::volume_in_cube_mesh(&mesh, l, n), v, cap)?;
            let (shape, contact) = surface::clip_mesh_to_cube(&mesh, lam, n)?;
            if let Some(c) = contact {
                if c > 0.02 {
                    return Err(Error::Solve(format!(
                        "cube side {n} too small: scaled shape meets a far face \
                         with normal component {c:.3}"
                    )));
                }
            }
            Ok(shape)
        }
        d => Err(Error::Domain(format!("unsupported dimension {d}"))),
    }
}

/// The Wulff minimizer at volume Λ: the Wulff shape W_τ rescaled so its
/// enclosed volume equals Λ. The rescaling factor is measured from the
/// discrete shape itself, which agrees with (Λ(d+1)/W_τ(W_τ))^{1/(d+1)} in
/// the continuum and pins the volume postcondition to roundoff.
pub fn wulff_minimizer(
    tau: &TensionFunction,
    lambda: f64,
    samples: usize,
) -> Result<ConvexShape> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("volume {lambda} must be positive")));
    }
    let shape = build_wulff_shape(tau, samples)?;
    let vol = shape.enclosed_volume(VolumeSide::Origin)?;
    if vol <= 0.0 {
        return Err(Error::Build("Wulff shape has no volume".into()));
    }
    let d = tau.dim() as i32;
    let s = (lambda / vol).powf(1.0 / (d + 1) as f64);
    Ok(shape.scale(s))
}
