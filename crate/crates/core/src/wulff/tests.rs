use super::*;
use crate::entropy::TensionFunction;
use std::f64::consts::PI;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn inner_young_lies_on_the_exponential_curve() {
    let shape = build_inner_shape(&TensionFunction::young(), 4096, 10.0).unwrap();
    let mut worst = 0.0f64;
    for v in shape.vertices() {
        let r = ((-v[0]).exp() + (-v[1]).exp() - 1.0).abs();
        worst = worst.max(r);
    }
    assert!(worst <= 1e-6, "max curve residual {worst}");
}

#[test]
fn inner_zero_tension_gives_the_octant_boundary() {
    let shape = build_inner_shape(&TensionFunction::constant(0.0, 1), 64, 10.0).unwrap();
    assert_eq!(shape.facet_count(), 2);
    let n0 = shape.facet_normals()[0].components();
    let n1 = shape.facet_normals()[1].components();
    assert!((n0[0] - 1.0).abs() < 1e-12 && n0[1].abs() < 1e-12);
    assert!(n1[0].abs() < 1e-12 && (n1[1] - 1.0).abs() < 1e-12);
    assert!((shape.facet_areas()[0] - 10.0).abs() < 1e-9);
    assert!((shape.enclosed_volume(VolumeSide::Origin).unwrap()).abs() < 1e-12);
    assert!((functional_value(&TensionFunction::young(), &shape).unwrap()).abs() < 1e-12);
}

#[test]
fn inner_rejects_negative_tension() {
    let bad = TensionFunction::custom(
        1,
        std::sync::Arc::new(|n: &crate::entropy::Direction| {
            0.3 - n.components()[0]
        }),
    );
    assert!(build_inner_shape(&bad, 64, 5.0).is_err());
}

#[test]
fn gradient_consistency_second_order() {
    // envelope vertices against the gradient parametrization at the
    // bisecting normal, inside [0, 5]^2; doubling the sampling at least
    // quarters the error
    let eta = TensionFunction::young();
    let err_at = |samples: usize| {
        let shape = build_inner_shape(&eta, samples, DEFAULT_WINDOW).unwrap();
        let mut worst = 0.0f64;
        for (f, seg) in shape.segments().iter().enumerate().skip(1) {
            let n_prev = shape.facet_normals()[f - 1].components();
            let n_this = shape.facet_normals()[f].components();
            let v = shape.vertices()[seg[0]];
            if v[0] > 5.0 || v[1] > 5.0 {
                continue;
            }
            let mid = [n_prev[0] + n_this[0], n_prev[1] + n_this[1]];
            let x = eta.surface_point(&mid).unwrap();
            let d = ((v[0] - x[0]).powi(2) + (v[1] - x[1]).powi(2)).sqrt();
            worst = worst.max(d);
        }
        worst
    };
    let e1 = err_at(4096);
    let e2 = err_at(8192);
    assert!(e1 <= 5e-3, "error at 4096 samples: {e1}");
    assert!(e2 <= e1 / 4.0 * 1.3 + 1e-12, "e1 = {e1}, e2 = {e2}");
}

#[test]
fn support_property_inner_shapes() {
    let eta = TensionFunction::young();
    let shape = build_inner_shape(&eta, 2048, DEFAULT_WINDOW).unwrap();
    let r = shape.max_support_residual(&eta);
    assert!(r <= 1e-9, "young support residual {r}");

    let eta = TensionFunction::skyscraper();
    let shape = build_inner_shape(&eta, 48 * 48, DEFAULT_WINDOW).unwrap();
    let r = shape.max_support_residual(&eta);
    assert!(r <= 1e-9, "skyscraper support residual {r}");
}

#[test]
fn inner_shapes_are_convex() {
    let shape = build_inner_shape(&TensionFunction::young(), 512, 10.0).unwrap();
    shape.validate().unwrap();
    let shape = build_inner_shape(&TensionFunction::skyscraper(), 24 * 24, 8.0).unwrap();
    shape.validate().unwrap();
}

#[test]
fn wulff_isotropic_is_a_quarter_circle() {
    let tau = TensionFunction::constant(1.0, 1);
    let shape = build_wulff_shape(&tau, 4096).unwrap();
    let mut worst = 0.0f64;
    for v in shape.vertices() {
        worst = worst.max(((v[0] * v[0] + v[1] * v[1]).sqrt() - 1.0).abs());
    }
    assert!(worst <= 1e-6, "radial deviation {worst}");
    // total arc length and enclosed area of the circumscribed polygon
    let len = shape.surface_area();
    assert!((len - PI / 2.0).abs() < 1e-4);
    let vol = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - PI / 4.0).abs() < 1e-6, "area {vol}");
    let vol_inf = shape.enclosed_volume(VolumeSide::Infinity).unwrap();
    assert!((vol_inf - vol).abs() < 1e-15);
}

#[test]
fn wulff_square_tension() {
    // support function of the square: the shape is its two far sides
    let tau = TensionFunction::l1_scaled(1.0, 1);
    let shape = build_wulff_shape(&tau, 1024).unwrap();
    for v in shape.vertices() {
        assert!((v[0] - 1.0).abs() < 1e-9 || (v[1] - 1.0).abs() < 1e-9);
        assert!(v[0] <= 1.0 + 1e-9 && v[1] <= 1.0 + 1e-9);
    }
    let vol = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - 1.0).abs() < 1e-9);
    let w = functional_value(&tau, &shape).unwrap();
    assert!((w - 2.0).abs() < 1e-9);
}

#[test]
fn wulff_rejects_vanishing_tension() {
    assert!(build_wulff_shape(&TensionFunction::young(), 256).is_err());
}

#[test]
fn wulff_isotropic_sphere_octant() {
    let tau = TensionFunction::constant(1.0, 2);
    let shape = build_wulff_shape(&tau, 128 * 128).unwrap();
    let mut worst = 0.0f64;
    for v in shape.vertices() {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        worst = worst.max((r - 1.0).abs());
    }
    assert!(worst <= 1e-4, "radius deviation {worst}");
    let vol = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - PI / 6.0).abs() < 2e-3, "octant volume {vol}");
}

#[test]
fn functional_on_isotropic_arc() {
    let tau = TensionFunction::constant(1.0, 1);
    let shape = build_wulff_shape(&tau, 4096).unwrap();
    let r = 1.0;
    let v = functional_value(&tau, &shape).unwrap();
    assert!((v - PI / 2.0 * r).abs() < 1e-4);
}

#[test]
fn dual_tension_values() {
    let eta = TensionFunction::young();
    let tau = dual_tension(&eta, 1.0).unwrap();
    let sym = crate::entropy::Direction::new(&[1.0, 1.0]).unwrap();
    assert!((tau.eval(&sym) - SQRT2 * (1.0 - 2f64.ln())).abs() < 1e-12);
    let boundary = crate::entropy::Direction::new(&[1.0, 0.0]).unwrap();
    assert!((tau.eval(&boundary) - 1.0).abs() < 1e-12);

    let eta_s = TensionFunction::skyscraper();
    let tau_s = dual_tension(&eta_s, 1.0).unwrap();
    let sym3 = crate::entropy::Direction::new(&[1.0, 1.0, 1.0]).unwrap();
    assert!((tau_s.eval(&sym3) - 1.1724841727894237).abs() < 1e-10);

    // N too small: the dual dips negative near the symmetric direction
    assert!(dual_tension(&eta, 0.5).is_err());
}

#[test]
fn raw_young_volume_is_pi_squared_over_six() {
    let shape = build_inner_shape(&TensionFunction::young(), 4096, DEFAULT_WINDOW).unwrap();
    let vol = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - PI * PI / 6.0).abs() < 1e-4, "volume {vol}");
    assert!(shape.enclosed_volume(VolumeSide::Infinity).is_err());
    assert!(shape.volume_tail_bound() < 1e-6);
}

#[test]
fn volume_identity_on_polytopes() {
    // vol = functional/(d+1) holds exactly for support polytopes
    let tau = TensionFunction::constant(1.0, 1);
    let shape = build_wulff_shape(&tau, 512).unwrap();
    let v = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    let w = functional_value(&tau, &shape).unwrap();
    assert!((v - w / 2.0).abs() < 1e-12);

    let eta = TensionFunction::young();
    let taud = dual_tension(&eta, 5.0).unwrap();
    let shape = build_wulff_shape(&taud, 2048).unwrap();
    let v = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    let w = functional_value(&taud, &shape).unwrap();
    assert!((v - w / 2.0).abs() < 1e-10, "v = {v}, w/2 = {}", w / 2.0);
}

#[test]
fn dilatation_fixed_points() {
    let eta = TensionFunction::young();
    let n = 20.0;
    // the raw shape volume within Q_20 equals pi^2/6 up to the exponential
    // tail beyond the cube, so the solved dilatation is the fixed point 1
    let v1 = {
        let p = CubeProblem::new(n, PI * PI / 6.0, eta.clone()).unwrap();
        solve_dilatation(&p).unwrap()
    };
    assert!((v1 - 1.0).abs() < 1e-6, "lambda for V = pi^2/6: {v1}");

    let v2 = {
        let p = CubeProblem::new(n, 4.0 * PI * PI / 6.0, eta.clone()).unwrap();
        solve_dilatation(&p).unwrap()
    };
    assert!((v2 - 2.0).abs() < 1e-6, "lambda for 4V: {v2}");

    // degenerate limit: tiny target volume forces a tiny dilatation
    let p = CubeProblem::new(10.0, 1e-9, eta.clone()).unwrap();
    let lam = solve_dilatation(&p).unwrap();
    assert!(lam < 1e-3, "lambda = {lam}");

    assert!(CubeProblem::new(10.0, 101.0, eta).is_err());
}

#[test]
fn scaled_maximizer_volume_matches_target() {
    let eta = TensionFunction::young();
    let n = 20.0;
    let v = PI * PI / 6.0;
    let p = CubeProblem::new(n, v, eta.clone()).unwrap();
    let shape = scaled_maximizer(&p, 4096).unwrap();
    let vol = shape.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - v).abs() <= 1e-6 * n * n, "volume {vol} vs target {v}");

    // degenerate tension hugs the axes with zero functional
    let degenerate = CubeProblem::new(n, 1.0, TensionFunction::constant(0.0, 1)).unwrap();
    let shape = scaled_maximizer(&degenerate, 64).unwrap();
    assert!(functional_value(degenerate.eta(), &shape).unwrap().abs() < 1e-12);
}

#[test]
fn wulff_minimizer_scaling() {
    let tau = TensionFunction::constant(1.0, 1);
    // volume pi/4 forces the unit quarter circle
    let m = wulff_minimizer(&tau, PI / 4.0, 2048).unwrap();
    for v in m.vertices() {
        assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - 1.0).abs() < 1e-5);
    }
    // volume pi forces radius 2
    let m = wulff_minimizer(&tau, PI, 2048).unwrap();
    for v in m.vertices() {
        assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - 2.0).abs() < 1e-5);
    }
    // square tension at volume 4: sides of [0, 2]^2
    let sq = TensionFunction::l1_scaled(1.0, 1);
    let m = wulff_minimizer(&sq, 4.0, 1024).unwrap();
    let vol = m.enclosed_volume(VolumeSide::Origin).unwrap();
    assert!((vol - 4.0).abs() < 1e-6 * 4.0);
    let extent = m.vertices().iter().fold(0.0f64, |a, v| a.max(v[0]));
    assert!((extent - 2.0).abs() < 1e-9);
}

#[test]
fn projection_area_examples() {
    // the two cube faces at the origin, d = 1, N = 3
    let g0 = ConvexShape::from_polyline(&[[0.0, 3.0], [0.0, 0.0], [3.0, 0.0]], 3.0).unwrap();
    let p = projection_area(&g0, 3.0).unwrap();
    assert!((p - 3.0 * SQRT2).abs() < 1e-12);

    // three unit squares meeting at the origin, d = 2, N = 1
    let verts = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 1.0],
        [1.0, 0.0, 1.0],
    ];
    let tris = [
        [0usize, 1, 4],
        [0, 4, 2], // z = 0 face
        [0, 2, 5],
        [0, 5, 3], // x = 0 face
        [0, 3, 6],
        [0, 6, 1], // y = 0 face
    ];
    let g0 = ConvexShape::from_triangles(&verts, &tris, 1.0).unwrap();
    let p = projection_area(&g0, 1.0).unwrap();
    assert!((p - 3f64.sqrt()).abs() < 1e-12);

    // quarter circle of radius 1 projects onto the same segment as G0
    let arc = build_wulff_shape(&TensionFunction::constant(1.0, 1), 4096).unwrap();
    let p = projection_area(&arc, 1.0).unwrap();
    assert!((p - SQRT2).abs() < 1e-9);

    // out-of-cube vertices are rejected
    assert!(projection_area(&arc, 0.5).is_err());
}

#[test]
fn duality_residual_single_facet() {
    // one planar facet with the symmetric normal
    let shape = ConvexShape::from_polyline(&[[0.5, 1.5], [1.5, 0.5]], 20.0).unwrap();
    let r = duality_residual(&TensionFunction::young(), 20.0, &shape).unwrap();
    assert!(r <= 1e-12, "single-facet residual {r}");
}

#[test]
fn duality_residual_sphere_octant() {
    let tau = TensionFunction::constant(1.0, 2);
    let oct = build_wulff_shape(&tau, 64 * 64).unwrap();
    let r = duality_residual(&TensionFunction::skyscraper(), 10.0, &oct).unwrap();
    assert!(r <= 1e-9, "octant residual {r}");
}

#[test]
fn skyscraper_dilatation_fixed_point() {
    let eta = TensionFunction::skyscraper();
    // forward volume at lambda = 1 inside Q_10, then invert
    let window = DEFAULT_WINDOW.max(10.0) + 5.0;
    let m = super::surface::grid_side(96 * 96);
    let mesh = super::surface::parametric_mesh(&eta, m, super::surface::inner_p_floor(window))
        .unwrap();
    let v1 = super::surface::volume_in_cube_mesh(&mesh, 1.0, 10.0);
    let p = CubeProblem::new(10.0, v1, eta).unwrap();
    let lam = solve_dilatation_with(&p, 96 * 96).unwrap();
    assert!((lam - 1.0).abs() < 1e-6, "lambda = {lam}");
}
