use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triangle_finsler::domain_shape::{
    boundary_hit, convex_hull, dds_all_supports, dds_eval, fds_eval, polar_dual, support_functionals,
    titeica_point, titeica_triangle, BilinearForm, ConvexBody, GaugeBall, Lift, PolygonJson,
};
use triangle_finsler::flat_metric::finsler_delta_eval;

fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexBody {
    let pts: Vec<Complex64> = (0..rng.gen_range(3..15))
        .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let hull = convex_hull(&pts);
    if hull.len() < 3 {
        return random_polygon(rng);
    }
    let base = hull.iter().sum::<Complex64>() / hull.len() as f64;
    ConvexBody::polygon(hull, base).unwrap_or_else(|_| random_polygon(rng))
}

fn interior(rng: &mut ChaCha8Rng, body: &ConvexBody) -> Complex64 {
    let base = body.base();
    let dir = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    base + (boundary_hit(body, base, dir).unwrap() - base) * rng.gen_range(0.0..0.95)
}

fn bodies(rng: &mut ChaCha8Rng) -> Vec<ConvexBody> {
    let mut out: Vec<ConvexBody> = (0..30).map(|_| random_polygon(rng)).collect();
    out.push(ConvexBody::ellipse(Complex64::new(-0.3, 0.4), 0.7, 1.9).unwrap());
    out.push(ConvexBody::unit_disk());
    out
}

#[test]
fn triangle_inequality_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for body in bodies(&mut rng) {
        for _ in 0..40 {
            let [x, y, z] = [0; 3].map(|_| interior(&mut rng, &body));
            let d = |a, b| dds_eval(&body, Lift::Flat, a, b).unwrap();
            assert!(d(x, y) + d(y, z) >= d(x, z) - 1e-12);
        }
    }
}

#[test]
fn distance_to_self_is_zero_and_positive_otherwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for body in bodies(&mut rng) {
        let (x, y) = (interior(&mut rng, &body), interior(&mut rng, &body));
        assert_eq!(dds_eval(&body, Lift::Flat, x, x).unwrap(), 0.0);
        assert!(dds_eval(&body, Lift::Flat, x, y).unwrap() > 0.0);
    }
}

#[test]
fn corner_functionals_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..30 {
        let body = random_polygon(&mut rng);
        let ConvexBody::Polygon { vertices, .. } = &body else { unreachable!() };
        let corner = vertices[rng.gen_range(0..vertices.len())];
        let x = interior(&mut rng, &body);
        // y sits on the far side of x from the corner, so the exit is the corner.
        let y = x + (x - corner) * 0.01;
        if !body.is_interior(y) {
            continue;
        }
        let hit = boundary_hit(&body, x, x - y).unwrap();
        assert!((hit - corner).norm() < 1e-9);
        assert_eq!(support_functionals(&body, hit).unwrap().len(), 2);
        let values = dds_all_supports(&body, Lift::Flat, x, y).unwrap();
        assert_eq!(values.len(), 2);
        assert!((values[0] - values[1]).abs() < 1e-12, "{values:?}");
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn support_functionals_vanish_at_contact_and_are_positive_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for body in bodies(&mut rng) {
        let x = interior(&mut rng, &body);
        let dir = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let p = boundary_hit(&body, x, dir).unwrap();
        for beta in support_functionals(&body, p).unwrap() {
            assert!(beta.eval([p.re, p.im, 1.0]).abs() < 1e-9);
            assert!(beta.eval([x.re, x.im, 1.0]) > 0.0);
        }
    }
}

#[test]
fn finsler_norm_is_homogeneous_and_subadditive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<(ConvexBody, Lift)> = bodies(&mut rng).into_iter().map(|b| (b, Lift::Flat)).collect();
    cases.push((titeica_triangle(), Lift::Titeica));
    for (body, lift) in &cases {
        for _ in 0..20 {
            let x = interior(&mut rng, body);
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let f = |u| fds_eval(body, *lift, x, u).unwrap();
            let k = rng.gen_range(0.1..10.0);
            assert!((f(v * k) - k * f(v)).abs() < 1e-9 * (1.0 + k * f(v)));
            assert!(f(v + w) <= f(v) + f(w) + 1e-9);
        }
    }
}

#[test]
fn difference_quotient_converges_at_first_order_on_the_disk() {
    let disk = ConvexBody::unit_disk();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let x = interior(&mut rng, &disk);
        let v = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let f = fds_eval(&disk, Lift::Flat, x, v).unwrap();
        let err: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|&tau| (dds_eval(&disk, Lift::Flat, x, x + v * tau).unwrap() / tau - f).abs())
            .collect();
        for r in [err[0] / err[1], err[1] / err[2]] {
            assert!((5.0..=20.0).contains(&r), "ratios from {err:?}");
        }
    }
}

#[test]
fn titeica_lift_is_strictly_convex() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tri = titeica_triangle();
    let pts: Vec<Complex64> = (0..40).map(|_| interior(&mut rng, &tri)).collect();
    assert!(Lift::Titeica.convexity_gap(&pts).unwrap() > 0.0);
    assert_eq!(Lift::Flat.convexity_gap(&pts).unwrap(), 0.0);
}

#[test]
fn titeica_metric_at_the_base_point_is_the_triangular_norm() {
    let tri = titeica_triangle();
    for k in 0..24 {
        let v = Complex64::from_polar(1.0 + k as f64 / 10.0, k as f64 * 0.37);
        // Differential of the developing map at 0 is v ↦ v̄.
        let got = fds_eval(&tri, Lift::Titeica, Complex64::new(0.0, 0.0), v.conj()).unwrap();
        let want = finsler_delta_eval(Complex64::new(1.0, 0.0), v);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn titeica_points_satisfy_the_cubic_equation() {
    // (3b₁)(3b₂)(3b₃)·h³ = 1 on the sphere, with b barycentric coordinates.
    for (re, im) in [(0.1, 0.2), (-1.5, 0.3), (2.0, -2.0), (0.0, 3.0)] {
        let tp = titeica_point(Complex64::new(re, im));
        let h = tp.point[2];
        let product: f64 = (0..3)
            .map(|k| {
                let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
                (1.0 + 2.0 * (zeta.conj() * tp.chart).re) * h
            })
            .product();
        assert!((product - 1.0).abs() < 1e-9, "{product}");
    }
}

#[test]
fn bipolar_is_identity_on_random_balls() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let forms = [
        BilinearForm::flat(),
        BilinearForm::new([[2.0, 0.5], [0.5, 1.0]]).unwrap(),
    ];
    for _ in 0..20 {
        let pts: Vec<Complex64> = (0..8)
            .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let Ok(ball) = GaugeBall::hull(&pts) else { continue };
        for form in &forms {
            let dual = polar_dual(&ball, form).unwrap();
            // Every dual vertex pairs to at most 1 with every primal vertex.
            for u in dual.vertices() {
                for v in ball.vertices() {
                    assert!(form.eval(*u, *v) <= 1.0 + 1e-12);
                }
            }
            let back = polar_dual(&dual, form).unwrap();
            assert!(back.vertex_distance(&ball) < 1e-12);
        }
    }
}

#[test]
fn polygon_json_roundtrip() {
    let text = r#"{"vertices": [[0, 0], [2, 0], [1, 1.5]], "base": [1, 0.5]}"#;
    let json: PolygonJson = serde_json::from_str(text).unwrap();
    let body = ConvexBody::from_json(&json).unwrap();
    assert_eq!(body.to_json().unwrap(), json);
    let bad: PolygonJson = serde_json::from_str(r#"{"vertices": [[0, 0], [1, 1.5], [2, 0]], "base": [1, 0.5]}"#).unwrap();
    assert!(ConvexBody::from_json(&bad).is_err());
}
