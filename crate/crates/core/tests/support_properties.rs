//! Property suites for the support oracles: homogeneity, subadditivity,
//! argmax consistency and Minkowski additivity.

use polyapprox::{ConvexBody, Rotation, Vector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn test_bodies() -> Vec<(&'static str, ConvexBody)> {
    let ball = ConvexBody::ball(Vector::new2(0.3, -0.2), 1.25).unwrap();
    let ell = ConvexBody::ellipsoid(
        Vector::new2(0.1, 0.4),
        vec![2.0, 1.0],
        Rotation::from_angle_2d(0.7),
    )
    .unwrap();
    let cap = ConvexBody::power_cap(2.0).unwrap();
    let cap3 = ConvexBody::power_cap(3.0).unwrap();
    let sum = ConvexBody::minkowski_sum(ball.clone(), ell.clone()).unwrap();
    let moved = ConvexBody::translate(cap.clone(), Vector::new2(-1.0, 2.0)).unwrap();
    vec![
        ("ball", ball),
        ("ellipsoid", ell),
        ("power_cap_2", cap),
        ("power_cap_3", cap3),
        ("minkowski", sum),
        ("translate", moved),
    ]
}

proptest! {
    #[test]
    fn support_is_positively_homogeneous(
        theta in 0.0..std::f64::consts::TAU,
        mag in 0.01f64..10.0,
        lambda in 0.01f64..50.0,
    ) {
        let p = Vector::from_angle(theta).scale(mag);
        for (name, body) in test_bodies() {
            let s1 = body.support(&p).unwrap();
            let s2 = body.support(&p.scale(lambda)).unwrap();
            let scale = 1.0 + s1.abs() * lambda;
            prop_assert!(
                (s2 - lambda * s1).abs() <= 1e-10 * scale,
                "{name}: s({lambda}p) = {s2} vs {}", lambda * s1
            );
        }
    }

    #[test]
    fn support_is_subadditive(
        ta in 0.0..std::f64::consts::TAU,
        tb in 0.0..std::f64::consts::TAU,
        ma in 0.01f64..5.0,
        mb in 0.01f64..5.0,
    ) {
        let p = Vector::from_angle(ta).scale(ma);
        let q = Vector::from_angle(tb).scale(mb);
        for (name, body) in test_bodies() {
            let lhs = body.support(&p.add(&q)).unwrap();
            let rhs = body.support(&p).unwrap() + body.support(&q).unwrap();
            prop_assert!(
                lhs <= rhs + 1e-10 * (1.0 + rhs.abs()),
                "{name}: s(p+q) = {lhs} > {rhs}"
            );
        }
    }
}

#[test]
fn argmax_attains_support_and_lies_in_body() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (name, body) in test_bodies() {
        for _ in 0..200 {
            let p = Vector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))
                .scale(rng.gen_range(0.1..4.0));
            let ev = body.support_argmax(&p).unwrap();
            let s = body.support(&p).unwrap();
            assert!(
                p.dot(&ev.argmax) >= s - 1e-9 * (1.0 + s.abs()),
                "{name}: argmax misses the support value"
            );
            let d = body.distance(&ev.argmax).unwrap();
            assert!(d <= 1e-8, "{name}: argmax {:?} at distance {d}", ev.argmax);
        }
    }
}

#[test]
fn minkowski_support_additivity_on_many_directions() {
    let a = ConvexBody::ellipsoid_axes(&[2.0, 1.0]).unwrap();
    let b = ConvexBody::ball(Vector::new2(0.5, 0.5), 0.75).unwrap();
    let sum = ConvexBody::minkowski_sum(a.clone(), b.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let p = Vector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))
            .scale(rng.gen_range(0.1..3.0));
        let lhs = sum.support(&p).unwrap();
        let rhs = a.support(&p).unwrap() + b.support(&p).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }
}

#[test]
fn power_cap_support_against_boundary_sampling() {
    // Dense boundary sampling as the independent oracle for the golden-
    // section support evaluation.
    for s in [2.0, 2.5, 3.0] {
        let cap = ConvexBody::power_cap(s).unwrap();
        // Junction of the curve with the unit circle.
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for _ in 0..100 {
            let m = 0.5 * (lo + hi);
            if m * m + m.powf(2.0 * s) <= 1.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let xs = lo;
        let ths = xs.powf(s).atan2(xs);
        let mut boundary = Vec::new();
        for k in 0..=4000 {
            let x = -xs + 2.0 * xs * k as f64 / 4000.0;
            boundary.push(Vector::new2(x, x.abs().powf(s)));
        }
        for k in 0..=4000 {
            let t = ths + (std::f64::consts::PI - 2.0 * ths) * k as f64 / 4000.0;
            boundary.push(Vector::from_angle(t));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(s as u64);
        for _ in 0..100 {
            let p = Vector::from_angle(rng.gen_range(0.0..std::f64::consts::TAU));
            let brute = boundary
                .iter()
                .map(|x| p.dot(x))
                .fold(f64::NEG_INFINITY, f64::max);
            let s_val = cap.support(&p).unwrap();
            assert!(
                s_val >= brute - 1e-9 && s_val <= brute + 1e-5,
                "s={s}: support {s_val} vs sampled {brute}"
            );
        }
    }
}

#[test]
fn power_cap_diameter_against_pairwise_sampling() {
    let s = 2.0;
    let cap = ConvexBody::power_cap(s).unwrap();
    let d = cap.diameter().unwrap();
    // Pairwise oracle over dense boundary samples; the junction of the curve
    // with the circle is solved to full precision so no phantom points
    // outside the body sneak in.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m * m + m.powf(2.0 * s) <= 1.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let xs = lo;
    let ths = xs.powf(s).atan2(xs);
    let mut pts = Vec::new();
    for k in 0..=800 {
        let x = -xs + 2.0 * xs * k as f64 / 800.0;
        pts.push(Vector::new2(x, x.abs().powf(s)));
    }
    for k in 0..=800 {
        let t = ths + (std::f64::consts::PI - 2.0 * ths) * k as f64 / 800.0;
        pts.push(Vector::from_angle(t));
    }
    let mut brute = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            brute = brute.max(pts[i].dist(&pts[j]));
        }
    }
    assert!((d - brute).abs() < 1e-6, "diameter {d} vs sampled {brute}");
    assert!(d >= brute - 1e-9);
}

#[test]
fn distance_dual_form_examples() {
    let ball = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
    let sec = 1.0 / (std::f64::consts::PI / 16.0).cos();
    let d = ball.distance(&Vector::new2(sec, 0.0)).unwrap();
    assert!((d - 0.019591158).abs() < 1e-8);
    // Interior points of every family report zero.
    for (name, body) in test_bodies() {
        let ev = body.support_argmax(&Vector::new2(0.0, 1.0)).unwrap();
        let inner = ev.argmax.scale(0.5).add(
            &body
                .support_argmax(&Vector::new2(0.0, -1.0))
                .unwrap()
                .argmax
                .scale(0.5),
        );
        let d = body.distance(&inner).unwrap();
        assert!(d <= 1e-7, "{name}: midpoint distance {d}");
    }
}
