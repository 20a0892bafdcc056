//! Hausdorff-distance measurement.
//!
//! For convex compacta the Hausdorff distance equals the sup-norm gap of the
//! supporting functions over the unit sphere. `hausdorff_by_support` samples
//! that gap on a deterministic low-discrepancy direction set and reports the
//! sampling resolution; `hausdorff_outer_2d` is exact for the outer-
//! approximation setting in the plane, where the distance is attained at a
//! polytope vertex.

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Supportable};
use crate::grid::grid_icosphere_3d;
use crate::hull::{vertices_2d, HPolytope};
use crate::numeric::{golden_angle, golden_max, tangent_basis};
use crate::vec::Vector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    Exact2D,
    SupportSampled { num_directions: usize },
}

/// A distance measurement with a certified interpretation: `value` never
/// exceeds the true distance by more than the solver tolerances, and
/// `value + resolution` is an upper estimate for sampled methods.
#[derive(Clone, Copy, Debug)]
pub struct HausdorffResult {
    pub value: f64,
    pub method: Method,
    pub resolution: f64,
}

/// `sup_{|p|=1} |s(p, A) - s(p, B)|` sampled on `m` quasi-uniform directions
/// with one local refinement around the best direction.
pub fn hausdorff_by_support<A, B>(a: &A, b: &B, m: usize) -> Result<HausdorffResult>
where
    A: Supportable + ?Sized,
    B: Supportable + ?Sized,
{
    if a.sdim() != b.sdim() {
        return Err(Error::UnsupportedDimension(
            "operands have different dimensions".into(),
        ));
    }
    if m < 64 {
        return Err(Error::InvalidInput("need at least 64 directions".into()));
    }
    match a.sdim() {
        2 => hausdorff_2d(a, b, m),
        3 => hausdorff_3d(a, b, m),
        d => Err(Error::UnsupportedDimension(format!(
            "unsupported dimension {d}"
        ))),
    }
}

fn hausdorff_2d<A, B>(a: &A, b: &B, m: usize) -> Result<HausdorffResult>
where
    A: Supportable + ?Sized,
    B: Supportable + ?Sized,
{
    let mut thetas: Vec<f64> = (0..m).map(golden_angle).collect();
    let mut best_theta = 0.0;
    let mut best = f64::NEG_INFINITY;
    // Lipschitz constant of the support difference along the circle is at
    // most the sum of the two outradii, which equal the support maxima.
    let mut out_a = 0.0f64;
    let mut out_b = 0.0f64;
    for &t in thetas.iter() {
        let p = Vector::from_angle(t);
        let sa = a.support_value(&p)?;
        let sb = b.support_value(&p)?;
        out_a = out_a.max(sa);
        out_b = out_b.max(sb);
        let g = (sa - sb).abs();
        if g > best {
            best = g;
            best_theta = t;
        }
    }
    thetas.sort_by(f64::total_cmp);
    let mut gap = thetas[0] + std::f64::consts::TAU - thetas[m - 1];
    for w in thetas.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    let mut failure: Option<Error> = None;
    let (_, refined) = golden_max(
        |t| {
            let p = Vector::from_angle(t);
            match (a.support_value(&p), b.support_value(&p)) {
                (Ok(sa), Ok(sb)) => (sa - sb).abs(),
                (Err(e), _) | (_, Err(e)) => {
                    failure = Some(e);
                    f64::NEG_INFINITY
                }
            }
        },
        best_theta - gap,
        best_theta + gap,
        80,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(HausdorffResult {
        value: best.max(refined),
        method: Method::SupportSampled { num_directions: m },
        resolution: (out_a.max(0.0) + out_b.max(0.0)) * gap,
    })
}

fn hausdorff_3d<A, B>(a: &A, b: &B, m: usize) -> Result<HausdorffResult>
where
    A: Supportable + ?Sized,
    B: Supportable + ?Sized,
{
    // Icosphere frequency with at least m vertices (10 f^2 + 2 >= m).
    let freq = (((m.saturating_sub(2)) as f64 / 10.0).sqrt().ceil() as usize).max(3);
    let grid = grid_icosphere_3d(freq)?;
    let dirs = grid.dirs();
    let mut best_dir = dirs[0];
    let mut best = f64::NEG_INFINITY;
    let mut out_a = 0.0f64;
    let mut out_b = 0.0f64;
    for p in dirs {
        let sa = a.support_value(p)?;
        let sb = b.support_value(p)?;
        out_a = out_a.max(sa);
        out_b = out_b.max(sb);
        let g = (sa - sb).abs();
        if g > best {
            best = g;
            best_dir = *p;
        }
    }
    // One local refinement pass over a shrinking spherical cap.
    let mut radius = 2.0 * (grid.step() / 2.0).asin();
    let gap_angle = radius;
    for _ in 0..40 {
        let (e1, e2) = tangent_basis(&best_dir);
        let (sr, cr) = radius.sin_cos();
        let mut improved = false;
        for k in 0..16 {
            let phi = std::f64::consts::TAU * k as f64 / 16.0;
            let cand = best_dir
                .scale(cr)
                .add(&e1.scale(sr * phi.cos()))
                .add(&e2.scale(sr * phi.sin()))
                .normalized()?;
            let g = (a.support_value(&cand)? - b.support_value(&cand)?).abs();
            if g > best {
                best = g;
                best_dir = cand;
                improved = true;
            }
        }
        if !improved {
            radius *= 0.6;
            if radius < 1e-8 {
                break;
            }
        }
    }
    Ok(HausdorffResult {
        value: best,
        method: Method::SupportSampled {
            num_directions: dirs.len(),
        },
        resolution: (out_a.max(0.0) + out_b.max(0.0)) * gap_angle,
    })
}

/// Exact planar Hausdorff distance between a body and an outer polyhedral
/// approximation of it: the maximum over polytope vertices of the distance
/// to the body.
pub fn hausdorff_outer_2d(p: &HPolytope, a: &ConvexBody) -> Result<HausdorffResult> {
    if p.dim() != 2 || a.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "exact outer distance is planar only".into(),
        ));
    }
    // Outerness check: sampled boundary points of the body must satisfy
    // every halfspace within tolerance.
    let tau = std::f64::consts::TAU;
    for k in 0..128 {
        let x = a
            .support_argmax(&Vector::from_angle(tau * k as f64 / 128.0))?
            .argmax;
        for (n, b) in p.halfspaces() {
            if n.dot(&x) > b + 1e-6 * (1.0 + b.abs()) {
                return Err(Error::NotOuter(format!(
                    "boundary point {x} violates a halfspace by {:e}",
                    n.dot(&x) - b
                )));
            }
        }
    }
    let verts = vertices_2d(p)?;
    let mut value = 0.0f64;
    for v in verts.vertices() {
        value = value.max(a.distance(v)?);
    }
    Ok(HausdorffResult {
        value,
        method: Method::Exact2D,
        resolution: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::grid_uniform_2d;
    use crate::hull::external_approx;

    #[test]
    fn identical_bodies_have_zero_distance() {
        let b = ConvexBody::ball(Vector::new2(0.2, -0.7), 1.3).unwrap();
        let h = hausdorff_by_support(&b, &b, 256).unwrap();
        assert_eq!(h.value, 0.0);
    }

    #[test]
    fn ball_vs_ball_closed_form() {
        let a = ConvexBody::ball(Vector::new2(0.0, 0.0), 1.0).unwrap();
        let b = ConvexBody::ball(Vector::new2(0.5, -0.25), 1.75).unwrap();
        let expect = Vector::new2(0.5, -0.25).norm() + 0.75;
        let h = hausdorff_by_support(&a, &b, 4096).unwrap();
        assert!((h.value - expect).abs() <= h.resolution + 1e-9);
        assert!(h.value <= expect + 1e-9, "sampled value stays below truth");
    }

    #[test]
    fn ball_vs_outer_polytope() {
        let ball = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let grid = grid_uniform_2d(16).unwrap();
        let hat = external_approx(&ball, &grid).unwrap();
        let expect = 1.0 / (std::f64::consts::PI / 16.0).cos() - 1.0;
        let sampled = hausdorff_by_support(&ball, &hat, 100_000).unwrap();
        assert!((sampled.value - expect).abs() < 1e-4);
        let exact = hausdorff_outer_2d(&hat, &ball).unwrap();
        assert!((exact.value - expect).abs() < 1e-8);
        assert_eq!(exact.method, Method::Exact2D);
        assert!((sampled.value - exact.value).abs() <= sampled.resolution);
    }

    #[test]
    fn tight_polytope_around_polytope_body_measures_zero() {
        let rows = vec![
            (Vector::new2(1.0, 0.0), 1.0),
            (Vector::new2(-1.0, 0.0), 1.0),
            (Vector::new2(0.0, 1.0), 1.0),
            (Vector::new2(0.0, -1.0), 1.0),
        ];
        let body = ConvexBody::h_polytope(rows.clone()).unwrap();
        let hat = HPolytope::new(rows).unwrap();
        let h = hausdorff_outer_2d(&hat, &body).unwrap();
        assert!(h.value <= 1e-9, "got {}", h.value);
    }

    #[test]
    fn not_outer_raises() {
        let ball = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let tight = HPolytope::new(vec![
            (Vector::new2(1.0, 0.0), 0.5),
            (Vector::new2(-1.0, 0.0), 1.0),
            (Vector::new2(0.0, 1.0), 1.0),
            (Vector::new2(0.0, -1.0), 1.0),
        ])
        .unwrap();
        assert!(matches!(
            hausdorff_outer_2d(&tight, &ball),
            Err(Error::NotOuter(_))
        ));
    }

    #[test]
    fn symmetry_and_triangle_inequality_sampled() {
        let bodies = [
            ConvexBody::ball(Vector::new2(0.0, 0.0), 1.0).unwrap(),
            ConvexBody::ball(Vector::new2(0.4, 0.1), 0.5).unwrap(),
            ConvexBody::ellipsoid_axes(&[2.0, 1.0]).unwrap(),
        ];
        let mut h = [[0.0f64; 3]; 3];
        let mut res = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let r = hausdorff_by_support(&bodies[i], &bodies[j], 2048).unwrap();
                h[i][j] = r.value;
                res = res.max(r.resolution);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!((h[i][j] - h[j][i]).abs() <= 2.0 * res);
                for k in 0..3 {
                    assert!(h[i][j] <= h[i][k] + h[k][j] + 2.0 * res);
                }
            }
        }
    }

    #[test]
    fn refinement_never_regresses() {
        let a = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let b = ConvexBody::ellipsoid_axes(&[2.0, 1.0]).unwrap();
        let coarse = hausdorff_by_support(&a, &b, 64).unwrap();
        let fine = hausdorff_by_support(&a, &b, 4096).unwrap();
        assert!(fine.value + coarse.resolution >= coarse.value);
        assert!((fine.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sampled_3d_ball_pair() {
        let a = ConvexBody::ball(Vector::zero(3), 1.0).unwrap();
        let b = ConvexBody::ball(Vector::new3(0.25, 0.0, 0.0), 0.5).unwrap();
        let h = hausdorff_by_support(&a, &b, 1000).unwrap();
        assert!((h.value - 0.75).abs() < 1e-6);
        assert!(matches!(h.method, Method::SupportSampled { .. }));
    }

    #[test]
    fn spherical_approximation_error_obeys_the_classical_bound() {
        let ball = ConvexBody::ball(Vector::zero(3), 1.0).unwrap();
        let grid = crate::grid::grid_icosphere_3d(3).unwrap();
        let hat = external_approx(&ball, &grid).unwrap();
        let h = hausdorff_by_support(&ball, &hat, 2000).unwrap();
        // Lower bound from any sampled direction, upper from 2 h0 step.
        assert!(h.value > 0.0);
        assert!(h.value <= 2.0 * grid.step());
        // The sampled value plus its resolution covers the analytic error of
        // the circumscribed polytope at the face centers.
        assert!(h.value + h.resolution >= 1.0 / (1.0 - grid.step() * grid.step() / 4.0) - 1.0);
    }
}
