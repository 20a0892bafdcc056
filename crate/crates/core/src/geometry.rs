//! Convex bodies and their support oracles.
//!
//! Every body is immutable after construction and all oracles are pure, so
//! concurrent evaluation is safe. Support values are exact (closed form) for
//! balls, ellipsoids, sums, translates and polytopes; the power cap uses
//! golden-section maximization over its two smooth boundary pieces, and ball
//! intersections are resolved on a fine internal direction fan with one local
//! refinement per query (the reported resolution bounds the overshoot).

use crate::error::{Error, Result};
use crate::hull2d::Polygon2;
use crate::lp::{solve_max, LinearProgram, LpOutcome};
use crate::numeric::{golden_max, golden_min, max_on_circle, max_on_circle_peaks, max_on_sphere};
use crate::vec::{Rotation, Vector};

/// Number of directions in the internal fan used to resolve ball
/// intersections in the plane.
const BALL_INTERSECTION_FAN: usize = 4096;

/// A support value together with a maximizing point.
#[derive(Clone, Copy, Debug)]
pub struct SupportEval {
    pub value: f64,
    pub argmax: Vector,
}

/// The power cap `{x_2 >= |x_1|^s}` intersected with the unit disk, `s >= 2`.
#[derive(Clone, Debug)]
pub struct PowerCap {
    exponent: f64,
    /// Positive root of `x^2 + x^(2s) = 1`: the curve meets the circle at
    /// `(x_star, x_star^s)`.
    x_star: f64,
    /// Polar angle of the curve/circle junction.
    theta_star: f64,
}

impl PowerCap {
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn corner_x(&self) -> f64 {
        self.x_star
    }

    fn curve_y(&self, x: f64) -> f64 {
        x.abs().powf(self.exponent)
    }
}

/// A nonempty intersection of equal-radius balls, resolved on a fine
/// direction fan at construction.
#[derive(Clone, Debug)]
pub struct BallIntersection {
    centers: Vec<Vector>,
    radius: f64,
    poly: Polygon2,
    resolution: f64,
}

impl BallIntersection {
    pub fn centers(&self) -> &[Vector] {
        &self.centers
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Upper estimate of the support overshoot of the internal fan after one
    /// local refinement.
    pub fn support_resolution(&self) -> f64 {
        self.resolution
    }

    /// Exact pointwise minimum of the member-ball supports.
    fn min_support(&self, u: &Vector) -> f64 {
        self.centers
            .iter()
            .map(|c| u.dot(c) + self.radius)
            .fold(f64::INFINITY, f64::min)
    }

    fn support_eval(&self, u: &Vector) -> Result<(f64, Vector)> {
        self.poly
            .support_refined(u, |mid| Ok(self.min_support(mid)))
    }
}

#[derive(Clone, Debug)]
pub enum ConvexBody {
    Ball {
        center: Vector,
        radius: f64,
    },
    Ellipsoid {
        center: Vector,
        semi_axes: Vec<f64>,
        rotation: Rotation,
    },
    PowerCap(PowerCap),
    BallIntersection(BallIntersection),
    MinkowskiSum {
        left: Box<ConvexBody>,
        right: Box<ConvexBody>,
    },
    Translate {
        inner: Box<ConvexBody>,
        shift: Vector,
    },
    HPolytopeBody {
        halfspaces: Vec<(Vector, f64)>,
    },
}

impl ConvexBody {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::InvalidGeometry(
                "ball radius must be positive".into(),
            ));
        }
        Ok(ConvexBody::Ball { center, radius })
    }

    pub fn ellipsoid(center: Vector, semi_axes: Vec<f64>, rotation: Rotation) -> Result<Self> {
        if semi_axes.len() != center.dim() || rotation.dim() != center.dim() {
            return Err(Error::UnsupportedDimension(
                "ellipsoid axes/rotation/center dimensions differ".into(),
            ));
        }
        if !semi_axes.iter().all(|a| *a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidGeometry("semi-axes must be positive".into()));
        }
        Ok(ConvexBody::Ellipsoid {
            center,
            semi_axes,
            rotation,
        })
    }

    /// Axis-aligned ellipsoid centered at the origin.
    pub fn ellipsoid_axes(semi_axes: &[f64]) -> Result<Self> {
        let dim = semi_axes.len();
        ConvexBody::ellipsoid(
            Vector::zero(dim),
            semi_axes.to_vec(),
            Rotation::identity(dim),
        )
    }

    pub fn power_cap(exponent: f64) -> Result<Self> {
        if !(exponent >= 2.0 && exponent.is_finite()) {
            return Err(Error::InvalidGeometry(
                "power cap exponent must satisfy s >= 2".into(),
            ));
        }
        // x^2 + x^(2s) is increasing on [0,1]; bisect for the circle junction.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid + mid.powf(2.0 * exponent) <= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x_star = 0.5 * (lo + hi);
        let theta_star = x_star.powf(exponent).atan2(x_star);
        Ok(ConvexBody::PowerCap(PowerCap {
            exponent,
            x_star,
            theta_star,
        }))
    }

    pub fn ball_intersection(centers: Vec<Vector>, radius: f64) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::InvalidGeometry("no centers given".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidGeometry("radius must be positive".into()));
        }
        let dim = centers[0].dim();
        if centers.iter().any(|c| c.dim() != dim || !c.is_finite()) {
            return Err(Error::UnsupportedDimension(
                "mixed center dimensions".into(),
            ));
        }
        if dim != 2 {
            return Err(Error::UnsupportedDimension(
                "ball intersections are resolved in the plane only".into(),
            ));
        }
        let tau = std::f64::consts::TAU;
        let mut halfspaces = Vec::with_capacity(BALL_INTERSECTION_FAN);
        for k in 0..BALL_INTERSECTION_FAN {
            let p = Vector::from_angle(tau * k as f64 / BALL_INTERSECTION_FAN as f64);
            let f = centers
                .iter()
                .map(|c| p.dot(c) + radius)
                .fold(f64::INFINITY, f64::min);
            halfspaces.push((p, f));
        }
        let poly = match Polygon2::build(&halfspaces) {
            Ok(p) => p,
            Err(Error::Degenerate(_)) | Err(Error::Infeasible) => {
                return Err(Error::InvalidGeometry(
                    "ball intersection is empty (inscribed-ball check failed)".into(),
                ))
            }
            Err(e) => return Err(e),
        };
        let scale = radius + centers.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let gap = poly.max_normal_gap();
        let resolution = (1.0 / (gap / 4.0).cos() - 1.0) * 2.0 * scale;
        Ok(ConvexBody::BallIntersection(BallIntersection {
            centers,
            radius,
            poly,
            resolution,
        }))
    }

    pub fn minkowski_sum(left: ConvexBody, right: ConvexBody) -> Result<Self> {
        if left.dim() != right.dim() {
            return Err(Error::UnsupportedDimension(
                "summand dimensions differ".into(),
            ));
        }
        Ok(ConvexBody::MinkowskiSum {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    pub fn translate(inner: ConvexBody, shift: Vector) -> Result<Self> {
        if inner.dim() != shift.dim() {
            return Err(Error::UnsupportedDimension(
                "shift dimension differs from the body".into(),
            ));
        }
        Ok(ConvexBody::Translate {
            inner: Box::new(inner),
            shift,
        })
    }

    /// A nonempty bounded polytope `{x : (p_i, x) <= b_i}`.
    pub fn h_polytope(halfspaces: Vec<(Vector, f64)>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidGeometry("no halfspaces given".into()));
        }
        let dim = halfspaces[0].0.dim();
        if halfspaces.iter().any(|(p, _)| p.dim() != dim) {
            return Err(Error::UnsupportedDimension(
                "mixed halfspace dimensions".into(),
            ));
        }
        match crate::lp::chebyshev_ball(&halfspaces) {
            Ok(_) => Ok(ConvexBody::HPolytopeBody { halfspaces }),
            Err(Error::Infeasible) => Err(Error::InvalidGeometry("polytope is empty".into())),
            Err(Error::Unbounded) => Err(Error::InvalidGeometry("polytope is unbounded".into())),
            Err(e) => Err(e),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { center, .. } => center.dim(),
            ConvexBody::Ellipsoid { center, .. } => center.dim(),
            ConvexBody::PowerCap(_) => 2,
            ConvexBody::BallIntersection(b) => b.centers[0].dim(),
            ConvexBody::MinkowskiSum { left, .. } => left.dim(),
            ConvexBody::Translate { inner, .. } => inner.dim(),
            ConvexBody::HPolytopeBody { halfspaces } => halfspaces[0].0.dim(),
        }
    }

    fn check_dim(&self, p: &Vector) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::UnsupportedDimension(format!(
                "direction has dimension {}, body has {}",
                p.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Supporting-function value `sup {(p, x) : x in body}`.
    ///
    /// Positively homogeneous in `p`; `p = 0` yields `0`.
    pub fn support(&self, p: &Vector) -> Result<f64> {
        self.check_dim(p)?;
        if !p.is_finite() {
            return Err(Error::InvalidInput("direction must be finite".into()));
        }
        let norm = p.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        match self {
            ConvexBody::Ball { center, radius } => Ok(p.dot(center) + radius * norm),
            ConvexBody::Ellipsoid {
                center,
                semi_axes,
                rotation,
            } => {
                let q = rotation.apply_transpose(p);
                let mut acc = 0.0;
                for (i, a) in semi_axes.iter().enumerate() {
                    let t = a * q.get(i);
                    acc += t * t;
                }
                Ok(p.dot(center) + acc.sqrt())
            }
            ConvexBody::PowerCap(cap) => {
                let u = p.scale(1.0 / norm);
                Ok(norm * power_cap_eval(cap, &u).0)
            }
            ConvexBody::BallIntersection(b) => {
                let u = p.scale(1.0 / norm);
                Ok(norm * b.support_eval(&u)?.0)
            }
            ConvexBody::MinkowskiSum { left, right } => Ok(left.support(p)? + right.support(p)?),
            ConvexBody::Translate { inner, shift } => Ok(inner.support(p)? + p.dot(shift)),
            ConvexBody::HPolytopeBody { halfspaces } => {
                let lp = LinearProgram::new(
                    p.coords().to_vec(),
                    halfspaces
                        .iter()
                        .map(|(a, b)| (a.coords().to_vec(), *b))
                        .collect(),
                )?;
                match solve_max(&lp)? {
                    LpOutcome::Optimal { value, .. } => Ok(value),
                    other => Err(Error::EvaluationFailure(format!(
                        "polytope support query returned {other:?}"
                    ))),
                }
            }
        }
    }

    /// Support value together with a maximizing point. For polytopes any
    /// optimal basic point may be returned; strictly convex bodies have a
    /// unique maximizer.
    pub fn support_argmax(&self, p: &Vector) -> Result<SupportEval> {
        self.check_dim(p)?;
        let norm = p.norm();
        if norm == 0.0 || !p.is_finite() {
            return Err(Error::ZeroDirection);
        }
        match self {
            ConvexBody::Ball { center, radius } => {
                let argmax = center.add(&p.scale(radius / norm));
                Ok(SupportEval {
                    value: p.dot(center) + radius * norm,
                    argmax,
                })
            }
            ConvexBody::Ellipsoid {
                center,
                semi_axes,
                rotation,
            } => {
                let q = rotation.apply_transpose(p);
                let mut dq = Vector::zero(p.dim());
                let mut acc = 0.0;
                for (i, a) in semi_axes.iter().enumerate() {
                    let t = a * q.get(i);
                    acc += t * t;
                }
                let denom = acc.sqrt();
                for (i, a) in semi_axes.iter().enumerate() {
                    let coords = q.get(i) * a * a / denom;
                    dq = dq.add(&unit_axis(p.dim(), i).scale(coords));
                }
                let argmax = center.add(&rotation.apply(&dq));
                Ok(SupportEval {
                    value: p.dot(center) + denom,
                    argmax,
                })
            }
            ConvexBody::PowerCap(cap) => {
                let u = p.scale(1.0 / norm);
                let (value, argmax) = power_cap_eval(cap, &u);
                Ok(SupportEval {
                    value: norm * value,
                    argmax,
                })
            }
            ConvexBody::BallIntersection(b) => {
                let u = p.scale(1.0 / norm);
                let (value, argmax) = b.support_eval(&u)?;
                Ok(SupportEval {
                    value: norm * value,
                    argmax,
                })
            }
            ConvexBody::MinkowskiSum { left, right } => {
                let l = left.support_argmax(p)?;
                let r = right.support_argmax(p)?;
                Ok(SupportEval {
                    value: l.value + r.value,
                    argmax: l.argmax.add(&r.argmax),
                })
            }
            ConvexBody::Translate { inner, shift } => {
                let e = inner.support_argmax(p)?;
                Ok(SupportEval {
                    value: e.value + p.dot(shift),
                    argmax: e.argmax.add(shift),
                })
            }
            ConvexBody::HPolytopeBody { halfspaces } => {
                let lp = LinearProgram::new(
                    p.coords().to_vec(),
                    halfspaces
                        .iter()
                        .map(|(a, b)| (a.coords().to_vec(), *b))
                        .collect(),
                )?;
                match solve_max(&lp)? {
                    LpOutcome::Optimal { x, value } => Ok(SupportEval {
                        value,
                        argmax: Vector::from_slice(&x)?,
                    }),
                    other => Err(Error::EvaluationFailure(format!(
                        "polytope support query returned {other:?}"
                    ))),
                }
            }
        }
    }

    /// `sup {|x - y| : x, y in body}`. Closed form for balls and ellipsoids,
    /// a width sweep (`s(p) + s(-p)`) otherwise.
    pub fn diameter(&self) -> Result<f64> {
        match self {
            ConvexBody::Ball { radius, .. } => Ok(2.0 * radius),
            ConvexBody::Ellipsoid { semi_axes, .. } => {
                Ok(2.0 * semi_axes.iter().fold(0.0f64, |a, b| a.max(*b)))
            }
            ConvexBody::Translate { inner, .. } => inner.diameter(),
            _ => {
                if self.dim() == 2 {
                    // The width is piecewise smooth with kinks where the
                    // maximizer jumps; refine several local peaks.
                    let (_, w) = max_on_circle_peaks(
                        |t| {
                            let p = Vector::from_angle(t);
                            self.support(&p).unwrap_or(f64::NEG_INFINITY)
                                + self.support(&p.neg()).unwrap_or(f64::NEG_INFINITY)
                        },
                        4096,
                        6,
                    );
                    Ok(w)
                } else {
                    let (_, w) = max_on_sphere(
                        |p| {
                            self.support(p).unwrap_or(f64::NEG_INFINITY)
                                + self.support(&p.neg()).unwrap_or(f64::NEG_INFINITY)
                        },
                        60,
                    );
                    Ok(w)
                }
            }
        }
    }

    /// Euclidean distance from `x` to the body; zero for members.
    pub fn distance(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        match self {
            ConvexBody::Ball { center, radius } => Ok((x.dist(center) - radius).max(0.0)),
            ConvexBody::Translate { inner, shift } => inner.distance(&x.sub(shift)),
            ConvexBody::PowerCap(cap) => Ok(power_cap_distance(cap, x)),
            _ => self.dual_distance(x),
        }
    }

    /// Dual-form distance `max_p ((p,x) - s(p, body))_+` over unit `p`.
    fn dual_distance(&self, x: &Vector) -> Result<f64> {
        if self.dim() == 2 {
            let (_, v) = max_on_circle(
                |t| {
                    let p = Vector::from_angle(t);
                    p.dot(x) - self.support(&p).unwrap_or(f64::INFINITY)
                },
                256,
            );
            Ok(v.max(0.0))
        } else {
            let (_, v) = max_on_sphere(|p| p.dot(x) - self.support(p).unwrap_or(f64::INFINITY), 60);
            Ok(v.max(0.0))
        }
    }

    /// Membership within the given tolerance.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }
}

fn unit_axis(dim: usize, i: usize) -> Vector {
    let mut coords = [0.0; 3];
    coords[i] = 1.0;
    Vector::from_slice(&coords[..dim]).expect("axis")
}

/// Support value and maximizer of the power cap for a unit direction.
///
/// The boundary splits into the curve `y = |x|^s`, `|x| <= x_star`, and the
/// circular arc between the junction angles. On the curve the objective is
/// strictly concave when `u_y < 0` and convex otherwise, so either a
/// golden-section pass or the endpoint evaluation is exact; the arc objective
/// is a cosine over an interval shorter than pi.
fn power_cap_eval(cap: &PowerCap, u: &Vector) -> (f64, Vector) {
    let (ux, uy) = (u.get(0), u.get(1));
    let mut best_val = f64::NEG_INFINITY;
    let mut best_pt = Vector::new2(0.0, 0.0);
    let mut consider = |x: f64, y: f64, val: f64| {
        if val > best_val {
            best_val = val;
            best_pt = Vector::new2(x, y);
        }
    };

    let corner = cap.x_star;
    let cy = cap.curve_y(corner);
    consider(corner, cy, ux * corner + uy * cy);
    consider(-corner, cy, -ux * corner + uy * cy);

    if uy < 0.0 {
        let (x, val) = golden_max(|x| ux * x + uy * cap.curve_y(x), -corner, corner, 90);
        consider(x, cap.curve_y(x), val);
        // The apex is the only boundary kink; golden section brackets it but
        // evaluating it directly removes the residual interval error.
        consider(0.0, 0.0, 0.0);
    }

    let (theta, val) = golden_max(
        |t| ux * t.cos() + uy * t.sin(),
        cap.theta_star,
        std::f64::consts::PI - cap.theta_star,
        90,
    );
    consider(theta.cos(), theta.sin(), val);

    (best_val, best_pt)
}

/// Exact distance to the power cap: nearest-point candidates on the curve,
/// on the arc, and at the junction corners.
fn power_cap_distance(cap: &PowerCap, x: &Vector) -> f64 {
    let (px, py) = (x.get(0), x.get(1));
    if py >= cap.curve_y(px) - 1e-15 && x.norm_sq() <= 1.0 + 1e-15 {
        return 0.0;
    }
    let corner = cap.x_star;
    let cy = cap.curve_y(corner);
    let mut best = x
        .dist(&Vector::new2(corner, cy))
        .min(x.dist(&Vector::new2(-corner, cy)));

    // Curve candidate: coarse scan plus golden refinement on the squared
    // distance (the half with the same sign as px suffices by symmetry, but
    // scanning the full range is cheap and avoids sign special cases).
    let d2 = |t: f64| {
        let dy = cap.curve_y(t) - py;
        (t - px) * (t - px) + dy * dy
    };
    let m = 129;
    let mut best_t = -corner;
    let mut best_d2 = f64::INFINITY;
    for k in 0..=m {
        let t = -corner + 2.0 * corner * k as f64 / m as f64;
        let v = d2(t);
        if v < best_d2 {
            best_d2 = v;
            best_t = t;
        }
    }
    let span = 2.0 * corner / m as f64;
    let (_, v) = golden_min(d2, best_t - span, best_t + span, 90);
    best = best.min(v.max(0.0).sqrt()).min(best_d2.max(0.0).sqrt());

    // Arc candidate: radial projection with the angle clamped to the arc.
    let ang = py.atan2(px);
    let lo = cap.theta_star;
    let hi = std::f64::consts::PI - cap.theta_star;
    if ang >= lo && ang <= hi {
        best = best.min((x.norm() - 1.0).abs());
    }
    best
}

/// Outward unit normals of the power cap at the symmetric boundary points
/// `(+-eps/2, (eps/2)^s)`, and the chord between them. Closed form.
pub fn power_cap_normals(exponent: f64, eps: f64) -> (Vector, Vector, f64) {
    let g = exponent * (eps / 2.0).powf(exponent - 1.0);
    let denom = (g * g + 1.0).sqrt();
    let p_b = Vector::new2(g / denom, -1.0 / denom);
    let p_a = Vector::new2(-g / denom, -1.0 / denom);
    (p_a, p_b, 2.0 * g / denom)
}

/// Anything that exposes a supporting function.
pub trait Supportable {
    fn sdim(&self) -> usize;
    fn support_value(&self, p: &Vector) -> Result<f64>;
}

impl Supportable for ConvexBody {
    fn sdim(&self) -> usize {
        self.dim()
    }

    fn support_value(&self, p: &Vector) -> Result<f64> {
        self.support(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_support_is_radius_on_unit_dirs() {
        let b = ConvexBody::ball(Vector::zero(2), 1.5).unwrap();
        for k in 0..32 {
            let p = Vector::from_angle(0.1 + k as f64);
            assert!((b.support(&p).unwrap() - 1.5).abs() < 1e-12);
        }
        assert_eq!(b.support(&Vector::zero(2)).unwrap(), 0.0);
    }

    #[test]
    fn minkowski_support_is_additive() {
        let a = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let c = Vector::new2(0.7, -0.4);
        let b = ConvexBody::ball(c, 2.0).unwrap();
        let s = ConvexBody::minkowski_sum(a, b).unwrap();
        let p = Vector::new2(3.0, 4.0);
        let expect = p.norm() + (p.dot(&c) + 2.0 * p.norm());
        assert!((s.support(&p).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn power_cap_top_and_bottom() {
        let cap = ConvexBody::power_cap(2.0).unwrap();
        let up = cap.support(&Vector::new2(0.0, 1.0)).unwrap();
        assert!((up - 1.0).abs() < 1e-10, "support up {up}");
        let ev = cap.support_argmax(&Vector::new2(0.0, -1.0)).unwrap();
        assert!(ev.value.abs() < 1e-10);
        assert!(ev.argmax.norm() < 1e-6, "apex argmax {}", ev.argmax);
    }

    #[test]
    fn argmax_on_sphere_and_axis() {
        let b = ConvexBody::ball(Vector::new2(0.3, -0.2), 2.0).unwrap();
        let p = Vector::new2(-1.0, 2.0);
        let ev = b.support_argmax(&p).unwrap();
        let want = Vector::new2(0.3, -0.2).add(&p.scale(2.0 / p.norm()));
        assert!(ev.argmax.dist(&want) < 1e-12);

        let e = ConvexBody::ellipsoid_axes(&[2.0, 1.0]).unwrap();
        let ev = e.support_argmax(&Vector::new2(1.0, 0.0)).unwrap();
        assert!(ev.argmax.dist(&Vector::new2(2.0, 0.0)) < 1e-12);
        assert!((ev.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_direction_rejected_for_argmax() {
        let b = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        assert!(matches!(
            b.support_argmax(&Vector::zero(2)),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let b = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        assert!(matches!(
            b.support(&Vector::new3(1.0, 0.0, 0.0)),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn diameters() {
        let b = ConvexBody::ball(Vector::new2(3.0, 1.0), 1.5).unwrap();
        assert_eq!(b.diameter().unwrap(), 3.0);
        let e = ConvexBody::ellipsoid_axes(&[2.0, 1.0]).unwrap();
        assert_eq!(e.diameter().unwrap(), 4.0);
    }

    #[test]
    fn distances() {
        let b = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        assert!((b.distance(&Vector::new2(2.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(b.distance(&Vector::new2(0.2, 0.1)).unwrap(), 0.0);
        let x = Vector::new2(1.0 / (std::f64::consts::PI / 16.0).cos(), 0.0);
        assert!((b.distance(&x).unwrap() - 0.019591158).abs() < 1e-8);
    }

    #[test]
    fn ball_intersection_of_one_ball_matches_ball() {
        let bi = ConvexBody::ball_intersection(vec![Vector::zero(2)], 1.0).unwrap();
        let res = match &bi {
            ConvexBody::BallIntersection(b) => b.support_resolution(),
            _ => unreachable!(),
        };
        assert!(res < 1e-5, "resolution {res}");
        for k in 0..64 {
            let p = Vector::from_angle(0.05 + k as f64 * 0.097);
            let v = bi.support(&p).unwrap();
            assert!((v - 1.0).abs() <= res + 1e-12, "support {v} at {k}");
            assert!(v >= 1.0 - 1e-12, "fan support must stay outer");
        }
    }

    #[test]
    fn empty_ball_intersection_rejected() {
        let r = ConvexBody::ball_intersection(
            vec![Vector::new2(-2.0, 0.0), Vector::new2(2.0, 0.0)],
            1.0,
        );
        assert!(matches!(r, Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn power_cap_normal_formula_matches_finite_differences() {
        for &(s, eps) in &[(2.0, 0.1), (3.0, 0.25), (2.5, 0.3)] {
            let (pa, pb, gap) = power_cap_normals(s, eps);
            // Tangent by central differences on the curve at x = eps/2.
            let x = eps / 2.0;
            let h = 1e-7;
            let dy = ((x + h).powf(s) - (x - h).powf(s)) / (2.0 * h);
            let n = Vector::new2(dy, -1.0).normalized().unwrap();
            assert!(pb.dist(&n) < 1e-6, "s={s} eps={eps}");
            assert!((gap - pa.dist(&pb)).abs() < 1e-12);
        }
    }

    #[test]
    fn translate_rules() {
        let b = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let t = Vector::new2(5.0, -2.0);
        let moved = ConvexBody::translate(b, t).unwrap();
        let p = Vector::new2(0.6, 0.8);
        assert!((moved.support(&p).unwrap() - (1.0 + p.dot(&t))).abs() < 1e-12);
        let ev = moved.support_argmax(&p).unwrap();
        assert!(ev.argmax.dist(&t.add(&p)) < 1e-12);
    }
}
