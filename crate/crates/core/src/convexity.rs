//! Moduli of convexity and the error-bound calculators built on them.
//!
//! The modulus of a convex body maps a chord length to the largest ball
//! radius that fits around every midpoint of chords of that length. The
//! calculators here turn a modulus, a grid step and coarse geometric data
//! (inradius, outradius, diameter) into the approximation bounds, reporting
//! whether their hypotheses held rather than silently emitting numbers.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::numeric::min_on_circle;
use crate::vec::Vector;

/// Largest chord for which the power-law modulus is taken at face value.
const POWER_LAW_TRUST: f64 = 0.5;

#[derive(Clone, Debug)]
pub enum Modulus {
    /// Exact modulus of a radius-`R` ball: `R - sqrt(R^2 - eps^2/4)`.
    AnalyticBall { radius: f64 },
    /// `(eps/2)^s`, the small-chord modulus of the power cap.
    PowerLaw { exponent: f64 },
    /// Tabulated values with monotone correction; linear interpolation.
    NumericTable { eps: Vec<f64>, delta: Vec<f64> },
}

impl Modulus {
    /// Modulus value at chord length `eps`.
    pub fn eval(&self, eps: f64) -> Result<f64> {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::DomainError(format!("negative chord {eps}")));
        }
        match self {
            Modulus::AnalyticBall { radius } => {
                if eps > 2.0 * radius + 1e-12 {
                    return Err(Error::DomainError(format!(
                        "chord {eps} exceeds the ball diameter {}",
                        2.0 * radius
                    )));
                }
                let eps = eps.min(2.0 * radius);
                Ok(radius - (radius * radius - eps * eps / 4.0).max(0.0).sqrt())
            }
            Modulus::PowerLaw { exponent } => Ok((eps / 2.0).powf(*exponent)),
            Modulus::NumericTable { eps: xs, delta } => {
                let last = *xs.last().expect("nonempty table");
                if eps > last + 1e-12 {
                    return Err(Error::DomainError(format!(
                        "chord {eps} beyond the tabulated range {last}"
                    )));
                }
                let eps = eps.min(last);
                let k = xs.partition_point(|&x| x < eps);
                if k == 0 {
                    return Ok(delta[0]);
                }
                let (x0, x1) = (xs[k - 1], xs[k.min(xs.len() - 1)]);
                let (d0, d1) = (delta[k - 1], delta[k.min(xs.len() - 1)]);
                if (x1 - x0).abs() < 1e-300 {
                    return Ok(d0);
                }
                Ok(d0 + (d1 - d0) * (eps - x0) / (x1 - x0))
            }
        }
    }

    /// Supremum of chord lengths at which the modulus can be evaluated
    /// (infinite for the power law, whose formula extends formally).
    pub fn domain_end(&self) -> f64 {
        match self {
            Modulus::AnalyticBall { radius } => 2.0 * radius,
            Modulus::PowerLaw { .. } => f64::INFINITY,
            Modulus::NumericTable { eps, .. } => *eps.last().expect("nonempty table"),
        }
    }

    fn sup_value(&self) -> f64 {
        match self {
            Modulus::AnalyticBall { radius } => *radius,
            Modulus::PowerLaw { .. } => f64::INFINITY,
            Modulus::NumericTable { delta, .. } => *delta.last().expect("nonempty table"),
        }
    }
}

/// Modulus of a radius-`R` ball at chord `eps` (closed form).
pub fn modulus_ball(radius: f64, eps: f64) -> Result<f64> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidGeometry("radius must be positive".into()));
    }
    if !(0.0..=2.0 * radius + 1e-12).contains(&eps) {
        return Err(Error::DomainError(format!(
            "chord {eps} outside [0, {}]",
            2.0 * radius
        )));
    }
    Modulus::AnalyticBall { radius }.eval(eps)
}

/// Brute-force modulus of a planar strictly convex body.
///
/// Samples boundary points by their outward normal angle, closes each chord
/// of length `eps` by bisection along the boundary, and takes the smallest
/// midpoint clearance `min_p (s(p) - (p, m))`. The estimate converges to the
/// modulus from above as `samples` grows.
pub fn modulus_numeric(body: &ConvexBody, eps: f64, samples: usize) -> Result<f64> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "numeric modulus is planar only".into(),
        ));
    }
    let diam = body.diameter()?;
    if !(eps > 0.0 && eps < diam) {
        return Err(Error::DomainError(format!(
            "chord {eps} outside (0, {diam})"
        )));
    }
    let pts = boundary_samples(body, samples.max(16))?;
    modulus_from_boundary(body, &pts, eps)
}

fn boundary_samples(body: &ConvexBody, samples: usize) -> Result<Vec<(f64, Vector)>> {
    let tau = std::f64::consts::TAU;
    (0..samples)
        .map(|k| {
            let theta = tau * k as f64 / samples as f64;
            let ev = body.support_argmax(&Vector::from_angle(theta))?;
            Ok((theta, ev.argmax))
        })
        .collect()
}

fn modulus_from_boundary(body: &ConvexBody, pts: &[(f64, Vector)], eps: f64) -> Result<f64> {
    let n = pts.len();
    let tau = std::f64::consts::TAU;
    let mut best = f64::INFINITY;
    for (k, (theta0, x1)) in pts.iter().enumerate() {
        // First sampled boundary point at chord distance >= eps, walking
        // counterclockwise; the crossing is then pinched by bisection.
        let mut bracket = None;
        for step in 1..n {
            let j = (k + step) % n;
            if pts[j].1.dist(x1) >= eps {
                bracket = Some((
                    theta0 + tau * (step - 1) as f64 / n as f64,
                    theta0 + tau * step as f64 / n as f64,
                ));
                break;
            }
        }
        let Some((mut lo, mut hi)) = bracket else {
            continue;
        };
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let x = body.support_argmax(&Vector::from_angle(mid))?.argmax;
            if x.dist(x1) >= eps {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let x2 = body.support_argmax(&Vector::from_angle(hi))?.argmax;
        let m = x1.add(&x2).scale(0.5);
        let (_, clear) = min_on_circle(
            |t| {
                let p = Vector::from_angle(t);
                body.support(&p).unwrap_or(f64::INFINITY) - p.dot(&m)
            },
            128,
        );
        best = best.min(clear);
    }
    if best.is_infinite() {
        return Err(Error::DomainError(
            "no boundary pair at the requested chord length".into(),
        ));
    }
    Ok(best.max(0.0))
}

/// Tabulates the numeric modulus of a planar body on `points` chord lengths
/// with monotone (pool-adjacent-violators) correction.
pub fn modulus_table(body: &ConvexBody, points: usize, samples: usize) -> Result<Modulus> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "numeric modulus is planar only".into(),
        ));
    }
    if points < 2 {
        return Err(Error::InvalidInput("need at least two table points".into()));
    }
    let diam = body.diameter()?;
    let pts = boundary_samples(body, samples.max(16))?;
    let mut eps = Vec::with_capacity(points + 1);
    let mut delta = Vec::with_capacity(points + 1);
    eps.push(0.0);
    delta.push(0.0);
    for i in 1..=points {
        let e = diam * i as f64 / (points + 1) as f64;
        eps.push(e);
        delta.push(modulus_from_boundary(body, &pts, e)?);
    }
    isotonic(&mut delta);
    Ok(Modulus::NumericTable { eps, delta })
}

/// Pool-adjacent-violators: the least-squares nondecreasing correction.
fn isotonic(values: &mut [f64]) {
    let n = values.len();
    let mut level: Vec<f64> = Vec::with_capacity(n);
    let mut weight: Vec<f64> = Vec::with_capacity(n);
    for &v in values.iter() {
        level.push(v);
        weight.push(1.0);
        while level.len() > 1 {
            let m = level.len();
            if level[m - 2] <= level[m - 1] {
                break;
            }
            let w = weight[m - 2] + weight[m - 1];
            let v = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) / w;
            level.truncate(m - 1);
            weight.truncate(m - 1);
            *level.last_mut().unwrap() = v;
            *weight.last_mut().unwrap() = w;
        }
    }
    let mut k = 0usize;
    for (lv, w) in level.iter().zip(&weight) {
        for _ in 0..*w as usize {
            values[k] = *lv;
            k += 1;
        }
    }
}

/// Smallest `eps` with `delta(eps) >= t`, by bisection.
pub fn modulus_inverse(m: &Modulus, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::DomainError(format!("negative target {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let hi = match m {
        Modulus::PowerLaw { exponent } => 2.0 * t.powf(1.0 / exponent) + 1e-9,
        _ => {
            if t > m.sup_value() + 1e-12 {
                return Err(Error::OutOfRange(format!(
                    "target {t} exceeds the modulus supremum {}",
                    m.sup_value()
                )));
            }
            m.domain_end()
        }
    };
    let mut lo = 0.0f64;
    let mut hi = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if m.eval(mid)? >= t {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Solves `delta(eps)/eps = step/(4 - step^2)` on `(0, diam)`.
///
/// The ratio is nondecreasing, so the leftmost crossing is found by
/// bisection. Fails with `GridTooCoarse` when even the largest admissible
/// chord cannot reach the threshold.
pub fn epsilon_of_step(m: &Modulus, delta_step: f64, diam: f64) -> Result<f64> {
    if !(delta_step > 0.0 && delta_step < 0.5) {
        return Err(Error::InvalidInput(format!(
            "grid step {delta_step} outside (0, 1/2)"
        )));
    }
    if !(diam > 0.0 && diam.is_finite()) {
        return Err(Error::InvalidGeometry("diameter must be positive".into()));
    }
    let c = delta_step / (4.0 - delta_step * delta_step);
    let hi = diam.min(m.domain_end()) * (1.0 - 1e-12);
    let ratio_hi = m.eval(hi)? / hi;
    if ratio_hi <= c {
        return Err(Error::GridTooCoarse(format!(
            "delta(diam)/diam = {ratio_hi:.6e} <= step/(4 - step^2) = {c:.6e}"
        )));
    }
    let mut lo = hi * 1e-14;
    let mut hi = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if m.eval(mid)? / mid >= c {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-10 * diam.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A named bound value with its inputs and hypothesis status.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
    pub hypotheses_ok: bool,
    pub reasons: Vec<String>,
}

fn flag_power_law(m: &Modulus, eps: f64, report: &mut BoundReport) {
    if let Modulus::PowerLaw { .. } = m {
        if eps > POWER_LAW_TRUST {
            report.hypotheses_ok = false;
            report.reasons.push(format!(
                "power-law modulus extrapolated beyond chord {POWER_LAW_TRUST} (eps(step) = {eps:.6})"
            ));
        }
    }
}

/// `(8/7) * eps(step) * step`: the external-approximation error bound.
pub fn bound_main(m: &Modulus, delta_step: f64, diam: f64) -> Result<BoundReport> {
    let eps = epsilon_of_step(m, delta_step, diam)?;
    let mut report = BoundReport {
        name: "external-approx",
        inputs: vec![("step", delta_step), ("diam", diam), ("eps", eps)],
        value: 8.0 / 7.0 * eps * delta_step,
        hypotheses_ok: true,
        reasons: Vec::new(),
    };
    flag_power_law(m, eps, &mut report);
    Ok(report)
}

/// `(8d / (7 r0)) * eps_B(step) * step`: hull-gap bound for the difference
/// presupport, where `B_r0(a) ⊆ B ⊖ A ⊆ B_d(a)`.
pub fn bound_geomdiff(
    m_b: &Modulus,
    delta_step: f64,
    d: f64,
    r0: f64,
    diam_b: f64,
) -> Result<BoundReport> {
    if r0.is_nan() || d.is_nan() || r0 <= 0.0 || d < r0 {
        return Err(Error::InvalidGeometry(format!(
            "need 0 < r0 <= d, got r0 = {r0}, d = {d}"
        )));
    }
    let eps = epsilon_of_step(m_b, delta_step, diam_b)?;
    let mut report = BoundReport {
        name: "geometric-difference",
        inputs: vec![
            ("step", delta_step),
            ("d", d),
            ("r0", r0),
            ("diam_b", diam_b),
            ("eps_b", eps),
        ],
        value: 8.0 * d / (7.0 * r0) * eps * delta_step,
        hypotheses_ok: true,
        reasons: Vec::new(),
    };
    flag_power_law(m_b, eps, &mut report);
    Ok(report)
}

/// `(8/7)(max{eps_A, eps_B} + (d/r0)(eps_A + eps_B)) * step`: hull-gap bound
/// for the min presupport, with `B_r0(a) ⊆ A ∩ B` and `d` covering both
/// approximation diameters.
#[allow(clippy::too_many_arguments)]
pub fn bound_intersection(
    m_a: &Modulus,
    m_b: &Modulus,
    delta_step: f64,
    d: f64,
    r0: f64,
    diam_a: f64,
    diam_b: f64,
) -> Result<BoundReport> {
    if !(r0 > 0.0 && d > 0.0) {
        return Err(Error::InvalidGeometry(format!(
            "need positive r0 and d, got r0 = {r0}, d = {d}"
        )));
    }
    let eps_a = epsilon_of_step(m_a, delta_step, diam_a)?;
    let eps_b = epsilon_of_step(m_b, delta_step, diam_b)?;
    let mut report = BoundReport {
        name: "intersection",
        inputs: vec![
            ("step", delta_step),
            ("d", d),
            ("r0", r0),
            ("eps_a", eps_a),
            ("eps_b", eps_b),
        ],
        value: 8.0 / 7.0 * (eps_a.max(eps_b) + d / r0 * (eps_a + eps_b)) * delta_step,
        hypotheses_ok: true,
        reasons: Vec::new(),
    };
    flag_power_law(m_a, eps_a, &mut report);
    flag_power_law(m_b, eps_b, &mut report);
    Ok(report)
}

/// `max{2 r0, r0 + delta^{-1}(r0/2)}`: the outradius-from-inradius bound for
/// uniformly convex bodies.
pub fn bound_radius_ratio(m: &Modulus, r0: f64) -> Result<f64> {
    if r0.is_nan() || r0 <= 0.0 {
        return Err(Error::InvalidGeometry("inradius must be positive".into()));
    }
    let inv = modulus_inverse(m, r0 / 2.0)?;
    Ok((2.0 * r0).max(r0 + inv))
}

/// `2 (d + 4 d^2 step / r0)^2 step / R`: error bound of the radial inner-hull
/// algorithm.
pub fn bound_alg(d: f64, r0: f64, big_r: f64, delta_step: f64) -> Result<f64> {
    if !(d > 0.0 && r0 > 0.0 && big_r > 0.0) {
        return Err(Error::InvalidGeometry(format!(
            "need positive d, r0, R; got d = {d}, r0 = {r0}, R = {big_r}"
        )));
    }
    if !(delta_step > 0.0 && delta_step < 0.5) {
        return Err(Error::InvalidInput(format!(
            "grid step {delta_step} outside (0, 1/2)"
        )));
    }
    let t = d + 4.0 * d * d / r0 * delta_step;
    Ok(2.0 * t * t / big_r * delta_step)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    /// `2 h({0}, A) * step` for arbitrary convex compacta.
    General,
    /// `2 R step^2` for intersections of radius-`R` balls.
    BallIntersection,
}

/// The two classical step bounds.
pub fn classical_bound(h0_or_radius: f64, delta_step: f64, kind: ClassicalKind) -> Result<f64> {
    if !(h0_or_radius >= 0.0 && delta_step >= 0.0) {
        return Err(Error::InvalidGeometry(
            "classical bounds need nonnegative inputs".into(),
        ));
    }
    Ok(match kind {
        ClassicalKind::General => 2.0 * h0_or_radius * delta_step,
        ClassicalKind::BallIntersection => 2.0 * h0_or_radius * delta_step * delta_step,
    })
}

/// Writes `eps delta` rows with 17 significant digits. Analytic moduli are
/// sampled on `points` chords across their domain.
pub fn write_modulus_table(m: &Modulus, points: usize, out: &mut dyn Write) -> Result<()> {
    let rows: Vec<(f64, f64)> = match m {
        Modulus::NumericTable { eps, delta } => {
            eps.iter().copied().zip(delta.iter().copied()).collect()
        }
        _ => {
            let end = if m.domain_end().is_finite() {
                m.domain_end()
            } else {
                2.0
            };
            (0..=points)
                .map(|i| {
                    let e = end * i as f64 / points as f64;
                    Ok((e, m.eval(e)?))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    for (e, d) in rows {
        writeln!(out, "{e:.16e} {d:.16e}")
            .map_err(|e| Error::EvaluationFailure(format!("write failed: {e}")))?;
    }
    Ok(())
}

/// Reads a two-column `eps delta` table into a numeric modulus.
pub fn read_modulus_table(input: &mut dyn BufRead) -> Result<Modulus> {
    let mut eps = Vec::new();
    let mut delta = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::InvalidInput(format!("read failed: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::InvalidInput(format!(
                "line {}: expected two columns",
                lineno + 1
            )));
        };
        let e: f64 = a
            .parse()
            .map_err(|_| Error::InvalidInput(format!("line {}: bad number", lineno + 1)))?;
        let d: f64 = b
            .parse()
            .map_err(|_| Error::InvalidInput(format!("line {}: bad number", lineno + 1)))?;
        if let Some(&prev) = eps.last() {
            if e <= prev {
                return Err(Error::InvalidInput(format!(
                    "line {}: chord column must increase",
                    lineno + 1
                )));
            }
        }
        eps.push(e);
        delta.push(d);
    }
    if eps.len() < 2 {
        return Err(Error::InvalidInput("table needs at least two rows".into()));
    }
    isotonic(&mut delta);
    Ok(Modulus::NumericTable { eps, delta })
}

/// Numeric clearance helper shared by tests: distance from an interior point
/// to the boundary, `min_p (s(p) - (p, m))` over unit `p`.
pub fn clearance_2d(body: &ConvexBody, m: &Vector) -> Result<f64> {
    let (_, v) = min_on_circle(
        |t| {
            let p = Vector::from_angle(t);
            body.support(&p).unwrap_or(f64::INFINITY) - p.dot(m)
        },
        256,
    );
    Ok(v)
}

/// Closed-form solution of the step equation for the unit-ball modulus
/// family; used as a cross-check oracle for the bisection.
pub fn epsilon_of_step_ball(radius: f64, delta_step: f64) -> f64 {
    let c = delta_step / (4.0 - delta_step * delta_step);
    // (R - sqrt(R^2 - e^2/4))/e = c  =>  e = 8 c R / (1 + 4 c^2).
    8.0 * c * radius / (1.0 + 4.0 * c * c)
}
