//! Experiment drivers: convergence sweeps, the exactness-order construction,
//! hull-gap measurements for difference and intersection presupports, the
//! radial inner-hull runs, and the radius-ratio measurement.
//!
//! Every driver is deterministic: direction sets are golden-angle or uniform
//! sequences, and multi-threaded fan-out writes into per-row slots so the
//! output is independent of the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use polyapprox::convexity::{
    bound_alg, bound_geomdiff, bound_intersection, bound_main, bound_radius_ratio, classical_bound,
    modulus_table, ClassicalKind, Modulus,
};
use polyapprox::{
    approx_hull_recentered, chebyshev_ball, co_value, external_approx, grid_uniform_2d,
    hausdorff_by_support, hausdorff_outer_2d, power_cap_normals, presupport_diff, presupport_min,
    restrict, restrict_body, vertices_2d, ConvexBody, Error, Grid, HPolytope, Result, SupportFn,
    Vector,
};

/// One CSV row of an experiment.
#[derive(Clone, Debug)]
pub struct ExperimentRow {
    pub n: usize,
    pub delta_step: f64,
    pub h_measured: f64,
    pub h_resolution: f64,
    pub bound_main: f64,
    pub bound_classical: f64,
    pub hyp_ok: bool,
    pub runtime_ms: u128,
}

/// 12 significant digits, fixed scientific layout.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub const CSV_HEADER: &str =
    "N,delta_step,h_measured,h_resolution,bound_main,bound_classical,hyp_ok,runtime_ms";

/// Renders rows as CSV. Wall-clock timings vary between runs, so they are
/// zeroed unless explicitly requested; the emitted bytes are then a pure
/// function of the inputs.
pub fn rows_to_csv(rows: &[ExperimentRow], timings: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ms = if timings { r.runtime_ms } else { 0 };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            sig12(r.delta_step),
            sig12(r.h_measured),
            sig12(r.h_resolution),
            sig12(r.bound_main),
            sig12(r.bound_classical),
            r.hyp_ok,
            ms
        ));
    }
    out
}

/// Runs jobs over a fixed-size pool, preserving slot order.
pub fn fan_out<T, F>(jobs: Vec<F>, threads: usize) -> Vec<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let threads = threads.max(1);
    if threads == 1 || jobs.len() <= 1 {
        return jobs.into_iter().map(|j| j()).collect();
    }
    let n = jobs.len();
    let slots: Vec<Mutex<Option<T>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let queue: Vec<Mutex<Option<F>>> = jobs.into_iter().map(|j| Mutex::new(Some(j))).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(n) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let job = queue[k].lock().unwrap().take().expect("job taken once");
                *slots[k].lock().unwrap() = Some(job());
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("job completed"))
        .collect()
}

/// `m` unit directions from the golden-angle sequence.
pub fn golden_dirs(m: usize) -> Vec<Vector> {
    let inv_phi = 0.618_033_988_749_894_9f64;
    (0..m)
        .map(|k| Vector::from_angle(std::f64::consts::TAU * (k as f64 * inv_phi).fract()))
        .collect()
}

/// `h({0}, A)`: the farthest point norm, via a uniform support sweep.
pub fn outradius_2d(body: &ConvexBody) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for k in 0..4096 {
        let p = Vector::from_angle(std::f64::consts::TAU * k as f64 / 4096.0);
        best = best.max(body.support(&p)?);
    }
    Ok(best.max(0.0))
}

/// A modulus of convexity appropriate for the body: closed form for balls
/// and power caps, a numeric table for other planar strictly convex bodies,
/// and `None` for polytopes (whose modulus vanishes).
pub fn modulus_for_body(body: &ConvexBody) -> Result<Option<Modulus>> {
    Ok(match body {
        ConvexBody::Ball { radius, .. } => Some(Modulus::AnalyticBall { radius: *radius }),
        ConvexBody::PowerCap(cap) => Some(Modulus::PowerLaw {
            exponent: cap.exponent(),
        }),
        ConvexBody::Translate { inner, .. } => modulus_for_body(inner)?,
        ConvexBody::HPolytopeBody { .. } => None,
        _ if body.dim() == 2 => Some(modulus_table(body, 160, 360)?),
        _ => None,
    })
}

fn grid_hat(body: &ConvexBody, n: usize) -> Result<(Grid, HPolytope)> {
    let grid = grid_uniform_2d(n)?;
    let hat = external_approx(body, &grid)?;
    Ok((grid, hat))
}

/// Convergence of the external approximation: exact planar error per grid
/// size against the step bound and the applicable classical bound.
pub fn convergence_rows(
    body: &ConvexBody,
    modulus: Option<&Modulus>,
    ns: &[usize],
    threads: usize,
) -> Result<Vec<ExperimentRow>> {
    let owned;
    let modulus = match modulus {
        Some(m) => Some(m),
        None => {
            owned = modulus_for_body(body)?;
            owned.as_ref()
        }
    };
    let diam = body.diameter()?;
    let h0 = outradius_2d(body)?;
    let jobs: Vec<_> = ns
        .iter()
        .map(|&n| {
            let body = body.clone();
            let modulus = modulus.cloned();
            move || -> Result<ExperimentRow> {
                let start = Instant::now();
                let (grid, hat) = grid_hat(&body, n)?;
                let h = hausdorff_outer_2d(&hat, &body)?;
                let (bound, hyp_ok) = match &modulus {
                    Some(m) => match bound_main(m, grid.step(), diam) {
                        Ok(r) => (r.value, r.hypotheses_ok),
                        Err(Error::GridTooCoarse(_)) => (f64::NAN, false),
                        Err(e) => return Err(e),
                    },
                    None => (f64::NAN, false),
                };
                let classical = match &body {
                    ConvexBody::BallIntersection(b) => {
                        classical_bound(b.radius(), grid.step(), ClassicalKind::BallIntersection)?
                    }
                    _ => classical_bound(h0, grid.step(), ClassicalKind::General)?,
                };
                Ok(ExperimentRow {
                    n,
                    delta_step: grid.step(),
                    h_measured: h.value,
                    h_resolution: h.resolution,
                    bound_main: bound,
                    bound_classical: classical,
                    hyp_ok,
                    runtime_ms: start.elapsed().as_millis(),
                })
            }
        })
        .collect();
    fan_out(jobs, threads).into_iter().collect()
}

/// Result of the exactness-order experiment.
#[derive(Clone, Debug)]
pub struct Exactness {
    pub rows: Vec<ExperimentRow>,
    /// Per-row analytic lower bound `(s-1)(eps/2)^s`.
    pub lower_bounds: Vec<f64>,
    /// Log-log regression slope of measured error against the normal gap.
    pub slope: f64,
}

/// Sharp-order construction: a symmetric direction set whose dominant gap is
/// the chord between the two cap normals at the symmetric chord endpoints.
///
/// The uniform base is fine enough that its own contribution stays below 2%
/// of the expected junction-vertex error, directions strictly between the
/// two normals are removed so the normals become adjacent, and the base size
/// is a multiple of four to keep the set mirror-symmetric.
pub fn exactness(s: f64, eps_list: &[f64], threads: usize) -> Result<Exactness> {
    if s.is_nan() || s < 2.0 {
        return Err(Error::InvalidInput("exponent must satisfy s >= 2".into()));
    }
    let cap = ConvexBody::power_cap(s)?;
    let jobs: Vec<_> = eps_list
        .iter()
        .map(|&eps| {
            let cap = cap.clone();
            move || -> Result<(ExperimentRow, f64)> {
                let start = Instant::now();
                let (pa, pb, gap) = power_cap_normals(s, eps);
                let theta_a = pa.angle();
                let theta_b = pb.angle();
                let lower = (s - 1.0) * (eps / 2.0).powf(s);
                let base = exactness_base_n(gap, lower);
                let tau = std::f64::consts::TAU;
                let mut angles: Vec<f64> = (0..base)
                    .map(|k| tau * k as f64 / base as f64)
                    .filter(|&a| a <= theta_a + 1e-15 || a >= theta_b - 1e-15)
                    .collect();
                angles.push(theta_a);
                angles.push(theta_b);
                angles.sort_by(f64::total_cmp);
                angles.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
                let halfspaces: Result<Vec<(Vector, f64)>> = angles
                    .iter()
                    .map(|&a| {
                        let p = Vector::from_angle(a);
                        Ok((p, cap.support(&p)?))
                    })
                    .collect();
                let hat = HPolytope::new(halfspaces?)?;
                let h = hausdorff_outer_2d(&hat, &cap)?;
                let step_ok = gap < 0.5;
                let modulus = Modulus::PowerLaw { exponent: s };
                let (bound, bound_ok) = if step_ok {
                    match bound_main(&modulus, gap, cap.diameter()?) {
                        Ok(r) => (r.value, r.hypotheses_ok),
                        Err(Error::GridTooCoarse(_)) => (f64::NAN, false),
                        Err(e) => return Err(e),
                    }
                } else {
                    (f64::NAN, false)
                };
                let classical = classical_bound(1.0, gap, ClassicalKind::General)?;
                Ok((
                    ExperimentRow {
                        n: base,
                        delta_step: gap,
                        h_measured: h.value,
                        h_resolution: h.resolution,
                        bound_main: bound,
                        bound_classical: classical,
                        hyp_ok: step_ok && bound_ok,
                        runtime_ms: start.elapsed().as_millis(),
                    },
                    lower,
                ))
            }
        })
        .collect();
    let results: Result<Vec<(ExperimentRow, f64)>> = fan_out(jobs, threads).into_iter().collect();
    let results = results?;
    let rows: Vec<ExperimentRow> = results.iter().map(|(r, _)| r.clone()).collect();
    let lower_bounds: Vec<f64> = results.iter().map(|(_, l)| *l).collect();
    let slope = log_log_slope(
        &rows.iter().map(|r| r.delta_step).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.h_measured).collect::<Vec<_>>(),
    );
    Ok(Exactness {
        rows,
        lower_bounds,
        slope,
    })
}

fn exactness_base_n(gap: f64, expected_h: f64) -> usize {
    let pi = std::f64::consts::PI;
    let chord_cap = (gap.min(0.49) / 2.0).asin();
    let fine_for_gap = (pi / chord_cap).ceil() as usize;
    let fine_for_error = (pi / (0.02 * expected_h).sqrt()).ceil() as usize;
    let n = 64usize.max(fine_for_gap).max(fine_for_error);
    n + (4 - n % 4) % 4
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// A presupport hull-gap run against a reference: extremes of
/// `co-value - reference` over the verification directions.
#[derive(Clone, Debug)]
pub struct GapRow {
    pub n: usize,
    pub delta_step: f64,
    pub min_gap: f64,
    pub max_gap: f64,
    /// Max gap restricted to the run-grid directions.
    pub grid_dir_max_gap: f64,
    pub bound_value: f64,
    pub hyp_ok: bool,
    pub reference_resolution: f64,
    pub runtime_ms: u128,
}

impl GapRow {
    pub fn to_experiment_row(&self) -> ExperimentRow {
        ExperimentRow {
            n: self.n,
            delta_step: self.delta_step,
            h_measured: self.max_gap,
            h_resolution: self.reference_resolution,
            bound_main: self.bound_value,
            bound_classical: f64::NAN,
            hyp_ok: self.hyp_ok,
            runtime_ms: self.runtime_ms,
        }
    }
}

pub enum DiffCase {
    /// `B = Ball(0, 2)`, `A = Ball(0, 0.5)`: the difference is `Ball(0, 1.5)`
    /// with a closed-form reference.
    ConcentricBalls,
    /// `B = Ellipsoid(2, 1)`, `A = Ball(0, 0.3)`: reference from a fine grid.
    EllipsoidBall,
}

/// Hull-gap measurement for the difference presupport `s(p,B) - s(p,A)`.
pub fn geomdiff_rows(
    case: &DiffCase,
    modulus_b: Option<&Modulus>,
    ns: &[usize],
    num_dirs: usize,
    threads: usize,
) -> Result<Vec<GapRow>> {
    let (body_b, body_a) = match case {
        DiffCase::ConcentricBalls => (
            ConvexBody::ball(Vector::zero(2), 2.0)?,
            ConvexBody::ball(Vector::zero(2), 0.5)?,
        ),
        DiffCase::EllipsoidBall => (
            ConvexBody::ellipsoid_axes(&[2.0, 1.0])?,
            ConvexBody::ball(Vector::zero(2), 0.3)?,
        ),
    };
    let owned;
    let modulus_b = match modulus_b {
        Some(m) => m.clone(),
        None => {
            owned = modulus_for_body(&body_b)?
                .ok_or_else(|| Error::InvalidGeometry("difference body needs a modulus".into()))?;
            owned
        }
    };
    let diam_b = body_b.diameter()?;
    let f = presupport_diff(&body_b, &body_a)?;
    let dirs = golden_dirs(num_dirs);
    // Reference support of the difference set: closed form for concentric
    // balls, fine-grid hull values otherwise (which overshoot the true
    // support by at most the circumscription factor of the fine step).
    let fine_gf = match case {
        DiffCase::ConcentricBalls => None,
        DiffCase::EllipsoidBall => Some(restrict(&f, &grid_uniform_2d(4096)?)?),
    };
    let reference_resolution = match case {
        DiffCase::ConcentricBalls => 0.0,
        DiffCase::EllipsoidBall => (1.0 / (std::f64::consts::PI / 4096.0).cos() - 1.0) * diam_b,
    };
    run_gap_rows(GapJob {
        f,
        dirs,
        reference_fn: move |p: &Vector| match &fine_gf {
            None => Ok(1.5 * p.norm()),
            Some(gf) => co_value(gf, p),
        },
        reference_resolution,
        ns,
        threads,
        bound: move |step, d, r0| {
            bound_geomdiff(&modulus_b, step, d, r0, diam_b).map(|r| (r.value, r.hypotheses_ok))
        },
        d_from: DFrom::Reference,
    })
}

/// Hull-gap measurement for the min presupport of two unit balls at
/// `(+-offset, 0)`.
pub fn intersection_rows(
    offset: f64,
    ns: &[usize],
    num_dirs: usize,
    threads: usize,
) -> Result<Vec<GapRow>> {
    let a = ConvexBody::ball(Vector::new2(-offset, 0.0), 1.0)?;
    let b = ConvexBody::ball(Vector::new2(offset, 0.0), 1.0)?;
    let f = presupport_min(&a, &b)?;
    let dirs = golden_dirs(num_dirs);
    let gf_fine = restrict(&f, &grid_uniform_2d(4096)?)?;
    let sec = 1.0 / (std::f64::consts::PI / 4096.0).cos();
    let reference_resolution = (sec - 1.0) * 2.0;
    let m_ball = Modulus::AnalyticBall { radius: 1.0 };
    let a2 = a.clone();
    let b2 = b.clone();
    run_gap_rows(GapJob {
        f,
        dirs,
        reference_fn: move |p: &Vector| co_value(&gf_fine, p),
        reference_resolution,
        ns,
        threads,
        bound: move |step, d, r0| {
            bound_intersection(&m_ball, &m_ball, step, d, r0, 2.0, 2.0)
                .map(|r| (r.value, r.hypotheses_ok))
        },
        d_from: DFrom::ApproxDiameters(Box::new(a2), Box::new(b2)),
    })
}

enum DFrom {
    /// `d` = max over verification dirs of `ref(p) - (p, center)`.
    Reference,
    /// `d` = max diameter of the two external approximations.
    ApproxDiameters(Box<ConvexBody>, Box<ConvexBody>),
}

struct GapJob<'a, FB, FR>
where
    FB: Fn(f64, f64, f64) -> Result<(f64, bool)> + Sync,
    FR: Fn(&Vector) -> Result<f64> + Sync,
{
    f: SupportFn,
    dirs: Vec<Vector>,
    /// Reference support of the represented set at any unit direction.
    reference_fn: FR,
    reference_resolution: f64,
    ns: &'a [usize],
    threads: usize,
    bound: FB,
    d_from: DFrom,
}

fn run_gap_rows<FB, FR>(job: GapJob<'_, FB, FR>) -> Result<Vec<GapRow>>
where
    FB: Fn(f64, f64, f64) -> Result<(f64, bool)> + Sync,
    FR: Fn(&Vector) -> Result<f64> + Sync,
{
    let GapJob {
        f,
        dirs,
        reference_fn,
        reference_resolution,
        ns,
        threads,
        bound,
        d_from,
    } = job;
    let reference: Result<Vec<f64>> = dirs.iter().map(&reference_fn).collect();
    let reference = reference?;
    let bound = &bound;
    let reference_fn = &reference_fn;
    let f = &f;
    let dirs = &dirs;
    let reference = &reference;
    let d_from = &d_from;
    let jobs: Vec<_> = ns
        .iter()
        .map(|&n| {
            move || -> Result<GapRow> {
                let start = Instant::now();
                let grid = grid_uniform_2d(n)?;
                let gf = restrict(f, &grid)?;
                let halfspaces: Vec<(Vector, f64)> = grid
                    .dirs()
                    .iter()
                    .zip(gf.values())
                    .map(|(p, v)| (*p, *v))
                    .collect();
                let (center, r0) = chebyshev_ball(&halfspaces)?;
                let d = match d_from {
                    DFrom::Reference => dirs
                        .iter()
                        .zip(reference)
                        .map(|(p, r)| r - p.dot(&center))
                        .fold(f64::NEG_INFINITY, f64::max),
                    DFrom::ApproxDiameters(a, b) => {
                        let da = polygon_diameter(&external_approx(a, &grid)?)?;
                        let db = polygon_diameter(&external_approx(b, &grid)?)?;
                        da.max(db)
                    }
                };
                let (bound_value, hyp_ok) = bound(grid.step(), d, r0)?;
                let mut min_gap = f64::INFINITY;
                let mut max_gap = f64::NEG_INFINITY;
                for (p, r) in dirs.iter().zip(reference) {
                    let gap = co_value(&gf, p)? - r;
                    min_gap = min_gap.min(gap);
                    max_gap = max_gap.max(gap);
                }
                // Hull value against the represented set's support at the
                // run-grid directions themselves.
                let mut grid_dir_max_gap = f64::NEG_INFINITY;
                for p in grid.dirs() {
                    let gap = co_value(&gf, p)? - reference_fn(p)?;
                    grid_dir_max_gap = grid_dir_max_gap.max(gap);
                }
                Ok(GapRow {
                    n,
                    delta_step: grid.step(),
                    min_gap,
                    max_gap,
                    grid_dir_max_gap,
                    bound_value,
                    hyp_ok,
                    reference_resolution,
                    runtime_ms: start.elapsed().as_millis(),
                })
            }
        })
        .collect();
    fan_out(jobs, threads).into_iter().collect()
}

/// Max pairwise vertex distance of a planar polytope.
pub fn polygon_diameter(hp: &HPolytope) -> Result<f64> {
    let vp = vertices_2d(hp)?;
    let vs = vp.vertices();
    let mut best = 0.0f64;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            best = best.max(vs[i].dist(&vs[j]));
        }
    }
    Ok(best)
}

/// One inner-hull (radial algorithm) run.
#[derive(Clone, Debug)]
pub struct InnerHullRow {
    pub n: usize,
    pub delta_step: f64,
    pub h: f64,
    pub h_resolution: f64,
    pub bound: f64,
    /// Largest distance from a produced vertex to the body.
    pub max_vertex_dist: f64,
    pub r_inscribed: f64,
    pub runtime_ms: u128,
}

impl InnerHullRow {
    pub fn to_experiment_row(&self) -> ExperimentRow {
        ExperimentRow {
            n: self.n,
            delta_step: self.delta_step,
            h_measured: self.h,
            h_resolution: self.h_resolution,
            bound_main: self.bound,
            bound_classical: f64::NAN,
            hyp_ok: true,
            runtime_ms: self.runtime_ms,
        }
    }
}

/// Inradius and eccentricity data measured on a fine grid: the inscribed
/// ball `(a, r0)` of the fine approximation and `d = sup (s(p) - (p, a))`.
pub fn measure_inball(body: &ConvexBody, fine_n: usize) -> Result<(Vector, f64, f64)> {
    let grid = grid_uniform_2d(fine_n)?;
    let gf = restrict_body(body, &grid)?;
    let halfspaces: Vec<(Vector, f64)> = grid
        .dirs()
        .iter()
        .zip(gf.values())
        .map(|(p, v)| (*p, *v))
        .collect();
    let (center, r0) = chebyshev_ball(&halfspaces)?;
    let mut d = f64::NEG_INFINITY;
    for k in 0..4096 {
        let p = Vector::from_angle(std::f64::consts::TAU * k as f64 / 4096.0);
        d = d.max(body.support(&p)? - p.dot(&center));
    }
    Ok((center, r0, d))
}

/// Runs the radial inner-hull algorithm on external support data.
pub fn inner_hull_rows(
    body: &ConvexBody,
    ns: &[usize],
    threads: usize,
) -> Result<Vec<InnerHullRow>> {
    let (_, r0, d) = measure_inball(body, 1024)?;
    let jobs: Vec<_> = ns
        .iter()
        .map(|&n| {
            let body = body.clone();
            move || -> Result<InnerHullRow> {
                let start = Instant::now();
                let grid = grid_uniform_2d(n)?;
                let gf = restrict_body(&body, &grid)?;
                let halfspaces: Vec<(Vector, f64)> = grid
                    .dirs()
                    .iter()
                    .zip(gf.values())
                    .map(|(p, v)| (*p, *v))
                    .collect();
                let (_, big_r) = chebyshev_ball(&halfspaces)?;
                let (inner, _) = approx_hull_recentered(&gf)?;
                let mut max_vertex_dist = 0.0f64;
                for z in inner.vertices() {
                    max_vertex_dist = max_vertex_dist.max(body.distance(z)?);
                }
                let h = hausdorff_by_support(&body, &inner, 100_000)?;
                let bound = bound_alg(d, r0, big_r, grid.step())?;
                Ok(InnerHullRow {
                    n,
                    delta_step: grid.step(),
                    h: h.value,
                    h_resolution: h.resolution,
                    bound,
                    max_vertex_dist,
                    r_inscribed: big_r,
                    runtime_ms: start.elapsed().as_millis(),
                })
            }
        })
        .collect();
    fan_out(jobs, threads).into_iter().collect()
}

/// Radius-ratio measurement: inscribed ball of a fine approximation, the
/// eccentricity `d`, and the modulus bound on `d`.
#[derive(Clone, Debug)]
pub struct RadiusReport {
    pub r0: f64,
    pub d: f64,
    pub bound: f64,
    pub center_norm: f64,
}

pub fn radius_report(
    body: &ConvexBody,
    modulus: Option<&Modulus>,
    fine_n: usize,
) -> Result<RadiusReport> {
    let owned;
    let modulus = match modulus {
        Some(m) => m,
        None => {
            owned = modulus_for_body(body)?
                .ok_or_else(|| Error::InvalidGeometry("body needs a modulus".into()))?;
            &owned
        }
    };
    let (center, r0, d) = measure_inball(body, fine_n)?;
    let bound = bound_radius_ratio(modulus, r0)?;
    Ok(RadiusReport {
        r0,
        d,
        bound,
        center_norm: center.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_deterministic_and_schema_stable() {
        let rows = vec![ExperimentRow {
            n: 16,
            delta_step: 0.3901806440322565,
            h_measured: 0.019591158,
            h_resolution: 0.0,
            bound_main: 0.347456,
            bound_classical: 0.780361,
            hyp_ok: true,
            runtime_ms: 12,
        }];
        let a = rows_to_csv(&rows, false);
        let b = rows_to_csv(&rows, false);
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert!(a.ends_with("true,0\n"));
        let t = rows_to_csv(&rows, true);
        assert!(t.ends_with("true,12\n"));
    }

    #[test]
    fn fan_out_keeps_order_for_any_thread_count() {
        let jobs1: Vec<_> = (0..17).map(|k| move || k * k).collect();
        let jobs4: Vec<_> = (0..17).map(|k| move || k * k).collect();
        let a = fan_out(jobs1, 1);
        let b = fan_out(jobs4, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn convergence_h_ratio_follows_square_law() {
        let ball = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let rows = convergence_rows(&ball, None, &[16, 32, 64, 128], 1).unwrap();
        for w in rows.windows(2) {
            let ratio = w[0].h_measured / w[1].h_measured;
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        }
        for r in &rows {
            assert!(r.hyp_ok);
            assert!(r.h_measured <= r.bound_main);
            assert!(r.h_measured <= r.bound_classical);
        }
    }

    #[test]
    fn translation_does_not_change_the_error() {
        let ball = ConvexBody::ball(Vector::zero(2), 1.0).unwrap();
        let moved = ConvexBody::translate(ball.clone(), Vector::new2(3.0, -2.0)).unwrap();
        let a = convergence_rows(&ball, None, &[16], 1).unwrap();
        let b = convergence_rows(&moved, None, &[16], 1).unwrap();
        assert!((a[0].h_measured - b[0].h_measured).abs() < 1e-9);
    }

    #[test]
    fn golden_dirs_are_unit_and_spread() {
        let dirs = golden_dirs(128);
        for d in &dirs {
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
        let mut angles: Vec<f64> = dirs.iter().map(|d| d.angle()).collect();
        angles.sort_by(f64::total_cmp);
        let mut max_gap: f64 = angles[0] + std::f64::consts::TAU - angles[127];
        for w in angles.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        assert!(max_gap < 0.15, "golden-angle gap {max_gap}");
    }
}
