//! The acceptance suite: twelve quantitative criteria covering grids,
//! approximation errors, every bound calculator, the LP core and the
//! property suites. Each criterion reports one pass/fail line with its
//! measured numbers and must finish inside its stated runtime budget.

use std::sync::OnceLock;
use std::time::Instant;

use polyapprox::convexity::{
    classical_bound, epsilon_of_step, epsilon_of_step_ball, ClassicalKind, Modulus,
};
use polyapprox::{
    approx_co_value, approx_hull, chebyshev_ball, co_value, external_approx, grid_icosphere_3d,
    grid_uniform_2d, power_cap_normals, restrict_body, solve_max, u_extend, ConvexBody, Grid,
    LinearProgram, LpOutcome, Supportable, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::experiments::{
    convergence_rows, exactness, geomdiff_rows, inner_hull_rows, intersection_rows,
    modulus_for_body, outradius_2d, radius_report, DiffCase,
};

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub millis: u128,
    pub limit_ms: u128,
    pub details: Vec<String>,
}

impl CriterionReport {
    pub fn status_line(&self) -> String {
        format!(
            "criterion={:02} name={} status={} elapsed_ms={} limit_ms={}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.millis,
            self.limit_ms
        )
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Corrupts the step used by the decomposition checks; criterion 1 must
    /// then fail.
    pub inject_grid_fault: bool,
}

struct Checks {
    details: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            details: Vec::new(),
            ok: true,
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }

    fn require(&mut self, cond: bool, line: String) {
        if cond {
            self.details.push(line);
        } else {
            self.details.push(format!("FAIL: {line}"));
            self.ok = false;
        }
    }
}

pub const CRITERIA: [(usize, &str, u128); 12] = [
    (1, "grid-decomposition", 5_000),
    (2, "external-approx-hausdorff", 10_000),
    (3, "classical-bounds-hausdorff", 2_000),
    (4, "exactness-order", 30_000),
    (5, "geometric-difference", 60_000),
    (6, "intersection", 60_000),
    (7, "inner-hull-algorithm", 10_000),
    (8, "chebyshev-ball", 1_000),
    (9, "radius-ratio", 60_000),
    (10, "minkowski-sum-inclusion", 20_000),
    (11, "lp-oracle", 5_000),
    (12, "property-suites", 30_000),
];

pub fn run_all(filter: Option<&str>, opts: VerifyOptions) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter(|(_, name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|&(id, _, _)| run_criterion(id, opts))
        .collect()
}

pub fn run_criterion(id: usize, opts: VerifyOptions) -> CriterionReport {
    let (_, name, limit_ms) = CRITERIA[id - 1];
    let start = Instant::now();
    let checks = match id {
        1 => criterion_grid_decomposition(opts),
        2 => criterion_external_approx(),
        3 => criterion_classical_bounds(),
        4 => criterion_exactness_order(),
        5 => criterion_geometric_difference(),
        6 => criterion_intersection(),
        7 => criterion_inner_hull(),
        8 => criterion_chebyshev(),
        9 => criterion_radius_ratio(),
        10 => criterion_sum_inclusion(),
        11 => criterion_lp_oracle(),
        12 => criterion_property_suites(),
        _ => unreachable!("criterion ids are 1..=12"),
    };
    let millis = start.elapsed().as_millis();
    let mut checks = checks;
    let in_budget = millis < limit_ms;
    if !in_budget {
        checks.details.push(format!(
            "FAIL: runtime {millis} ms exceeds the {limit_ms} ms budget"
        ));
    }
    CriterionReport {
        id,
        name,
        passed: checks.ok && in_budget,
        millis,
        limit_ms,
        details: checks.details,
    }
}

// ---------------------------------------------------------------------------
// Shared fixtures.
// ---------------------------------------------------------------------------

fn ellipse21() -> ConvexBody {
    ConvexBody::ellipsoid_axes(&[2.0, 1.0]).expect("ellipse")
}

fn unit_ball() -> ConvexBody {
    ConvexBody::ball(Vector::zero(2), 1.0).expect("ball")
}

fn ellipse21_modulus() -> &'static Modulus {
    static CACHE: OnceLock<Modulus> = OnceLock::new();
    CACHE.get_or_init(|| {
        modulus_for_body(&ellipse21())
            .expect("modulus table")
            .expect("strictly convex")
    })
}

fn ellipse41_modulus() -> &'static Modulus {
    static CACHE: OnceLock<Modulus> = OnceLock::new();
    CACHE.get_or_init(|| {
        modulus_for_body(&ConvexBody::ellipsoid_axes(&[4.0, 1.0]).expect("ellipse"))
            .expect("modulus table")
            .expect("strictly convex")
    })
}

fn random_dir(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let v = if dim == 2 {
            Vector::new2(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            Vector::new3(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        };
        if v.norm() > 0.1 {
            return v.normalized().expect("nonzero");
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: decomposition estimates on three grids.
// ---------------------------------------------------------------------------

fn criterion_grid_decomposition(opts: VerifyOptions) -> Checks {
    let mut checks = Checks::new();
    let grids: Vec<(&str, Grid)> = vec![
        ("uniform-16", grid_uniform_2d(16).expect("grid")),
        ("uniform-64", grid_uniform_2d(64).expect("grid")),
        ("icosphere-3", grid_icosphere_3d(3).expect("grid")),
    ];
    let fault = if opts.inject_grid_fault { 0.5 } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce);
    for (label, grid) in &grids {
        let step_checked = grid.step() * fault;
        let mut worst_residual = 0.0f64;
        let mut worst_norm_low = f64::INFINITY;
        let mut worst_norm_high = f64::NEG_INFINITY;
        let mut chord_ok = true;
        for _ in 0..10_000 {
            let p = random_dir(&mut rng, grid.dim()).scale(rng.gen_range(0.1..10.0));
            let dec = match grid.decompose(&p) {
                Ok(d) => d,
                Err(e) => {
                    checks.require(false, format!("{label}: decomposition failed: {e}"));
                    continue;
                }
            };
            let mut rec = Vector::zero(grid.dim());
            for (&i, &a) in dec.indices.iter().zip(&dec.alphas) {
                rec = rec.add(&grid.dirs()[i].scale(a));
            }
            worst_residual = worst_residual.max(rec.dist(&p) / p.norm());
            let nh = dec.p_hat.norm();
            worst_norm_low = worst_norm_low.min(nh);
            worst_norm_high = worst_norm_high.max(nh);
            for &i in &dec.indices {
                if dec.p_hat.dist(&grid.dirs()[i]) >= step_checked {
                    chord_ok = false;
                }
            }
        }
        let floor = 1.0 - grid.step() * grid.step() / 2.0;
        checks.require(
            worst_residual <= 1e-10,
            format!("{label}: max reconstruction residual {worst_residual:.3e} <= 1e-10"),
        );
        checks.require(
            worst_norm_low >= floor - 1e-12 && worst_norm_high <= 1.0 + 1e-12,
            format!(
                "{label}: |p_hat| in [{worst_norm_low:.12}, {worst_norm_high:.12}] within [{floor:.12}, 1]"
            ),
        );
        checks.require(
            chord_ok,
            format!("{label}: |p_hat - p_j| < {step_checked:.6} for all combination members"),
        );
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 2: step bound for ball and ellipsoid.
// ---------------------------------------------------------------------------

fn criterion_external_approx() -> Checks {
    let mut checks = Checks::new();
    let ns = [16usize, 32, 64, 128];
    let ball_modulus = Modulus::AnalyticBall { radius: 1.0 };
    let cases = [
        ("ball", unit_ball(), ball_modulus),
        ("ellipsoid", ellipse21(), ellipse21_modulus().clone()),
    ];
    for (label, body, modulus) in &cases {
        let rows = match convergence_rows(body, Some(modulus), &ns, 1) {
            Ok(r) => r,
            Err(e) => {
                checks.require(false, format!("{label}: {e}"));
                continue;
            }
        };
        for r in &rows {
            checks.require(
                r.hyp_ok && r.h_measured <= r.bound_main,
                format!(
                    "{label} N={}: h={:.6e} <= bound={:.6e} (hyp {})",
                    r.n, r.h_measured, r.bound_main, r.hyp_ok
                ),
            );
        }
        if *label == "ball" {
            let h16 = rows[0].h_measured;
            let b16 = rows[0].bound_main;
            checks.require(
                (h16 - 0.01959115820831836).abs() <= 1e-6,
                format!("ball N=16: h={h16:.9} = sec(pi/16)-1 within 1e-6"),
            );
            checks.require(
                (b16 - 0.3475).abs() <= 2e-3,
                format!("ball N=16: bound={b16:.6} = 0.3475 within 2e-3"),
            );
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 3: classical bounds for a ball-intersection body.
// ---------------------------------------------------------------------------

fn criterion_classical_bounds() -> Checks {
    let mut checks = Checks::new();
    let body = match ConvexBody::ball_intersection(vec![Vector::zero(2)], 1.0) {
        Ok(b) => b,
        Err(e) => {
            let mut c = Checks::new();
            c.require(false, format!("construction failed: {e}"));
            return c;
        }
    };
    let h0 = outradius_2d(&body).expect("outradius");
    let modulus = Modulus::AnalyticBall { radius: 1.0 };
    let rows = convergence_rows(&body, Some(&modulus), &[13, 16, 32, 64, 128], 1).expect("rows");
    for r in &rows {
        let ball_kind = r.bound_classical;
        let general = classical_bound(h0, r.delta_step, ClassicalKind::General).expect("bound");
        checks.require(
            r.h_measured <= ball_kind,
            format!(
                "N={}: h={:.6e} <= 2 R step^2 = {:.6e}",
                r.n, r.h_measured, ball_kind
            ),
        );
        checks.require(
            r.h_measured <= general,
            format!(
                "N={}: h={:.6e} <= 2 h0 step = {:.6e}",
                r.n, r.h_measured, general
            ),
        );
        if r.n == 16 {
            checks.require(
                (r.h_measured - 0.019591158).abs() <= 1e-4,
                format!("N=16: h={:.9} near sec(pi/16)-1", r.h_measured),
            );
            checks.require(
                (ball_kind - 0.304482).abs() <= 1e-4,
                format!("N=16: 2 R step^2 = {ball_kind:.6} = 0.304482"),
            );
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 4: sharp order of the cap construction.
// ---------------------------------------------------------------------------

fn criterion_exactness_order() -> Checks {
    let mut checks = Checks::new();
    let eps_list: Vec<f64> = (1..=8).map(|k| 0.05 * k as f64).collect();
    for s in [2.0f64, 3.0] {
        let run = match exactness(s, &eps_list, 2) {
            Ok(r) => r,
            Err(e) => {
                checks.require(false, format!("s={s}: {e}"));
                continue;
            }
        };
        let target = s / (s - 1.0);
        checks.require(
            (run.slope - target).abs() <= 0.15,
            format!(
                "s={s}: log-log slope {:.4} within 0.15 of {target}",
                run.slope
            ),
        );
        for (row, lower) in run.rows.iter().zip(&run.lower_bounds) {
            checks.require(
                row.h_measured >= lower - 1e-9,
                format!(
                    "s={s} step={:.5}: h={:.6e} >= lower bound {:.6e}",
                    row.delta_step, row.h_measured, lower
                ),
            );
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 5: geometric-difference hull gap.
// ---------------------------------------------------------------------------

fn criterion_geometric_difference() -> Checks {
    let mut checks = Checks::new();
    let ns = [32usize, 64, 128];
    let cases = [
        (
            "concentric-balls",
            DiffCase::ConcentricBalls,
            Modulus::AnalyticBall { radius: 2.0 },
        ),
        (
            "ellipsoid-ball",
            DiffCase::EllipsoidBall,
            ellipse21_modulus().clone(),
        ),
    ];
    for (label, case, modulus) in &cases {
        let rows = match geomdiff_rows(case, Some(modulus), &ns, 1000, 2) {
            Ok(r) => r,
            Err(e) => {
                checks.require(false, format!("{label}: {e}"));
                continue;
            }
        };
        for r in &rows {
            checks.require(
                r.hyp_ok,
                format!("{label} N={}: bound hypotheses hold", r.n),
            );
            checks.require(
                r.min_gap >= -1e-8 && r.max_gap <= r.bound_value,
                format!(
                    "{label} N={}: gaps in [{:.3e}, {:.3e}] within [-1e-8, {:.6e}]",
                    r.n, r.min_gap, r.max_gap, r.bound_value
                ),
            );
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 6: intersection hull gap.
// ---------------------------------------------------------------------------

fn criterion_intersection() -> Checks {
    let mut checks = Checks::new();
    let rows = match intersection_rows(0.25, &[32, 64, 128], 1000, 2) {
        Ok(r) => r,
        Err(e) => {
            checks.require(false, format!("intersection: {e}"));
            return checks;
        }
    };
    for r in &rows {
        checks.require(r.hyp_ok, format!("N={}: bound hypotheses hold", r.n));
        checks.require(
            r.min_gap >= -1e-8 && r.max_gap <= r.bound_value,
            format!(
                "N={}: gaps in [{:.3e}, {:.3e}] within [-1e-8, {:.6e}]",
                r.n, r.min_gap, r.max_gap, r.bound_value
            ),
        );
        checks.require(
            r.grid_dir_max_gap >= -r.reference_resolution - 1e-8
                && r.grid_dir_max_gap <= r.bound_value,
            format!(
                "N={}: grid-direction gap {:.3e} within resolution/bound window",
                r.n, r.grid_dir_max_gap
            ),
        );
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 7: radial inner-hull algorithm.
// ---------------------------------------------------------------------------

fn criterion_inner_hull() -> Checks {
    let mut checks = Checks::new();
    for (label, body) in [("ball", unit_ball()), ("ellipsoid", ellipse21())] {
        let rows = match inner_hull_rows(&body, &[16, 64], 1) {
            Ok(r) => r,
            Err(e) => {
                checks.require(false, format!("{label}: {e}"));
                continue;
            }
        };
        for r in &rows {
            checks.require(
                r.max_vertex_dist <= 1e-8,
                format!(
                    "{label} N={}: max vertex distance {:.3e} <= 1e-8 (inner inclusion)",
                    r.n, r.max_vertex_dist
                ),
            );
            checks.require(
                r.h <= r.bound,
                format!(
                    "{label} N={}: h={:.6e} <= algorithm bound {:.6e}",
                    r.n, r.h, r.bound
                ),
            );
        }
        if label == "ball" {
            let h16 = rows[0].h;
            checks.require(
                (h16 - 0.01921471959676957).abs() <= 1e-6,
                format!("ball N=16: h={h16:.9} = 1 - cos(pi/16) within 1e-6"),
            );
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 8: inscribed-ball program.
// ---------------------------------------------------------------------------

fn criterion_chebyshev() -> Checks {
    let mut checks = Checks::new();
    let grid = grid_uniform_2d(16).expect("grid");
    let hat = external_approx(&unit_ball(), &grid).expect("hat");
    let (center, radius) = hat.chebyshev().expect("chebyshev");
    checks.require(
        center.norm() <= 1e-9,
        format!("ball hat: |center| = {:.3e} <= 1e-9", center.norm()),
    );
    checks.require(
        (radius - 1.0).abs() <= 1e-9,
        format!("ball hat: radius = {radius:.12} = 1 within 1e-9"),
    );
    let square = vec![
        (Vector::new2(1.0, 0.0), 1.0),
        (Vector::new2(-1.0, 0.0), 1.0),
        (Vector::new2(0.0, 1.0), 1.0),
        (Vector::new2(0.0, -1.0), 1.0),
    ];
    let (c, r) = chebyshev_ball(&square).expect("square");
    checks.require(
        c.norm() <= 1e-12 && (r - 1.0).abs() <= 1e-12,
        format!("square: center {:.1e}, radius {r:.14}", c.norm()),
    );
    checks
}

// ---------------------------------------------------------------------------
// Criterion 9: outradius-from-inradius bound.
// ---------------------------------------------------------------------------

fn criterion_radius_ratio() -> Checks {
    let mut checks = Checks::new();
    let ball_modulus = Modulus::AnalyticBall { radius: 1.0 };
    let ball = radius_report(&unit_ball(), Some(&ball_modulus), 1024).expect("ball report");
    checks.require(
        (ball.d - ball.r0).abs() <= 1e-6 && ball.d <= 2.0 * ball.r0 + 1e-9,
        format!("ball: d={:.9} = r0={:.9} <= 2 r0", ball.d, ball.r0),
    );
    let e41 = ConvexBody::ellipsoid_axes(&[4.0, 1.0]).expect("ellipse41");
    let rep = radius_report(&e41, Some(ellipse41_modulus()), 1024).expect("ellipse report");
    checks.require(
        (rep.r0 - 1.0).abs() <= 1e-6,
        format!(
            "ellipsoid(4,1): measured r0 = {:.9} = 1 within 1e-6",
            rep.r0
        ),
    );
    checks.require(
        rep.d >= 4.0 - 1e-9 && rep.d <= 4.1,
        format!(
            "ellipsoid(4,1): measured d = {:.6} in [4, 4.1] (center offset {:.3e})",
            rep.d, rep.center_norm
        ),
    );
    checks.require(
        rep.d <= rep.bound + 1e-6,
        format!(
            "ellipsoid(4,1): d = {:.6} <= radius-ratio bound {:.6}",
            rep.d, rep.bound
        ),
    );
    checks
}

// ---------------------------------------------------------------------------
// Criterion 10: sum of approximations inside the approximation of the sum.
// ---------------------------------------------------------------------------

fn criterion_sum_inclusion() -> Checks {
    let mut checks = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x50b417);
    {
        let grid = grid_uniform_2d(32).expect("grid");
        let a = unit_ball();
        let b = ellipse21();
        let sum = ConvexBody::minkowski_sum(a.clone(), b.clone()).expect("sum");
        let ha = external_approx(&a, &grid).expect("A hat");
        let hb = external_approx(&b, &grid).expect("B hat");
        let hs = external_approx(&sum, &grid).expect("sum hat");
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..1000 {
            let p = random_dir(&mut rng, 2);
            let lhs = ha.support_value(&p).expect("s") + hb.support_value(&p).expect("s");
            let rhs = hs.support_value(&p).expect("s");
            worst = worst.max(lhs - rhs);
        }
        checks.require(
            worst <= 1e-8,
            format!("plane N=32: max (s_A + s_B - s_sum) = {worst:.3e} <= 1e-8"),
        );
    }
    {
        let grid = grid_icosphere_3d(3).expect("grid");
        let a = ConvexBody::ball(Vector::zero(3), 1.0).expect("ball");
        let b = ConvexBody::ball(Vector::new3(0.3, -0.2, 0.1), 0.7).expect("ball");
        let sum = ConvexBody::minkowski_sum(a.clone(), b.clone()).expect("sum");
        let ha = external_approx(&a, &grid).expect("A hat");
        let hb = external_approx(&b, &grid).expect("B hat");
        let hs = external_approx(&sum, &grid).expect("sum hat");
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..1000 {
            let p = random_dir(&mut rng, 3);
            let lhs = ha.support_value(&p).expect("s") + hb.support_value(&p).expect("s");
            let rhs = hs.support_value(&p).expect("s");
            worst = worst.max(lhs - rhs);
        }
        checks.require(
            worst <= 1e-8,
            format!("sphere freq=3: max (s_A + s_B - s_sum) = {worst:.3e} <= 1e-8"),
        );
    }
    checks
}

// ---------------------------------------------------------------------------
// Criterion 11: LP oracle equivalence.
// ---------------------------------------------------------------------------

fn criterion_lp_oracle() -> Checks {
    let mut checks = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac1e);
    let mut worst = 0.0f64;
    let mut all_ok = true;
    for trial in 0..200 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let lp = random_lp(&mut rng, n);
        let brute = brute_force_max(&lp).expect("bounded feasible");
        match solve_max(&lp) {
            Ok(LpOutcome::Optimal { x, value }) => {
                let err = (value - brute).abs() / (1.0 + brute.abs());
                worst = worst.max(err);
                if err > 1e-7 || !feasible(&lp, &x, 1e-8) {
                    all_ok = false;
                    checks.require(false, format!("trial {trial}: value error {err:.3e}"));
                }
            }
            other => {
                all_ok = false;
                checks.require(
                    false,
                    format!("trial {trial}: unexpected outcome {other:?}"),
                );
            }
        }
    }
    if all_ok {
        checks.note(format!(
            "200 random instances: max relative value error {worst:.3e} <= 1e-7"
        ));
    }
    checks
}

fn random_lp(rng: &mut ChaCha8Rng, n: usize) -> LinearProgram {
    let extra = rng.gen_range(2..=12 - 2 * n);
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut constraints = Vec::new();
    for j in 0..n {
        let mut pos = vec![0.0; n];
        pos[j] = 1.0;
        let mut neg = vec![0.0; n];
        neg[j] = -1.0;
        let half = rng.gen_range(2.0..6.0);
        constraints.push((pos, half));
        constraints.push((neg, half));
    }
    for _ in 0..extra {
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let scale: f64 = a.iter().map(|t| t * t).sum::<f64>().sqrt();
        if scale < 1e-3 {
            continue;
        }
        let a: Vec<f64> = a.iter().map(|t| t / scale).collect();
        let slack = rng.gen_range(0.1..2.0);
        let b = a.iter().zip(&x0).map(|(c, t)| c * t).sum::<f64>() + slack;
        constraints.push((a, b));
    }
    let objective: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    LinearProgram::new(objective, constraints).expect("valid instance")
}

fn feasible(lp: &LinearProgram, x: &[f64], tol: f64) -> bool {
    lp.constraints.iter().all(|(a, b)| {
        let v: f64 = a.iter().zip(x).map(|(c, t)| c * t).sum();
        v <= b + tol * (1.0 + b.abs())
    })
}

fn brute_force_max(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        if let Some(x) = solve_subset(lp, &idx) {
            if feasible(lp, &x, 1e-9) {
                let v: f64 = lp.objective.iter().zip(&x).map(|(c, t)| c * t).sum();
                if best.is_none_or(|bv| v > bv) {
                    best = Some(v);
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] != i + m - n {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn solve_subset(lp: &LinearProgram, rows: &[usize]) -> Option<Vec<f64>> {
    let n = lp.num_vars();
    let mut a: Vec<Vec<f64>> = rows.iter().map(|&r| lp.constraints[r].0.clone()).collect();
    let mut b: Vec<f64> = rows.iter().map(|&r| lp.constraints[r].1).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in r + 1..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Criterion 12: hull-operator and continuity property suites.
// ---------------------------------------------------------------------------

fn criterion_property_suites() -> Checks {
    let mut checks = Checks::new();
    let grid = grid_uniform_2d(32).expect("grid");
    let bodies = [
        ("ball", unit_ball()),
        ("ellipsoid", ellipse21()),
        ("power-cap", ConvexBody::power_cap(2.0).expect("cap")),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x12bead);
    for (label, body) in &bodies {
        let gf = restrict_body(body, &grid).expect("restrict");
        let inner = approx_hull(&gf).expect("inner hull");
        let mut reproduce = 0.0f64;
        for (p, f) in grid.dirs().iter().zip(gf.values()) {
            reproduce = reproduce.max((co_value(&gf, p).expect("co") - f).abs());
        }
        checks.require(
            reproduce <= 1e-8,
            format!("{label}: hull reproduces support on grid, max dev {reproduce:.3e}"),
        );
        let mut dominate = f64::NEG_INFINITY;
        let mut sandwich_lo = f64::NEG_INFINITY;
        let mut sandwich_hi = f64::NEG_INFINITY;
        for _ in 0..1000 {
            let p = random_dir(&mut rng, 2).scale(rng.gen_range(0.2..3.0));
            let s = body.support(&p).expect("support");
            let cv = co_value(&gf, &p).expect("co");
            let ue = u_extend(&gf, &p).expect("extend");
            let ac = approx_co_value(&inner, &p);
            dominate = dominate.max(s - cv);
            sandwich_lo = sandwich_lo.max(ac - cv);
            sandwich_hi = sandwich_hi.max(cv - ue);
        }
        checks.require(
            dominate <= 1e-8,
            format!("{label}: support <= hull value everywhere (max excess {dominate:.3e})"),
        );
        checks.require(
            sandwich_lo <= 1e-8 && sandwich_hi <= 1e-8,
            format!(
                "{label}: inner <= hull <= extension (excesses {sandwich_lo:.3e}, {sandwich_hi:.3e})"
            ),
        );
    }

    // Gradient-type expansion and maximizer continuity at the N=16 step.
    let step = grid_uniform_2d(16).expect("grid").step();
    let eps_ball = epsilon_of_step_ball(1.0, step);
    let eps_ell = epsilon_of_step(ellipse21_modulus(), step, 4.0).expect("eps");
    for (label, body, eps) in [
        ("ball", unit_ball(), eps_ball),
        ("ellipsoid", ellipse21(), eps_ell),
    ] {
        let mut worst_resid = 0.0f64;
        let mut worst_gap = 0.0f64;
        for _ in 0..1000 {
            let t1 = rng.gen_range(0.0..std::f64::consts::TAU);
            let p1 = Vector::from_angle(t1);
            let p2 = loop {
                let dt = rng.gen_range(-step..step);
                let scale = rng.gen_range(1.0 - step * step / 2.0..1.0);
                let cand = Vector::from_angle(t1 + dt).scale(scale);
                if p1.sub(&cand).norm() < step {
                    break cand;
                }
            };
            let s1 = body.support(&p1).expect("s1");
            let s2 = body.support(&p2).expect("s2");
            let x1 = body.support_argmax(&p1).expect("x1").argmax;
            let x2 = body.support_argmax(&p2).expect("x2").argmax;
            worst_resid = worst_resid.max((s1 - s2 - x2.dot(&p1.sub(&p2))).abs());
            worst_gap = worst_gap.max(x1.dist(&x2));
        }
        checks.require(
            worst_resid <= eps * step + 1e-9,
            format!(
                "{label}: gradient-type residual {worst_resid:.6e} <= eps*step = {:.6e}",
                eps * step
            ),
        );
        checks.require(
            worst_gap < eps,
            format!("{label}: maximizer continuity {worst_gap:.6e} < eps = {eps:.6e}"),
        );
    }

    // Modulus ratio monotonicity and the quadratic ceiling.
    for (label, m, end) in [
        ("analytic-ball", Modulus::AnalyticBall { radius: 1.0 }, 1.99),
        ("power-law-2", Modulus::PowerLaw { exponent: 2.0 }, 1.99),
        ("ellipsoid-table", ellipse21_modulus().clone(), 3.9),
    ] {
        let mut prev = 0.0f64;
        let mut mono = true;
        let mut ceiling = 0.0f64;
        for k in 1..=200 {
            let e = end * k as f64 / 200.0;
            let d = m.eval(e).expect("modulus");
            let r = d / e;
            if r < prev - 1e-9 {
                mono = false;
            }
            prev = r;
            ceiling = ceiling.max(d / (e * e));
        }
        checks.require(mono, format!("{label}: delta(eps)/eps nondecreasing"));
        checks.require(
            ceiling <= 1.0,
            format!("{label}: delta(eps) <= C eps^2 with C = {ceiling:.3}"),
        );
    }

    // Closed-form normals of the cap construction against finite differences.
    let mut worst = 0.0f64;
    for (s, eps) in [(2.0, 0.1), (2.0, 0.3), (3.0, 0.2), (2.5, 0.15)] {
        let (pa, pb, gap) = power_cap_normals(s, eps);
        let x = eps / 2.0;
        let h = 1e-6;
        let dy = ((x + h).powf(s) - (x - h).powf(s)) / (2.0 * h);
        let n = Vector::new2(dy, -1.0).normalized().expect("normal");
        worst = worst.max(pb.dist(&n).max((gap - pa.dist(&pb)).abs()));
    }
    checks.require(
        worst <= 1e-8,
        format!("cap normal closed forms match finite differences ({worst:.3e})"),
    );
    checks
}
