//! Oracle equivalence for the LP core: random small instances solved by the
//! simplex must agree with brute-force vertex enumeration.

use polyapprox::{chebyshev_ball, solve_max, LinearProgram, LpOutcome, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Enumerates all n-subsets of constraint boundaries, keeps the feasible
/// intersection points, and maximizes the objective over them.
fn brute_force_max(lp: &LinearProgram) -> Option<(Vec<f64>, f64)> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        if let Some(x) = solve_subset(lp, &idx) {
            if feasible(lp, &x, 1e-9) {
                let v: f64 = lp.objective.iter().zip(&x).map(|(c, t)| c * t).sum();
                if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                    best = Some((x, v));
                }
            }
        }
        // next combination
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
    let b: Vec<f64> = rows.iter().map(|&r| lp.constraints[r].1).collect();
    // Gaussian elimination with partial pivoting.
    let mut b = b;
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

fn feasible(lp: &LinearProgram, x: &[f64], tol: f64) -> bool {
    lp.constraints.iter().all(|(a, b)| {
        let v: f64 = a.iter().zip(x).map(|(c, t)| c * t).sum();
        v <= b + tol * (1.0 + b.abs())
    })
}

/// A random bounded feasible instance: a box plus random halfspaces that all
/// keep a known interior point.
fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> LinearProgram {
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
    LinearProgram::new(objective, constraints).unwrap()
}

#[test]
fn simplex_matches_vertex_enumeration_on_200_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1234);
    for trial in 0..200 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let lp = random_instance(&mut rng, n);
        let (bx, bv) = brute_force_max(&lp).expect("bounded feasible instance has a vertex");
        match solve_max(&lp).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert!(
                    (value - bv).abs() <= 1e-7 * (1.0 + bv.abs()),
                    "trial {trial}: simplex {value} vs brute force {bv}"
                );
                assert!(
                    feasible(lp_ref(&lp), &x, 1e-8),
                    "trial {trial}: infeasible output"
                );
                let _ = bx;
            }
            other => panic!("trial {trial}: expected optimal, got {other:?}"),
        }
    }
}

fn lp_ref(lp: &LinearProgram) -> &LinearProgram {
    lp
}

#[test]
fn chebyshev_matches_triple_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for trial in 0..60 {
        // Random planar halfspace sets with unit normals surrounding a point.
        let m = rng.gen_range(4..10);
        let mut hs: Vec<(Vector, f64)> = Vec::new();
        for k in 0..m {
            let theta =
                std::f64::consts::TAU * k as f64 / m as f64 + rng.gen_range(0.0..0.8 / m as f64);
            let p = Vector::from_angle(theta);
            hs.push((p, rng.gen_range(0.5..2.0)));
        }
        let (center, radius) = chebyshev_ball(&hs).unwrap();
        // Oracle: the optimum of the 3-variable LP lies on some triple of
        // active constraints (or a degenerate sub-face thereof).
        let mut best = f64::NEG_INFINITY;
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if let Some((b, r)) = solve_triple(&hs, i, j, k) {
                        let ok = hs
                            .iter()
                            .all(|(p, f)| p.dot(&b) + r <= f + 1e-9 * (1.0 + f.abs()));
                        if ok && r > best {
                            best = r;
                        }
                    }
                }
            }
        }
        assert!(
            (radius - best).abs() <= 1e-7 * (1.0 + best.abs()),
            "trial {trial}: chebyshev {radius} vs oracle {best}"
        );
        for (p, f) in &hs {
            assert!(p.dot(&center) + radius <= f + 1e-8 * (1.0 + f.abs()));
        }
    }
}

fn solve_triple(hs: &[(Vector, f64)], i: usize, j: usize, k: usize) -> Option<(Vector, f64)> {
    // Solve (p, b) + R = f on the three rows.
    let rows = [i, j, k];
    let mut a = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (r, &idx) in rows.iter().enumerate() {
        a[r][0] = hs[idx].0.get(0);
        a[r][1] = hs[idx].0.get(1);
        a[r][2] = 1.0;
        rhs[r] = hs[idx].1;
    }
    // Cramer
    let det = det3(&a);
    if det.abs() < 1e-12 {
        return None;
    }
    let mut sol = [0.0f64; 3];
    for c in 0..3 {
        let mut m = a;
        for r in 0..3 {
            m[r][c] = rhs[r];
        }
        sol[c] = det3(&m) / det;
    }
    Some((Vector::new2(sol[0], sol[1]), sol[2]))
}

fn det3(a: &[[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

#[test]
fn chebyshev_of_ball_polytope_is_the_ball() {
    // External approximation of the unit ball on 16 directions: all offsets
    // are 1, so the inscribed ball is the unit ball itself.
    let hs: Vec<(Vector, f64)> = (0..16)
        .map(|k| {
            (
                Vector::from_angle(std::f64::consts::TAU * k as f64 / 16.0),
                1.0,
            )
        })
        .collect();
    let (center, radius) = chebyshev_ball(&hs).unwrap();
    assert!(center.norm() <= 1e-9, "center {center}");
    assert!((radius - 1.0).abs() <= 1e-9, "radius {radius}");
}
