//! Dense linear programming.
//!
//! A self-contained two-phase simplex with Bland's pivoting rule. Instances
//! in this crate are tiny in one dimension (at most a handful of structural
//! variables) but may carry thousands of inequality rows when a fine
//! direction grid is involved, so `solve_max` routes large instances through
//! the dual formulation, where the tableau stays `(n+1) x (m+n+1)` instead of
//! `(m+1) x (2n+2m+1)`. Both routes share the same simplex core and both are
//! deterministic: repeated solves of the same instance are bitwise identical.

// Tableau code indexes several parallel arrays with the same counters;
// iterator rewrites would obscure the pivots.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::vec::Vector;

/// `maximize (objective, x)` subject to `(a_i, x) <= b_i` with `x` free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    /// Rows `(a_i, b_i)` meaning `(a_i, x) <= b_i`.
    pub constraints: Vec<(Vec<f64>, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

/// Reduced-cost tolerance of the tableau.
const TABLEAU_TOL: f64 = 1e-9;
/// Pivot elements below this magnitude are treated as zero.
const PIVOT_TOL: f64 = 1e-10;
/// Hard floor under which a forced pivot is reported as numerical failure.
const PIVOT_FLOOR: f64 = 1e-12;
/// Instances with at least this many rows are solved through the dual.
const DUAL_ROUTE_ROWS: usize = 65;

impl LinearProgram {
    pub fn new(objective: Vec<f64>, constraints: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let n = objective.len();
        if n == 0 {
            return Err(Error::InvalidInput("objective must be nonempty".into()));
        }
        if constraints.is_empty() {
            return Err(Error::InvalidInput(
                "at least one constraint required".into(),
            ));
        }
        if !objective.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput(
                "objective entries must be finite".into(),
            ));
        }
        for (a, b) in &constraints {
            if a.len() != n {
                return Err(Error::InvalidInput(format!(
                    "constraint arity {} does not match objective arity {n}",
                    a.len()
                )));
            }
            if !a.iter().all(|v| v.is_finite()) || !b.is_finite() {
                return Err(Error::InvalidInput(
                    "constraint entries must be finite".into(),
                ));
            }
        }
        Ok(LinearProgram {
            objective,
            constraints,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }
}

/// Solves the program, reporting optimality, infeasibility or unboundedness.
pub fn solve_max(lp: &LinearProgram) -> Result<LpOutcome> {
    // Re-validate so hand-built structs get the same guarantees.
    let checked = LinearProgram::new(lp.objective.clone(), lp.constraints.clone())?;
    if checked.num_constraints() >= DUAL_ROUTE_ROWS {
        solve_max_dual(&checked)
    } else {
        solve_max_primal(&checked)
    }
}

/// Largest ball inscribed in `{x : (p_i, x) <= f_i}` for unit normals `p_i`.
///
/// Solves `R -> max` subject to `(p_i, b) + R <= f_i` and returns the center
/// and radius. An empty polyhedron reports `Infeasible`, an unbounded one
/// `Unbounded`.
pub fn chebyshev_ball(halfspaces: &[(Vector, f64)]) -> Result<(Vector, f64)> {
    if halfspaces.is_empty() {
        return Err(Error::InvalidInput("no halfspaces given".into()));
    }
    let dim = halfspaces[0].0.dim();
    let mut constraints = Vec::with_capacity(halfspaces.len());
    for (p, f) in halfspaces {
        if p.dim() != dim {
            return Err(Error::UnsupportedDimension(
                "mixed halfspace dimensions".into(),
            ));
        }
        let norm = p.norm();
        if norm < 1e-14 {
            return Err(Error::InvalidInput("zero halfspace normal".into()));
        }
        // Normalizing keeps the radius coefficient at exactly one.
        let mut row: Vec<f64> = p.coords().iter().map(|c| c / norm).collect();
        row.push(1.0);
        constraints.push((row, f / norm));
    }
    let mut objective = vec![0.0; dim + 1];
    objective[dim] = 1.0;
    let lp = LinearProgram::new(objective, constraints)?;
    match solve_max(&lp)? {
        LpOutcome::Optimal { x, .. } => {
            let radius = x[dim];
            if radius < -1e-9 {
                // Negative inscribed radius means the polyhedron is empty.
                return Err(Error::Infeasible);
            }
            Ok((Vector::from_slice(&x[..dim])?, radius))
        }
        LpOutcome::Unbounded => Err(Error::Unbounded),
        // The relaxed program is always feasible (R may be negative), so this
        // branch is unreachable; keep the mapping for completeness.
        LpOutcome::Infeasible => Err(Error::Infeasible),
    }
}

// ---------------------------------------------------------------------------
// Primal route: split x = u - v, add slacks, two-phase on the full tableau.
// ---------------------------------------------------------------------------

pub(crate) fn solve_max_primal(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    // Columns: u_0..u_{n-1}, v_0..v_{n-1}, s_0..s_{m-1}.
    let cols = 2 * n + m;
    let mut a = vec![vec![0.0; cols]; m];
    let mut rhs = vec![0.0; m];
    for (i, (row, b)) in lp.constraints.iter().enumerate() {
        let flip = if *b < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            a[i][j] = flip * row[j];
            a[i][n + j] = -flip * row[j];
        }
        a[i][2 * n + i] = flip;
        rhs[i] = flip * b;
    }
    let mut cost = vec![0.0; cols];
    for j in 0..n {
        cost[j] = lp.objective[j];
        cost[n + j] = -lp.objective[j];
    }
    match two_phase(a, rhs, &cost)? {
        StdOutcome::Optimal { y, value, .. } => {
            let x: Vec<f64> = (0..n).map(|j| y[j] - y[n + j]).collect();
            Ok(LpOutcome::Optimal { x, value })
        }
        StdOutcome::Infeasible => Ok(LpOutcome::Infeasible),
        StdOutcome::Unbounded => Ok(LpOutcome::Unbounded),
    }
}

// ---------------------------------------------------------------------------
// Dual route: min (b, y) s.t. A^T y = c, y >= 0. The dual tableau has only
// n+1 rows. The primal solution is recovered from the optimal active set and
// verified against the original constraints.
// ---------------------------------------------------------------------------

pub(crate) fn solve_max_dual(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    // Standard form rows: sum_i y_i a_i = c, flipping rows with negative rhs.
    let mut a = vec![vec![0.0; m]; n];
    let mut rhs = vec![0.0; n];
    for j in 0..n {
        let flip = if lp.objective[j] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..m {
            a[j][i] = flip * lp.constraints[i].0[j];
        }
        rhs[j] = flip * lp.objective[j];
    }
    // Dual objective: minimize (b, y) == maximize (-b, y).
    let cost: Vec<f64> = lp.constraints.iter().map(|(_, b)| -b).collect();
    match two_phase(a, rhs, &cost)? {
        StdOutcome::Optimal {
            value, multipliers, ..
        } => {
            // The simplex multipliers of the dual equality rows are the
            // primal optimum, up to the row flips applied above.
            let x: Vec<f64> = (0..n)
                .map(|j| {
                    let flip = if lp.objective[j] < 0.0 { -1.0 } else { 1.0 };
                    -flip * multipliers[j]
                })
                .collect();
            let primal_value = -value;
            verify_primal(lp, &x, primal_value)?;
            Ok(LpOutcome::Optimal {
                x,
                value: primal_value,
            })
        }
        // Dual unbounded below means the primal is infeasible.
        StdOutcome::Unbounded => Ok(LpOutcome::Infeasible),
        // Dual infeasible: the primal is unbounded if feasible at all.
        StdOutcome::Infeasible => {
            if primal_is_feasible(lp)? {
                Ok(LpOutcome::Unbounded)
            } else {
                Ok(LpOutcome::Infeasible)
            }
        }
    }
}

fn verify_primal(lp: &LinearProgram, x: &[f64], value: f64) -> Result<()> {
    for (a, b) in &lp.constraints {
        if dot(a, x) > b + 1e-7 * (1.0 + b.abs()) {
            return Err(Error::NumericalFailure(
                "recovered primal point violates a constraint".into(),
            ));
        }
    }
    let v = dot(&lp.objective, x);
    if (v - value).abs() > 1e-6 * (1.0 + value.abs()) {
        return Err(Error::NumericalFailure(
            "primal/dual objective mismatch".into(),
        ));
    }
    Ok(())
}

/// Feasibility of `Ax <= b` decided through the dual of `min t : Ax - t <= b`.
fn primal_is_feasible(lp: &LinearProgram) -> Result<bool> {
    let m = lp.num_constraints();
    let n = lp.num_vars();
    // Dual: min (b, mu) s.t. A^T mu = 0, sum mu = 1, mu >= 0.
    let mut a = vec![vec![0.0; m]; n + 1];
    let mut rhs = vec![0.0; n + 1];
    for j in 0..n {
        for i in 0..m {
            a[j][i] = lp.constraints[i].0[j];
        }
    }
    for i in 0..m {
        a[n][i] = 1.0;
    }
    rhs[n] = 1.0;
    let cost: Vec<f64> = lp.constraints.iter().map(|(_, b)| -b).collect();
    match two_phase(a, rhs, &cost)? {
        // min (b, mu) = -value; primal feasible iff it is >= 0 (within tol).
        StdOutcome::Optimal { value, .. } => Ok(-value >= -1e-7),
        // Certificate direction exists for every bound: feasible.
        StdOutcome::Unbounded => Ok(true),
        // No convex combination of rows vanishes: the homogeneous system has
        // no blocking certificate, so the primal admits points.
        StdOutcome::Infeasible => Ok(true),
    }
}

// ---------------------------------------------------------------------------
// Two-phase simplex on the standard form: maximize (cost, y) subject to
// A y = rhs (rhs >= 0 after row flips done by the caller), y >= 0.
// ---------------------------------------------------------------------------

enum StdOutcome {
    Optimal {
        y: Vec<f64>,
        value: f64,
        /// Simplex multipliers `c_B B^{-1}` (read off the artificial
        /// columns); one entry per equality row.
        multipliers: Vec<f64>,
    },
    Infeasible,
    Unbounded,
}

/// Callers must pass `rhs >= 0` (flip rows beforehand); the multipliers then
/// refer to the rows exactly as given.
fn two_phase(a: Vec<Vec<f64>>, rhs: Vec<f64>, cost: &[f64]) -> Result<StdOutcome> {
    let m = a.len();
    let cols = if m > 0 { a[0].len() } else { 0 };
    let total = cols + m; // structural + artificial
    let mut t = vec![vec![0.0; total + 1]; m + 1];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        debug_assert!(rhs[i] >= 0.0, "two_phase requires nonnegative rhs");
        for j in 0..cols {
            t[i][j] = a[i][j];
        }
        t[i][cols + i] = 1.0;
        t[i][total] = rhs[i];
        basis[i] = cols + i;
    }
    // Phase 1: minimize the artificial sum. Reduced costs for maximize(-sum):
    // objective row starts as the negated sum of all constraint rows.
    for j in 0..=total {
        let mut acc = 0.0;
        for row in t.iter().take(m) {
            acc += row[j];
        }
        t[m][j] = -acc;
    }
    for j in cols..total {
        t[m][j] = 0.0;
    }
    let mut pivots = 0usize;
    let cap = 200 * (m + total) + 1000;
    iterate(&mut t, &mut basis, |j| j < total, &mut pivots, cap)?;
    if t[m][total] < -1e-7 {
        return Ok(StdOutcome::Infeasible);
    }

    // Drive artificial variables out of the basis where a real pivot exists.
    for row in 0..m {
        if basis[row] >= cols {
            if let Some(j) = (0..cols).find(|&j| t[row][j].abs() > TABLEAU_TOL) {
                pivot(&mut t, &mut basis, row, j);
            }
        }
    }

    // Phase 2: rebuild the reduced-cost row for the real objective.
    for j in 0..=total {
        t[m][j] = 0.0;
    }
    for j in 0..cols {
        t[m][j] = -cost[j];
    }
    for row in 0..m {
        let b = basis[row];
        if b < cols && cost[b] != 0.0 {
            let factor = cost[b];
            for j in 0..=total {
                t[m][j] += factor * t[row][j];
            }
        }
    }
    let unbounded = !iterate(&mut t, &mut basis, |j| j < cols, &mut pivots, cap)?;
    if unbounded {
        return Ok(StdOutcome::Unbounded);
    }
    let mut y = vec![0.0; cols];
    for row in 0..m {
        if basis[row] < cols {
            y[basis[row]] = t[row][total];
        }
    }
    // Reduced cost of artificial k is (c_B B^{-1}) e_k.
    let multipliers: Vec<f64> = (0..m).map(|k| t[m][cols + k]).collect();
    Ok(StdOutcome::Optimal {
        value: t[m][total],
        y,
        multipliers,
    })
}

/// Runs simplex pivots until optimality. Returns `Ok(false)` on an unbounded
/// ray, `Ok(true)` at optimality.
fn iterate<F: Fn(usize) -> bool>(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    allow: F,
    pivots: &mut usize,
    cap: usize,
) -> Result<bool> {
    let m = basis.len();
    let total = t[0].len() - 1;
    loop {
        if *pivots > cap {
            return Err(Error::NumericalFailure(format!(
                "simplex exceeded {cap} pivots"
            )));
        }
        // Bland's rule: the first improving column.
        let entering = (0..total).find(|&j| allow(j) && t[m][j] < -TABLEAU_TOL);
        let Some(entering) = entering else {
            return Ok(true);
        };
        let mut leaving: Option<usize> = None;
        let mut best = f64::INFINITY;
        for row in 0..m {
            let coef = t[row][entering];
            if coef > PIVOT_TOL {
                let ratio = t[row][total] / coef;
                let better = match leaving {
                    None => true,
                    // Bland tie-break: smallest basic variable index.
                    Some(cur) => {
                        ratio < best - 1e-12
                            || ((ratio - best).abs() <= 1e-12 && basis[row] < basis[cur])
                    }
                };
                if better {
                    best = ratio;
                    leaving = Some(row);
                }
            }
        }
        let Some(leaving) = leaving else {
            // No positive pivot above the tolerance: either a genuine ray or
            // a numerically vanishing column.
            let max_coef = (0..m)
                .map(|row| t[row][entering])
                .fold(f64::NEG_INFINITY, f64::max);
            if max_coef > PIVOT_FLOOR {
                return Err(Error::NumericalFailure(format!(
                    "pivot candidates collapsed below {PIVOT_TOL:e} in column {entering}"
                )));
            }
            return Ok(false);
        };
        pivot(t, basis, leaving, entering);
        *pivots += 1;
    }
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let m = basis.len();
    let width = t[0].len();
    let p = t[row][col];
    for j in 0..width {
        t[row][j] /= p;
    }
    t[row][col] = 1.0;
    for r in 0..=m {
        if r == row {
            continue;
        }
        let factor = t[r][col];
        if factor == 0.0 {
            continue;
        }
        for j in 0..width {
            t[r][j] -= factor * t[row][j];
        }
        t[r][col] = 0.0;
    }
    basis[row] = col;
}

// ---------------------------------------------------------------------------
// Small dense helpers shared across the crate.
// ---------------------------------------------------------------------------

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting; `a` is consumed.
/// Returns `None` for (numerically) singular systems.
pub(crate) fn solve_dense(a: &mut [Vec<f64>], mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
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
