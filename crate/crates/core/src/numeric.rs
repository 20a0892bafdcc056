//! Deterministic 1-D and spherical optimization helpers.
//!
//! Everything here is seedless: coarse sweeps use uniform or golden-angle
//! sequences and refinement is golden-section, so repeated runs are bitwise
//! identical.

use std::sync::OnceLock;

use crate::grid::grid_icosphere_3d;
use crate::vec::Vector;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a (piecewise) unimodal function on `[a,b]`.
pub(crate) fn golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    iters: usize,
) -> (f64, f64) {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    let fm = f(xm);
    if fm >= f1 && fm >= f2 {
        (xm, fm)
    } else if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

pub(crate) fn golden_min<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    iters: usize,
) -> (f64, f64) {
    let (x, v) = golden_max(|t| -f(t), a, b, iters);
    (x, -v)
}

/// Coarse uniform sweep over the circle followed by a golden refinement in
/// the bracket around the best sample. Returns `(theta, value)`.
pub(crate) fn max_on_circle<F: FnMut(f64) -> f64>(mut f: F, coarse: usize) -> (f64, f64) {
    let m = coarse.max(8);
    let tau = std::f64::consts::TAU;
    let mut best_k = 0usize;
    let mut best = f64::NEG_INFINITY;
    for k in 0..m {
        let v = f(tau * k as f64 / m as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let center = tau * best_k as f64 / m as f64;
    let half = tau / m as f64;
    let (theta, val) = golden_max(&mut f, center - half, center + half, 80);
    if val >= best {
        (theta, val)
    } else {
        (center, best)
    }
}

pub(crate) fn min_on_circle<F: FnMut(f64) -> f64>(mut f: F, coarse: usize) -> (f64, f64) {
    let (t, v) = max_on_circle(|x| -f(x), coarse);
    (t, -v)
}

/// Like [`max_on_circle`] but golden-refines the strongest `peaks` local
/// maxima of the coarse sweep. Needed for piecewise-smooth objectives whose
/// global maximum may hide behind a kink next to a slightly lower peak.
pub(crate) fn max_on_circle_peaks<F: FnMut(f64) -> f64>(
    mut f: F,
    coarse: usize,
    peaks: usize,
) -> (f64, f64) {
    let m = coarse.max(16);
    let tau = std::f64::consts::TAU;
    let vals: Vec<f64> = (0..m).map(|k| f(tau * k as f64 / m as f64)).collect();
    let mut locals: Vec<(f64, usize)> = (0..m)
        .filter(|&k| {
            let prev = vals[(k + m - 1) % m];
            let next = vals[(k + 1) % m];
            vals[k] >= prev && vals[k] >= next
        })
        .map(|k| (vals[k], k))
        .collect();
    locals.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = locals.first().map_or(f64::NEG_INFINITY, |&(v, _)| v);
    let mut best_t = locals
        .first()
        .map_or(0.0, |&(_, k)| tau * k as f64 / m as f64);
    let half = tau / m as f64;
    for &(_, k) in locals.iter().take(peaks) {
        let center = tau * k as f64 / m as f64;
        let (t, v) = golden_max(&mut f, center - half, center + half, 80);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    (best_t, best)
}

/// Shared coarse direction set for spherical sweeps (642 unit vectors).
pub(crate) fn sphere_sweep_dirs() -> &'static [Vector] {
    static DIRS: OnceLock<Vec<Vector>> = OnceLock::new();
    DIRS.get_or_init(|| grid_icosphere_3d(8).expect("icosphere(8)").dirs().to_vec())
}

/// Coarse icosphere sweep plus shrinking-cap local refinement; returns the
/// best direction and value. The refinement is deterministic.
pub(crate) fn max_on_sphere<F: FnMut(&Vector) -> f64>(mut f: F, rounds: usize) -> (Vector, f64) {
    let mut best_dir = Vector::new3(1.0, 0.0, 0.0);
    let mut best = f64::NEG_INFINITY;
    for d in sphere_sweep_dirs() {
        let v = f(d);
        if v > best {
            best = v;
            best_dir = *d;
        }
    }
    let mut radius = 0.25f64;
    for _ in 0..rounds {
        let (e1, e2) = tangent_basis(&best_dir);
        let (sr, cr) = radius.sin_cos();
        let mut improved = false;
        for k in 0..16 {
            let phi = std::f64::consts::TAU * k as f64 / 16.0;
            let cand = best_dir
                .scale(cr)
                .add(&e1.scale(sr * phi.cos()))
                .add(&e2.scale(sr * phi.sin()));
            let cand = cand.normalized().expect("nonzero cap direction");
            let v = f(&cand);
            if v > best {
                best = v;
                best_dir = cand;
                improved = true;
            }
        }
        if !improved {
            radius *= 0.6;
        }
        if radius < 1e-9 {
            break;
        }
    }
    (best_dir, best)
}

pub(crate) fn tangent_basis(u: &Vector) -> (Vector, Vector) {
    let pick = if u.get(0).abs() < 0.9 {
        Vector::new3(1.0, 0.0, 0.0)
    } else {
        Vector::new3(0.0, 1.0, 0.0)
    };
    let e1 = u.cross(&pick).normalized().expect("tangent");
    let e2 = u.cross(&e1).normalized().expect("tangent");
    (e1, e2)
}

/// k-th element of the golden-angle low-discrepancy sequence on `[0, 2*pi)`.
pub(crate) fn golden_angle(k: usize) -> f64 {
    let frac = (k as f64 * INV_PHI).fract();
    std::f64::consts::TAU * frac
}
