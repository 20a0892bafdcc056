//! Planar halfspace-intersection machinery.
//!
//! `Polygon2` resolves a finite intersection `{x : (p_i, x) <= b_i}` into its
//! active constraints and vertices by polar duality: after recentering at the
//! Chebyshev center, constraint `i` maps to the point `p_i / g_i` and the
//! facet-inducing constraints are exactly the convex-hull vertices of that
//! point cloud. Support queries then reduce to a binary search over the
//! active normal fan.

use crate::error::{Error, Result};
use crate::lp::chebyshev_ball;
use crate::vec::Vector;

#[derive(Clone, Debug)]
pub(crate) struct Polygon2 {
    center: Vector,
    /// Indices of facet-inducing halfspaces, sorted by normal angle.
    active: Vec<usize>,
    normals: Vec<Vector>,
    angles: Vec<f64>,
    /// Recentered offsets `b_i - (p_i, center)`, all positive.
    offsets: Vec<f64>,
    /// `verts[k]` is the vertex between `active[k]` and `active[k+1]`.
    verts: Vec<Vector>,
    /// Largest angular gap between adjacent active normals.
    max_gap: f64,
}

impl Polygon2 {
    /// Builds the polygon. Fails with `Degenerate` when the interior is
    /// empty and `Unbounded` when the normals do not positively span.
    pub fn build(halfspaces: &[(Vector, f64)]) -> Result<Self> {
        if halfspaces.len() < 3 {
            return Err(Error::Degenerate(
                "fewer than three halfspaces cannot bound a planar region".into(),
            ));
        }
        let (center, inradius) = match chebyshev_ball(halfspaces) {
            Ok(cr) => cr,
            Err(Error::Infeasible) => return Err(Error::Degenerate("empty intersection".into())),
            Err(e) => return Err(e),
        };
        if inradius <= 1e-12 {
            return Err(Error::Degenerate(format!(
                "interior is empty (inscribed radius {inradius:e})"
            )));
        }
        // Dual point cloud; constraints are normalized so offsets are the
        // distances from the center to each constraint line.
        let mut duals: Vec<(Vector, usize)> = Vec::with_capacity(halfspaces.len());
        let mut unit = Vec::with_capacity(halfspaces.len());
        let mut gs = Vec::with_capacity(halfspaces.len());
        for (i, (p, b)) in halfspaces.iter().enumerate() {
            let n = p.norm();
            if n < 1e-14 {
                return Err(Error::InvalidInput("zero halfspace normal".into()));
            }
            let u = p.scale(1.0 / n);
            let g = b / n - u.dot(&center);
            debug_assert!(g > 0.0);
            duals.push((u.scale(1.0 / g), i));
            unit.push(u);
            gs.push(g);
        }
        let hull = convex_hull_ccw(&mut duals);
        if hull.len() < 3 {
            return Err(Error::Degenerate(
                "active set degenerated to fewer than three constraints".into(),
            ));
        }
        // Rotate so the active list starts at the smallest normal angle.
        let mut items: Vec<(f64, usize)> = hull.iter().map(|&i| (unit[i].angle(), i)).collect();
        let start = items
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .map(|(k, _)| k)
            .unwrap();
        items.rotate_left(start);
        let active: Vec<usize> = items.iter().map(|&(_, i)| i).collect();
        let angles: Vec<f64> = items.iter().map(|&(a, _)| a).collect();
        let normals: Vec<Vector> = active.iter().map(|&i| unit[i]).collect();
        let offsets: Vec<f64> = active.iter().map(|&i| gs[i]).collect();
        let m = active.len();
        let mut verts = Vec::with_capacity(m);
        let mut max_gap = 0.0f64;
        for k in 0..m {
            let j = (k + 1) % m;
            let v = line_intersection(&normals[k], offsets[k], &normals[j], offsets[j])
                .ok_or_else(|| {
                    Error::Degenerate("adjacent active constraints are parallel".into())
                })?;
            verts.push(v.add(&center));
            let gap = if j == 0 {
                angles[0] + 2.0 * std::f64::consts::PI - angles[k]
            } else {
                angles[j] - angles[k]
            };
            max_gap = max_gap.max(gap);
        }
        Ok(Polygon2 {
            center,
            active,
            normals,
            angles,
            offsets,
            verts,
            max_gap,
        })
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Vertices in counterclockwise order.
    pub fn vertices(&self) -> &[Vector] {
        &self.verts
    }

    pub fn max_normal_gap(&self) -> f64 {
        self.max_gap
    }

    /// Position `k` such that the angle of `q` lies in the normal fan
    /// `[angles[k], angles[k+1])`; the maximizing vertex is `verts[k]`.
    pub fn fan_position(&self, q: &Vector) -> usize {
        let theta = q.angle();
        match self.angles.binary_search_by(|a| a.total_cmp(&theta)) {
            Ok(k) => k,
            Err(0) => self.angles.len() - 1,
            Err(k) => k - 1,
        }
    }

    /// Support of the polygon after inserting one extra tangent constraint
    /// bisecting the bracketing normals, with the true offset supplied by
    /// `f` (evaluated on the unit bisector, in absolute coordinates).
    pub fn support_refined<F: FnMut(&Vector) -> Result<f64>>(
        &self,
        q: &Vector,
        mut f: F,
    ) -> Result<(f64, Vector)> {
        let k = self.fan_position(q);
        let j = (k + 1) % self.normals.len();
        let mid = match self.normals[k].add(&self.normals[j]).normalized() {
            Ok(u) => u,
            // Antipodal normals: no usable bisector, keep the coarse vertex.
            Err(_) => return Ok((q.dot(&self.verts[k]), self.verts[k])),
        };
        let g_mid = f(&mid)? - mid.dot(&self.center);
        let v0 = self.verts[k].sub(&self.center);
        if mid.dot(&v0) <= g_mid {
            return Ok((q.dot(&self.verts[k]), self.verts[k]));
        }
        let mut best: Option<(f64, Vector)> = None;
        for (n, g) in [
            (&self.normals[k], self.offsets[k]),
            (&self.normals[j], self.offsets[j]),
        ] {
            if let Some(v) = line_intersection(n, g, &mid, g_mid) {
                let abs = v.add(&self.center);
                let val = q.dot(&abs);
                if best.is_none_or(|(b, _)| val > b) {
                    best = Some((val, abs));
                }
            }
        }
        Ok(best.unwrap_or((q.dot(&self.verts[k]), self.verts[k])))
    }
}

fn line_intersection(n1: &Vector, g1: f64, n2: &Vector, g2: f64) -> Option<Vector> {
    let det = n1.cross2(n2);
    if det.abs() < 1e-15 {
        return None;
    }
    Some(Vector::new2(
        (g1 * n2.get(1) - g2 * n1.get(1)) / det,
        (n1.get(0) * g2 - n2.get(0) * g1) / det,
    ))
}

/// Andrew monotone chain with strict turns; returns indices into the original
/// list, counterclockwise. Exact duplicates are collapsed first.
fn convex_hull_ccw(pts: &mut [(Vector, usize)]) -> Vec<usize> {
    pts.sort_by(|a, b| {
        a.0.get(0)
            .total_cmp(&b.0.get(0))
            .then(a.0.get(1).total_cmp(&b.0.get(1)))
            .then(a.1.cmp(&b.1))
    });
    let mut dedup: Vec<(Vector, usize)> = Vec::with_capacity(pts.len());
    for &(p, i) in pts.iter() {
        if let Some(&(q, _)) = dedup.last() {
            if p.dist(&q) < 1e-14 {
                continue;
            }
        }
        dedup.push((p, i));
    }
    if dedup.len() < 3 {
        return dedup.iter().map(|&(_, i)| i).collect();
    }
    let turn = |o: &Vector, a: &Vector, b: &Vector| a.sub(o).cross2(&b.sub(a));
    let mut lower: Vec<usize> = Vec::new();
    for (k, (p, _)) in dedup.iter().enumerate() {
        while lower.len() >= 2
            && turn(
                &dedup[lower[lower.len() - 2]].0,
                &dedup[lower[lower.len() - 1]].0,
                p,
            ) <= 0.0
        {
            lower.pop();
        }
        lower.push(k);
    }
    let mut upper: Vec<usize> = Vec::new();
    for (k, (p, _)) in dedup.iter().enumerate().rev() {
        while upper.len() >= 2
            && turn(
                &dedup[upper[upper.len() - 2]].0,
                &dedup[upper[upper.len() - 1]].0,
                p,
            ) <= 0.0
        {
            upper.pop();
        }
        upper.push(k);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|k| dedup[k].1).collect()
}
