//! Grid restriction and hull operators over supporting functions.
//!
//! `restrict` materializes a positively uniform function on a grid; the hull
//! value of the restriction at any direction is the support of the polytope
//! cut out by the grid inequalities and is computed by a per-direction linear
//! program. `external_approx` is the special case of a body's own support
//! values, and `approx_hull` is the inner polytope built from radial points.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Supportable};
use crate::grid::Grid;
use crate::hull2d::Polygon2;
use crate::lp::{chebyshev_ball, solve_max, LinearProgram, LpOutcome};
use crate::numeric::golden_max;
use crate::vec::Vector;

/// A positively uniform function given by an evaluable closed form.
#[derive(Clone, Debug)]
pub enum SupportFn {
    /// The supporting function of a body.
    Body(ConvexBody),
    /// `s(p, B) - s(p, A)`; presupports the geometric difference when that
    /// difference is nonempty.
    Diff(ConvexBody, ConvexBody),
    /// `min(s(p, A), s(p, B))`; presupports the intersection when nonempty.
    MinOf(ConvexBody, ConvexBody),
    /// `f(p) - (p, t)`: the source recentered by `t`.
    Shifted(Box<SupportFn>, Vector),
}

impl SupportFn {
    pub fn dim(&self) -> usize {
        match self {
            SupportFn::Body(b) => b.dim(),
            SupportFn::Diff(b, _) | SupportFn::MinOf(b, _) => b.dim(),
            SupportFn::Shifted(f, _) => f.dim(),
        }
    }

    pub fn eval(&self, p: &Vector) -> Result<f64> {
        match self {
            SupportFn::Body(b) => b.support(p),
            SupportFn::Diff(b, a) => Ok(b.support(p)? - a.support(p)?),
            SupportFn::MinOf(a, b) => Ok(a.support(p)?.min(b.support(p)?)),
            SupportFn::Shifted(f, t) => Ok(f.eval(p)? - p.dot(t)),
        }
    }
}

/// `s(p, B) - s(p, A)`, the presupporting function of `B (-) A`.
pub fn presupport_diff(b: &ConvexBody, a: &ConvexBody) -> Result<SupportFn> {
    if a.dim() != b.dim() {
        return Err(Error::UnsupportedDimension(
            "presupport operands have different dimensions".into(),
        ));
    }
    Ok(SupportFn::Diff(b.clone(), a.clone()))
}

/// `min(s(p, A), s(p, B))`, the presupporting function of the intersection.
pub fn presupport_min(a: &ConvexBody, b: &ConvexBody) -> Result<SupportFn> {
    if a.dim() != b.dim() {
        return Err(Error::UnsupportedDimension(
            "presupport operands have different dimensions".into(),
        ));
    }
    Ok(SupportFn::MinOf(a.clone(), b.clone()))
}

/// A positively uniform function restricted to grid directions.
#[derive(Clone, Debug)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
    source: Option<SupportFn>,
}

impl GridFunction {
    /// Raw on-grid values without an evaluable source.
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for {} grid directions",
                values.len(),
                grid.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        Ok(GridFunction {
            grid,
            values,
            source: None,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> Option<&SupportFn> {
        self.source.as_ref()
    }
}

/// Materializes `f` on the grid directions.
pub fn restrict(f: &SupportFn, grid: &Grid) -> Result<GridFunction> {
    if f.dim() != grid.dim() {
        return Err(Error::UnsupportedDimension(
            "function and grid dimensions differ".into(),
        ));
    }
    let values: Result<Vec<f64>> = grid.dirs().iter().map(|p| f.eval(p)).collect();
    Ok(GridFunction {
        grid: grid.clone(),
        values: values?,
        source: Some(f.clone()),
    })
}

/// Restriction of a body's supporting function.
pub fn restrict_body(body: &ConvexBody, grid: &Grid) -> Result<GridFunction> {
    restrict(&SupportFn::Body(body.clone()), grid)
}

/// Positive-combination extension: `f(p)` on the grid, `sum alpha_i f(p_i)`
/// elsewhere.
pub fn u_extend(gf: &GridFunction, p: &Vector) -> Result<f64> {
    let dec = gf.grid.decompose(p)?;
    Ok(dec
        .indices
        .iter()
        .zip(&dec.alphas)
        .map(|(&i, &a)| a * gf.values[i])
        .sum())
}

/// Halfspace representation `{x : (p_i, x) <= b_i}`; nonempty and bounded.
#[derive(Clone, Debug)]
pub struct HPolytope {
    halfspaces: Vec<(Vector, f64)>,
}

impl HPolytope {
    /// Validates nonemptiness and boundedness through the inscribed-ball
    /// program.
    pub fn new(halfspaces: Vec<(Vector, f64)>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidInput("no halfspaces given".into()));
        }
        let dim = halfspaces[0].0.dim();
        if halfspaces.iter().any(|(p, _)| p.dim() != dim) {
            return Err(Error::UnsupportedDimension(
                "mixed halfspace dimensions".into(),
            ));
        }
        match chebyshev_ball(&halfspaces) {
            Ok(_) => Ok(HPolytope { halfspaces }),
            Err(Error::Infeasible) => Err(Error::Degenerate("empty polytope".into())),
            Err(Error::Unbounded) => Err(Error::InvalidGeometry("unbounded polytope".into())),
            Err(e) => Err(e),
        }
    }

    pub fn halfspaces(&self) -> &[(Vector, f64)] {
        &self.halfspaces
    }

    pub fn dim(&self) -> usize {
        self.halfspaces[0].0.dim()
    }

    /// Largest inscribed ball.
    pub fn chebyshev(&self) -> Result<(Vector, f64)> {
        chebyshev_ball(&self.halfspaces)
    }

    /// One `p... b` row per halfspace, 17 significant digits.
    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        for (p, b) in &self.halfspaces {
            let mut row: Vec<String> = p.coords().iter().map(|c| format!("{c:.16e}")).collect();
            row.push(format!("{b:.16e}"));
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Supportable for HPolytope {
    fn sdim(&self) -> usize {
        self.dim()
    }

    fn support_value(&self, p: &Vector) -> Result<f64> {
        let lp = LinearProgram::new(
            p.coords().to_vec(),
            self.halfspaces
                .iter()
                .map(|(a, b)| (a.coords().to_vec(), *b))
                .collect(),
        )?;
        match solve_max(&lp)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => Err(Error::Infeasible),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// Vertex representation of a polytope.
#[derive(Clone, Debug)]
pub struct VPolytope {
    vertices: Vec<Vector>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput("no vertices given".into()));
        }
        let dim = vertices[0].dim();
        if vertices.iter().any(|v| v.dim() != dim || !v.is_finite()) {
            return Err(Error::InvalidInput(
                "vertices must be finite and of equal dimension".into(),
            ));
        }
        Ok(VPolytope { vertices })
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// One `x...` row per vertex, 17 significant digits.
    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        for v in &self.vertices {
            let row: Vec<String> = v.coords().iter().map(|c| format!("{c:.16e}")).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Supportable for VPolytope {
    fn sdim(&self) -> usize {
        self.dim()
    }

    fn support_value(&self, p: &Vector) -> Result<f64> {
        Ok(approx_co_value(self, p))
    }
}

/// External polyhedral approximation: tangent halfspaces at every grid
/// direction. Always contains the body.
pub fn external_approx(body: &ConvexBody, grid: &Grid) -> Result<HPolytope> {
    let gf = restrict_body(body, grid)?;
    HPolytope::new(
        grid.dirs()
            .iter()
            .zip(gf.values())
            .map(|(p, v)| (*p, *v))
            .collect(),
    )
}

/// The polytope cut out by the grid values of `gf`.
pub fn polytope_of(gf: &GridFunction) -> Result<HPolytope> {
    HPolytope::new(
        gf.grid()
            .dirs()
            .iter()
            .zip(gf.values())
            .map(|(p, v)| (*p, *v))
            .collect(),
    )
}

/// Hull value of the restriction at `q`: the support of the polytope
/// `{x : (p_i, x) <= f(p_i)}`, obtained from a linear program.
pub fn co_value(gf: &GridFunction, q: &Vector) -> Result<f64> {
    if q.dim() != gf.grid.dim() {
        return Err(Error::UnsupportedDimension(
            "direction and grid dimensions differ".into(),
        ));
    }
    let lp = LinearProgram::new(
        q.coords().to_vec(),
        gf.grid
            .dirs()
            .iter()
            .zip(&gf.values)
            .map(|(p, v)| (p.coords().to_vec(), *v))
            .collect(),
    )?;
    match solve_max(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => Err(Error::Unbounded),
    }
}

/// Inner polytope from radial points: for every grid `q` the vertex
/// `z(q) = q / s(q)` with `s(q) = max_i (p_i, q) / f(p_i)`.
///
/// All grid values must be positive (recenter first otherwise; see
/// [`approx_hull_recentered`]). When the grid function carries an evaluable
/// source, the ratio maximum is sharpened over all directions rather than
/// just the grid, which pins `z(q)` onto the boundary of the represented set
/// and makes the inner inclusion exact up to solver tolerance.
pub fn approx_hull(gf: &GridFunction) -> Result<VPolytope> {
    for (index, &value) in gf.values.iter().enumerate() {
        if value <= 0.0 {
            return Err(Error::NonpositiveValue { index, value });
        }
    }
    let dirs = gf.grid.dirs();
    let mut vertices = Vec::with_capacity(dirs.len());
    for q in dirs {
        let mut best = f64::NEG_INFINITY;
        let mut best_i = 0usize;
        for (i, (p, f)) in dirs.iter().zip(&gf.values).enumerate() {
            let r = p.dot(q) / f;
            if r > best {
                best = r;
                best_i = i;
            }
        }
        if let Some(src) = &gf.source {
            best = best.max(refine_ratio(src, q, &dirs[best_i], gf.grid.step())?);
        }
        vertices.push(q.scale(1.0 / best));
    }
    VPolytope::new(vertices)
}

/// Recentering wrapper: shifts by the Chebyshev center of the grid polytope,
/// runs [`approx_hull`], and shifts the result back.
pub fn approx_hull_recentered(gf: &GridFunction) -> Result<(VPolytope, Vector)> {
    let halfspaces: Vec<(Vector, f64)> = gf
        .grid
        .dirs()
        .iter()
        .zip(&gf.values)
        .map(|(p, v)| (*p, *v))
        .collect();
    let (center, _radius) = chebyshev_ball(&halfspaces)?;
    let shifted = GridFunction {
        grid: gf.grid.clone(),
        values: gf
            .grid
            .dirs()
            .iter()
            .zip(&gf.values)
            .map(|(p, v)| v - p.dot(&center))
            .collect(),
        source: gf
            .source
            .clone()
            .map(|s| SupportFn::Shifted(Box::new(s), center)),
    };
    let inner = approx_hull(&shifted)?;
    let vertices = inner.vertices().iter().map(|z| z.add(&center)).collect();
    Ok((VPolytope::new(vertices)?, center))
}

/// Continuous sharpening of `max (p, q) / f(p)` around a starting direction.
fn refine_ratio(src: &SupportFn, q: &Vector, start: &Vector, step: f64) -> Result<f64> {
    if q.dim() == 2 {
        let theta0 = start.angle();
        let half = 2.0 * (step / 2.0).asin();
        // The ratio can be kinked (minimum of supports), so scan before the
        // golden pass.
        let mut err: Option<Error> = None;
        let mut eval = |t: f64| -> f64 {
            let p = Vector::from_angle(t);
            match src.eval(&p) {
                Ok(f) if f > 1e-15 => p.dot(q) / f,
                Ok(_) => f64::NEG_INFINITY,
                Err(e) => {
                    err = Some(e);
                    f64::NEG_INFINITY
                }
            }
        };
        let m = 32;
        let mut best_t = theta0;
        let mut best = f64::NEG_INFINITY;
        for k in 0..=m {
            let t = theta0 - half + 2.0 * half * k as f64 / m as f64;
            let v = eval(t);
            if v > best {
                best = v;
                best_t = t;
            }
        }
        let span = 2.0 * half / m as f64;
        let (_, refined) = golden_max(&mut eval, best_t - span, best_t + span, 90);
        if let Some(e) = err {
            return Err(e);
        }
        Ok(best.max(refined))
    } else {
        let mut err: Option<Error> = None;
        let mut eval = |p: &Vector| -> f64 {
            match src.eval(p) {
                Ok(f) if f > 1e-15 => p.dot(q) / f,
                Ok(_) => f64::NEG_INFINITY,
                Err(e) => {
                    err = Some(e);
                    f64::NEG_INFINITY
                }
            }
        };
        let mut best_dir = *start;
        let mut best = eval(&best_dir);
        let mut radius = step;
        for _ in 0..70 {
            let (e1, e2) = crate::numeric::tangent_basis(&best_dir);
            let (sr, cr) = radius.sin_cos();
            let mut improved = false;
            for k in 0..16 {
                let phi = std::f64::consts::TAU * k as f64 / 16.0;
                let cand = best_dir
                    .scale(cr)
                    .add(&e1.scale(sr * phi.cos()))
                    .add(&e2.scale(sr * phi.sin()))
                    .normalized()?;
                let v = eval(&cand);
                if v > best {
                    best = v;
                    best_dir = cand;
                    improved = true;
                }
            }
            if !improved {
                radius *= 0.6;
                if radius < 1e-10 {
                    break;
                }
            }
        }
        if let Some(e) = err {
            return Err(e);
        }
        Ok(best)
    }
}

/// `max_q (p, z(q))`: the inner estimate of the hull value at `p`.
pub fn approx_co_value(vp: &VPolytope, p: &Vector) -> f64 {
    vp.vertices
        .iter()
        .map(|z| p.dot(z))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Vertices of a planar polytope in counterclockwise order, with redundant
/// halfspaces dropped. Fails with `Degenerate` when the interior is empty.
pub fn vertices_2d(hp: &HPolytope) -> Result<VPolytope> {
    if hp.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "vertex enumeration is planar only".into(),
        ));
    }
    let poly = Polygon2::build(hp.halfspaces())?;
    VPolytope::new(poly.vertices().to_vec())
}

/// Indices of the facet-inducing halfspaces of a planar polytope.
pub fn active_halfspaces_2d(hp: &HPolytope) -> Result<Vec<usize>> {
    if hp.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "activity analysis is planar only".into(),
        ));
    }
    let poly = Polygon2::build(hp.halfspaces())?;
    Ok(poly.active().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::grid_uniform_2d;

    fn unit_ball() -> ConvexBody {
        ConvexBody::ball(Vector::zero(2), 1.0).unwrap()
    }

    #[test]
    fn restriction_of_ball_is_constant() {
        let g = grid_uniform_2d(16).unwrap();
        let gf = restrict_body(&unit_ball(), &g).unwrap();
        assert!(gf.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn diff_restriction_of_concentric_balls() {
        let big = ConvexBody::ball(Vector::zero(2), 2.0).unwrap();
        let small = ConvexBody::ball(Vector::zero(2), 0.5).unwrap();
        let f = presupport_diff(&big, &small).unwrap();
        let g = grid_uniform_2d(16).unwrap();
        let gf = restrict(&f, &g).unwrap();
        assert!(gf.values().iter().all(|v| (v - 1.5).abs() < 1e-12));
    }

    #[test]
    fn u_extend_on_and_off_grid() {
        let g = grid_uniform_2d(16).unwrap();
        let gf = restrict_body(&unit_ball(), &g).unwrap();
        let on = g.dirs()[3];
        assert!((u_extend(&gf, &on).unwrap() - 1.0).abs() < 1e-12);
        let bisect = Vector::from_angle(std::f64::consts::PI / 16.0);
        let val = u_extend(&gf, &bisect).unwrap();
        assert!((val - 1.0 / (std::f64::consts::PI / 16.0).cos()).abs() < 1e-10);
        // Linear functions extend exactly.
        let c = Vector::new2(0.3, -0.8);
        let lin =
            GridFunction::from_values(g.clone(), g.dirs().iter().map(|p| p.dot(&c)).collect())
                .unwrap();
        for k in 0..40 {
            let p = Vector::from_angle(0.03 + 0.15 * k as f64).scale(1.0 + 0.1 * k as f64);
            assert!((u_extend(&lin, &p).unwrap() - p.dot(&c)).abs() < 1e-10);
        }
    }

    #[test]
    fn co_value_of_ball_polytope() {
        let g = grid_uniform_2d(16).unwrap();
        let gf = restrict_body(&unit_ball(), &g).unwrap();
        let on = g.dirs()[0];
        assert!((co_value(&gf, &on).unwrap() - 1.0).abs() < 1e-9);
        let bisect = Vector::from_angle(std::f64::consts::PI / 16.0);
        let sec = 1.0 / (std::f64::consts::PI / 16.0).cos();
        assert!((co_value(&gf, &bisect).unwrap() - sec).abs() < 1e-9);
    }

    #[test]
    fn co_value_square_diagonal() {
        let g = grid_uniform_2d(16).unwrap();
        // Square via raw values on the four axis directions is not a valid
        // grid; use the polytope route instead.
        let square = HPolytope::new(vec![
            (Vector::new2(1.0, 0.0), 1.0),
            (Vector::new2(0.0, 1.0), 1.0),
            (Vector::new2(-1.0, 0.0), 1.0),
            (Vector::new2(0.0, -1.0), 1.0),
        ])
        .unwrap();
        let d = Vector::new2(1.0, 1.0).normalized().unwrap();
        assert!((square.support_value(&d).unwrap() - 2.0f64.sqrt()).abs() < 1e-9);
        let _ = g;
    }

    #[test]
    fn external_approx_translates_with_the_body() {
        let g = grid_uniform_2d(16).unwrap();
        let t = Vector::new2(2.0, -1.0);
        let moved = ConvexBody::translate(unit_ball(), t).unwrap();
        let plain = external_approx(&unit_ball(), &g).unwrap();
        let shifted = external_approx(&moved, &g).unwrap();
        for ((p, b0), (_, b1)) in plain.halfspaces().iter().zip(shifted.halfspaces()) {
            assert!((b1 - b0 - p.dot(&t)).abs() < 1e-12);
        }
    }

    #[test]
    fn inner_hull_of_ball_is_inscribed_polygon() {
        let g = grid_uniform_2d(16).unwrap();
        let gf = restrict_body(&unit_ball(), &g).unwrap();
        let inner = approx_hull(&gf).unwrap();
        for (z, q) in inner.vertices().iter().zip(g.dirs()) {
            assert!(z.dist(q) < 1e-10, "z(q) should equal q for the unit ball");
        }
        // Scaling: radius r scales the vertices.
        let gf3 = restrict_body(&ConvexBody::ball(Vector::zero(2), 3.0).unwrap(), &g).unwrap();
        let inner3 = approx_hull(&gf3).unwrap();
        for (z, q) in inner3.vertices().iter().zip(g.dirs()) {
            assert!(z.dist(&q.scale(3.0)) < 1e-9);
        }
        let p = Vector::from_angle(std::f64::consts::PI / 16.0);
        let v = approx_co_value(&inner, &p);
        assert!((v - (std::f64::consts::PI / 16.0).cos()).abs() < 1e-10);
        let on = g.dirs()[4];
        assert!((approx_co_value(&inner, &on) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inner_hull_rejects_nonpositive_values() {
        let g = grid_uniform_2d(16).unwrap();
        let mut vals = vec![1.0; 16];
        vals[5] = -0.2;
        let gf = GridFunction::from_values(g, vals).unwrap();
        match approx_hull(&gf) {
            Err(Error::NonpositiveValue { index: 5, .. }) => {}
            other => panic!("expected NonpositiveValue, got {other:?}"),
        }
    }

    #[test]
    fn recentered_hull_matches_translated_run() {
        let g = grid_uniform_2d(32).unwrap();
        let t = Vector::new2(5.0, 3.0);
        let moved = ConvexBody::translate(unit_ball(), t).unwrap();
        let gf = restrict_body(&moved, &g).unwrap();
        let (inner, center) = approx_hull_recentered(&gf).unwrap();
        assert!(center.dist(&t) < 1e-8);
        for (z, q) in inner.vertices().iter().zip(g.dirs()) {
            assert!(z.dist(&q.add(&t)) < 1e-7);
        }
    }

    #[test]
    fn planar_vertices_of_square_and_ball() {
        let square = HPolytope::new(vec![
            (Vector::new2(1.0, 0.0), 1.0),
            (Vector::new2(0.0, 1.0), 1.0),
            (Vector::new2(-1.0, 0.0), 1.0),
            (Vector::new2(0.0, -1.0), 1.0),
            (Vector::new2(1.0, 0.0), 3.0), // redundant
        ])
        .unwrap();
        let v = vertices_2d(&square).unwrap();
        assert_eq!(v.vertices().len(), 4);
        let active = active_halfspaces_2d(&square).unwrap();
        assert!(!active.contains(&4));

        let g = grid_uniform_2d(16).unwrap();
        let hat = external_approx(&unit_ball(), &g).unwrap();
        let v = vertices_2d(&hat).unwrap();
        assert_eq!(v.vertices().len(), 16);
        let sec = 1.0 / (std::f64::consts::PI / 16.0).cos();
        for z in v.vertices() {
            assert!((z.norm() - sec).abs() < 1e-10);
        }
    }

    #[test]
    fn cap_approximation_contains_sampled_boundary() {
        let cap = ConvexBody::power_cap(2.0).unwrap();
        let g = grid_uniform_2d(64).unwrap();
        let hat = external_approx(&cap, &g).unwrap();
        for k in 0..1000 {
            let p = Vector::from_angle(std::f64::consts::TAU * k as f64 / 1000.0);
            let x = cap.support_argmax(&p).unwrap().argmax;
            for (n, b) in hat.halfspaces() {
                assert!(n.dot(&x) <= b + 1e-9, "sampled point escapes the hull");
            }
        }
    }

    #[test]
    fn diff_presupport_translates() {
        let c = Vector::new2(0.8, -0.6);
        let big = ConvexBody::ball(c, 2.0).unwrap();
        let small = ConvexBody::ball(Vector::zero(2), 0.5).unwrap();
        let f = presupport_diff(&big, &small).unwrap();
        // The geometric difference is Ball(c, 1.5); the raw difference of
        // supports already equals its supporting function here.
        let target = ConvexBody::ball(c, 1.5).unwrap();
        for k in 0..64 {
            let p = Vector::from_angle(0.098 * k as f64).scale(1.0 + 0.05 * k as f64);
            assert!((f.eval(&p).unwrap() - target.support(&p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn min_presupport_of_lens() {
        let a = ConvexBody::ball(Vector::new2(-0.25, 0.0), 1.0).unwrap();
        let b = ConvexBody::ball(Vector::new2(0.25, 0.0), 1.0).unwrap();
        let f = presupport_min(&a, &b).unwrap();
        assert!((f.eval(&Vector::new2(1.0, 0.0)).unwrap() - 0.75).abs() < 1e-12);
        let same = presupport_min(&a, &a).unwrap();
        for k in 0..16 {
            let p = Vector::from_angle(0.37 * k as f64);
            assert!((same.eval(&p).unwrap() - a.support(&p).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn hull_value_reports_infeasible_polytopes() {
        // Raw values can describe an empty region; the LP must say so.
        let g = grid_uniform_2d(16).unwrap();
        let mut vals = vec![-2.0; 16];
        vals[0] = -2.0;
        vals[8] = -2.0; // (p,x) <= -2 for both e1 and -e1: empty
        let gf = GridFunction::from_values(g, vals).unwrap();
        match co_value(&gf, &Vector::new2(1.0, 0.0)) {
            Err(Error::Infeasible) => {}
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }

    #[test]
    fn inner_value_of_a_single_vertex() {
        let v = Vector::new2(0.7, -0.3);
        let vp = VPolytope::new(vec![v]).unwrap();
        let p = Vector::new2(2.0, 5.0);
        assert_eq!(approx_co_value(&vp, &p), p.dot(&v));
    }
}
