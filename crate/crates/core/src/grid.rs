//! Unit-direction grids and positive-combination decompositions.
//!
//! A grid is a finite set of unit vectors such that every nonzero direction
//! is a positive combination of grid members that are pairwise closer than
//! the step. In the plane the combination uses the two angularly adjacent
//! directions; on the sphere it uses the three vertices of the geodesic
//! triangle whose cone contains the direction.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::lp::solve_dense;
use crate::vec::Vector;

/// Largest admissible chord between decomposition neighbours.
pub const MAX_STEP: f64 = 0.5;
/// Chord below which a direction is treated as lying on the grid.
const ON_GRID_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
enum Structure {
    /// Sorted angles in `[0, 2*pi)`, one per direction.
    Angular { angles: Vec<f64> },
    /// Geodesic triangulation with per-face oriented edge normals.
    Triangulated {
        faces: Vec<[usize; 3]>,
        edge_normals: Vec<[Vector; 3]>,
    },
}

#[derive(Clone, Debug)]
pub struct Grid {
    dim: usize,
    dirs: Vec<Vector>,
    step: f64,
    structure: Structure,
}

/// A positive combination `p = sum alpha_i p_i` over pairwise-close grid
/// directions, together with the normalized combination point `p_hat`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub indices: Vec<usize>,
    pub alphas: Vec<f64>,
    pub alpha_sum: f64,
    pub p_hat: Vector,
}

impl Grid {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dirs(&self) -> &[Vector] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Triangulation faces for spherical grids.
    pub fn faces(&self) -> Option<&[[usize; 3]]> {
        match &self.structure {
            Structure::Triangulated { faces, .. } => Some(faces),
            Structure::Angular { .. } => None,
        }
    }

    /// Writes `dim N step` followed by one unit vector per line, all numbers
    /// with 17 significant digits.
    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{} {} {:.16e}", self.dim, self.dirs.len(), self.step)?;
        for d in &self.dirs {
            let row: Vec<String> = d.coords().iter().map(|c| format!("{c:.16e}")).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Decomposes `p` into a positive combination of grid directions.
    pub fn decompose(&self, p: &Vector) -> Result<Decomposition> {
        if p.dim() != self.dim {
            return Err(Error::UnsupportedDimension(format!(
                "direction has dimension {}, grid has {}",
                p.dim(),
                self.dim
            )));
        }
        let norm = p.norm();
        if norm == 0.0 || !p.is_finite() {
            return Err(Error::ZeroDirection);
        }
        let u = p.scale(1.0 / norm);
        let dec = match &self.structure {
            Structure::Angular { angles } => self.decompose_2d(&u, norm, angles),
            Structure::Triangulated {
                faces,
                edge_normals,
            } => self.decompose_3d(&u, norm, faces, edge_normals),
        }?;
        // Reconstruction residual is a construction invariant; a violation
        // indicates a broken grid rather than a caller error.
        let mut rec = Vector::zero(self.dim);
        for (&i, &a) in dec.indices.iter().zip(&dec.alphas) {
            rec = rec.add(&self.dirs[i].scale(a));
        }
        if rec.dist(p) > 1e-10 * norm {
            return Err(Error::DecompositionFailure(format!(
                "reconstruction residual {:e} exceeds 1e-10*|p|",
                rec.dist(p)
            )));
        }
        Ok(dec)
    }

    fn singleton(&self, idx: usize, norm: f64) -> Decomposition {
        Decomposition {
            indices: vec![idx],
            alphas: vec![norm],
            alpha_sum: norm,
            p_hat: self.dirs[idx],
        }
    }

    fn decompose_2d(&self, u: &Vector, norm: f64, angles: &[f64]) -> Result<Decomposition> {
        let n = angles.len();
        let theta = u.angle();
        // Last angle <= theta, wrapping below the first one.
        let i = match angles.binary_search_by(|a| a.total_cmp(&theta)) {
            Ok(k) => k,
            Err(0) => n - 1,
            Err(k) => k - 1,
        };
        let j = (i + 1) % n;
        if u.dist(&self.dirs[i]) <= ON_GRID_TOL {
            return Ok(self.singleton(i, norm));
        }
        if u.dist(&self.dirs[j]) <= ON_GRID_TOL {
            return Ok(self.singleton(j, norm));
        }
        let di = &self.dirs[i];
        let dj = &self.dirs[j];
        let det = di.cross2(dj);
        if det.abs() < 1e-14 {
            return Err(Error::DecompositionFailure(
                "degenerate bracketing pair".into(),
            ));
        }
        let ai = u.cross2(dj) / det;
        let aj = di.cross2(u) / det;
        if ai <= 0.0 || aj <= 0.0 {
            return Err(Error::DecompositionFailure(format!(
                "bracketing pair produced nonpositive weights ({ai}, {aj})"
            )));
        }
        let alphas = vec![ai * norm, aj * norm];
        let alpha_sum = alphas[0] + alphas[1];
        Ok(Decomposition {
            indices: vec![i, j],
            alphas,
            alpha_sum,
            p_hat: u.scale(norm / alpha_sum),
        })
    }

    fn decompose_3d(
        &self,
        u: &Vector,
        norm: f64,
        faces: &[[usize; 3]],
        edge_normals: &[[Vector; 3]],
    ) -> Result<Decomposition> {
        for (idx, d) in self.dirs.iter().enumerate() {
            if u.dist(d) <= ON_GRID_TOL {
                return Ok(self.singleton(idx, norm));
            }
        }
        let cone_tol = -1e-10;
        for (f, face) in faces.iter().enumerate() {
            let en = &edge_normals[f];
            if en[0].dot(u) < cone_tol || en[1].dot(u) < cone_tol || en[2].dot(u) < cone_tol {
                continue;
            }
            let vs = [self.dirs[face[0]], self.dirs[face[1]], self.dirs[face[2]]];
            let mut a: Vec<Vec<f64>> = (0..3)
                .map(|r| (0..3).map(|c| vs[c].get(r)).collect())
                .collect();
            let rhs = u.coords().to_vec();
            let Some(sol) = solve_dense(&mut a, rhs) else {
                continue;
            };
            if sol.iter().any(|&x| x < -1e-11) {
                continue;
            }
            let kept: Vec<usize> = (0..3).filter(|&k| sol[k] > 1e-11).collect();
            let (indices, alphas) = if kept.len() == 3 {
                (face.to_vec(), sol)
            } else if kept.is_empty() {
                continue;
            } else {
                // Boundary direction: drop the vanishing weights and re-solve
                // on the remaining span through the Gram system.
                let cols: Vec<Vector> = kept.iter().map(|&k| vs[k]).collect();
                let k = cols.len();
                let mut gram: Vec<Vec<f64>> = (0..k)
                    .map(|r| (0..k).map(|c| cols[r].dot(&cols[c])).collect())
                    .collect();
                let gv: Vec<f64> = cols.iter().map(|v| v.dot(u)).collect();
                let Some(red) = solve_dense(&mut gram, gv) else {
                    continue;
                };
                if red.iter().any(|&x| x <= 0.0) {
                    continue;
                }
                (kept.iter().map(|&k| face[k]).collect(), red)
            };
            let alphas: Vec<f64> = alphas.iter().map(|a| a * norm).collect();
            let alpha_sum: f64 = alphas.iter().sum();
            return Ok(Decomposition {
                indices,
                alphas,
                alpha_sum,
                p_hat: u.scale(norm / alpha_sum),
            });
        }
        Err(Error::DecompositionFailure(
            "no triangulation cone contains the direction".into(),
        ))
    }
}

/// `N` equally spaced planar directions at angles `2*pi*k/N`.
pub fn grid_uniform_2d(n: usize) -> Result<Grid> {
    if n < 3 {
        return Err(Error::StepTooLarge(format!(
            "{n} directions cannot cover the circle"
        )));
    }
    let angles: Vec<f64> = (0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect();
    grid_from_angles(&angles)
}

/// A planar grid with exactly the given strictly increasing angles.
pub fn grid_from_angles(angles: &[f64]) -> Result<Grid> {
    let n = angles.len();
    if n < 2 {
        return Err(Error::StepTooLarge(
            "fewer than two directions cannot cover the circle".into(),
        ));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    for (i, &a) in angles.iter().enumerate() {
        if !a.is_finite() || !(0.0..two_pi).contains(&a) {
            return Err(Error::InvalidInput(format!(
                "angle {a} at index {i} outside [0, 2*pi)"
            )));
        }
        if i > 0 {
            if (a - angles[i - 1]).abs() < 1e-15 {
                return Err(Error::DuplicateDirection(i));
            }
            if a < angles[i - 1] {
                return Err(Error::InvalidInput(
                    "angles must be strictly increasing".into(),
                ));
            }
        }
    }
    let dirs: Vec<Vector> = angles.iter().map(|&a| Vector::from_angle(a)).collect();
    // The step is the largest chord between angularly adjacent directions;
    // the angular gap must also stay below pi for positive decompositions.
    let mut step = 0.0f64;
    for i in 0..n {
        let j = (i + 1) % n;
        let gap = if j == 0 {
            two_pi - angles[i] + angles[0]
        } else {
            angles[j] - angles[i]
        };
        if gap >= std::f64::consts::PI {
            return Err(Error::StepTooLarge(format!(
                "angular gap {gap:.6} at index {i} reaches pi; chord bound {:.6}",
                2.0 * (gap.min(std::f64::consts::PI) / 2.0).sin()
            )));
        }
        step = step.max(dirs[i].dist(&dirs[j]));
    }
    if step >= MAX_STEP {
        return Err(Error::StepTooLarge(format!(
            "max adjacent chord {step:.6} >= {MAX_STEP}"
        )));
    }
    Ok(Grid {
        dim: 2,
        dirs,
        step,
        structure: Structure::Angular {
            angles: angles.to_vec(),
        },
    })
}

/// Geodesic icosphere of the given frequency: every icosahedron edge is split
/// into `freq` segments and the subdivision is projected to the unit sphere.
pub fn grid_icosphere_3d(freq: usize) -> Result<Grid> {
    if freq == 0 {
        return Err(Error::InvalidInput("frequency must be positive".into()));
    }
    let (dirs, faces) = icosphere(freq);
    let mut step = 0.0f64;
    for face in &faces {
        for a in 0..3 {
            for b in a + 1..3 {
                step = step.max(dirs[face[a]].dist(&dirs[face[b]]));
            }
        }
    }
    if step >= MAX_STEP {
        return Err(Error::StepTooLarge(format!(
            "max in-face chord {step:.6} >= {MAX_STEP} at frequency {freq}"
        )));
    }
    let edge_normals = faces
        .iter()
        .map(|f| {
            let (a, b, c) = (dirs[f[0]], dirs[f[1]], dirs[f[2]]);
            [a.cross(&b), b.cross(&c), c.cross(&a)]
        })
        .collect();
    Ok(Grid {
        dim: 3,
        dirs,
        step,
        structure: Structure::Triangulated {
            faces,
            edge_normals,
        },
    })
}

#[derive(Hash, PartialEq, Eq)]
enum VertKey {
    Corner(usize),
    Edge(usize, usize, usize),
    Interior(usize, usize, usize),
}

fn icosphere(freq: usize) -> (Vec<Vector>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let base: Vec<Vector> = raw
        .iter()
        .map(|c| Vector::new3(c[0], c[1], c[2]).normalized().unwrap())
        .collect();
    let base_faces: [[usize; 3]; 20] = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    let mut verts: Vec<Vector> = Vec::new();
    let mut lookup: HashMap<VertKey, usize> = HashMap::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (fidx, bf) in base_faces.iter().enumerate() {
        let (a, b, c) = (bf[0], bf[1], bf[2]);
        let (va, vb, vc) = (base[a], base[b], base[c]);
        let mut local: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..=freq {
            for j in 0..=freq - i {
                let k = freq - i - j;
                // Shared vertices are identified by exact integer barycentric
                // keys so adjacent faces agree without float comparisons.
                let key = if i == freq {
                    VertKey::Corner(a)
                } else if j == freq {
                    VertKey::Corner(b)
                } else if k == freq {
                    VertKey::Corner(c)
                } else if k == 0 {
                    let (lo, hi) = (a.min(b), a.max(b));
                    VertKey::Edge(lo, hi, if a < b { j } else { i })
                } else if j == 0 {
                    let (lo, hi) = (a.min(c), a.max(c));
                    VertKey::Edge(lo, hi, if a < c { k } else { i })
                } else if i == 0 {
                    let (lo, hi) = (b.min(c), b.max(c));
                    VertKey::Edge(lo, hi, if b < c { k } else { j })
                } else {
                    VertKey::Interior(fidx, i, j)
                };
                let idx = *lookup.entry(key).or_insert_with(|| {
                    let p = va
                        .scale(i as f64)
                        .add(&vb.scale(j as f64))
                        .add(&vc.scale(k as f64))
                        .scale(1.0 / freq as f64)
                        .normalized()
                        .unwrap();
                    verts.push(p);
                    verts.len() - 1
                });
                local.insert((i, j), idx);
            }
        }
        for i in 0..freq {
            for j in 0..freq - i {
                faces.push([local[&(i, j)], local[&(i + 1, j)], local[&(i, j + 1)]]);
                if j + i < freq - 1 {
                    faces.push([
                        local[&(i + 1, j)],
                        local[&(i + 1, j + 1)],
                        local[&(i, j + 1)],
                    ]);
                }
            }
        }
    }
    // Orient every face so the vertex triple has positive determinant;
    // the cone sign tests rely on it.
    for f in &mut faces {
        let det = verts[f[0]].dot(&verts[f[1]].cross(&verts[f[2]]));
        if det < 0.0 {
            f.swap(1, 2);
        }
    }
    (verts, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_steps_match_chords() {
        let g = grid_uniform_2d(16).unwrap();
        assert!((g.step() - 0.3901806440322565).abs() < 1e-6);
        let g = grid_uniform_2d(13).unwrap();
        assert!((g.step() - 0.4786313285751155).abs() < 1e-6);
        match grid_uniform_2d(12) {
            Err(Error::StepTooLarge(_)) => {}
            other => panic!("expected StepTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn from_angles_matches_uniform() {
        let angles: Vec<f64> = (0..16)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / 16.0)
            .collect();
        let a = grid_from_angles(&angles).unwrap();
        let b = grid_uniform_2d(16).unwrap();
        assert_eq!(a.len(), b.len());
        assert_eq!(a.step(), b.step());
        for (x, y) in a.dirs().iter().zip(b.dirs()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn augmenting_with_cap_normals_keeps_the_step() {
        // Inserting the two cap normals of the sharp-order construction
        // (s = 2, eps = 0.1) splits a uniform-16 cell; the max adjacent
        // chord stays the uniform one.
        let (pa, pb, gap) = crate::geometry::power_cap_normals(2.0, 0.1);
        let mut angles: Vec<f64> = (0..16)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / 16.0)
            .collect();
        angles.push(pa.angle());
        angles.push(pb.angle());
        angles.sort_by(f64::total_cmp);
        let g = grid_from_angles(&angles).unwrap();
        assert_eq!(g.len(), 18);
        assert!(gap < g.step());
        let uniform = grid_uniform_2d(16).unwrap();
        assert!((g.step() - uniform.step()).abs() < 1e-12);
        assert!(g.dirs().iter().any(|d| d.dist(&pa) < 1e-12));
        assert!(g.dirs().iter().any(|d| d.dist(&pb) < 1e-12));
    }

    #[test]
    fn tiny_grids_are_rejected() {
        match grid_from_angles(&[0.1, 0.2]) {
            Err(Error::StepTooLarge(_)) => {}
            other => panic!("expected StepTooLarge, got {other:?}"),
        }
        match grid_from_angles(&[0.1, 0.1, 0.4]) {
            Err(Error::DuplicateDirection(1)) => {}
            other => panic!("expected DuplicateDirection, got {other:?}"),
        }
    }

    #[test]
    fn icosphere_counts_and_steps() {
        let g = grid_icosphere_3d(3).unwrap();
        assert_eq!(g.len(), 92);
        assert_eq!(g.faces().unwrap().len(), 180);
        assert!(g.step() < 0.5);
        for d in g.dirs() {
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
        match grid_icosphere_3d(1) {
            Err(Error::StepTooLarge(msg)) => assert!(msg.contains("1.05")),
            other => panic!("expected StepTooLarge, got {other:?}"),
        }
        assert!(grid_icosphere_3d(2).is_err());
        let g6 = grid_icosphere_3d(6).unwrap();
        let ratio = g6.step() / g.step();
        assert!((0.4..=0.6).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn decompose_on_grid_direction() {
        let g = grid_uniform_2d(16).unwrap();
        let p = g.dirs()[5].scale(2.0);
        let d = g.decompose(&p).unwrap();
        assert_eq!(d.indices, vec![5]);
        assert!((d.alphas[0] - 2.0).abs() < 1e-12);
        assert_eq!(d.p_hat, g.dirs()[5]);
    }

    #[test]
    fn decompose_bisecting_direction() {
        let g = grid_uniform_2d(16).unwrap();
        let theta = std::f64::consts::PI / 16.0;
        let p = Vector::from_angle(theta).scale(3.0);
        let d = g.decompose(&p).unwrap();
        assert_eq!(d.indices, vec![0, 1]);
        let expect = 3.0 / (2.0 * theta.cos());
        assert!((d.alphas[0] - expect).abs() < 1e-10);
        assert!((d.alphas[1] - expect).abs() < 1e-10);
        assert!((d.p_hat.norm() - theta.cos()).abs() < 1e-12);
        assert!(d.p_hat.norm() >= 1.0 - g.step() * g.step() / 2.0);
    }

    #[test]
    fn decompose_rejects_zero() {
        let g = grid_uniform_2d(16).unwrap();
        assert!(matches!(
            g.decompose(&Vector::zero(2)),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn combination_estimates_hold_on_samples() {
        // A deterministic pseudo-random sweep of directions and magnitudes.
        check_grid(&grid_uniform_2d(16).unwrap(), 2000);
        check_grid(&grid_uniform_2d(64).unwrap(), 2000);
        check_grid(&grid_icosphere_3d(3).unwrap(), 2000);
    }

    fn check_grid(g: &Grid, samples: usize) {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..samples {
            let p = if g.dim() == 2 {
                Vector::from_angle(next() * std::f64::consts::TAU).scale(0.1 + 9.9 * next())
            } else {
                let v = Vector::new3(next() - 0.5, next() - 0.5, next() - 0.5);
                if v.norm() < 1e-3 {
                    continue;
                }
                v.normalized().unwrap().scale(0.1 + 9.9 * next())
            };
            let d = g.decompose(&p).unwrap();
            assert!(d.alphas.iter().all(|&a| a > 0.0));
            let nh = d.p_hat.norm();
            assert!(nh <= 1.0 + 1e-12, "p_hat norm {nh}");
            assert!(
                nh >= 1.0 - g.step() * g.step() / 2.0 - 1e-12,
                "p_hat norm {nh}"
            );
            for &i in &d.indices {
                assert!(d.p_hat.dist(&g.dirs()[i]) < g.step());
            }
            for &i in &d.indices {
                for &j in &d.indices {
                    assert!(g.dirs()[i].dist(&g.dirs()[j]) < g.step() + 1e-15);
                }
            }
        }
    }

    #[test]
    fn decompose_on_face_boundaries() {
        // Directions on shared edges and at face barycenters exercise the
        // reduced (two-weight) and full (three-weight) paths.
        let g = grid_icosphere_3d(3).unwrap();
        let faces = g.faces().unwrap().to_vec();
        for face in faces.iter().take(40) {
            let (a, b, c) = (g.dirs()[face[0]], g.dirs()[face[1]], g.dirs()[face[2]]);
            let edge_mid = a.add(&b).normalized().unwrap().scale(1.7);
            let d = g.decompose(&edge_mid).unwrap();
            assert!(d.indices.len() <= 3);
            assert!(d.alphas.iter().all(|&w| w > 0.0));
            let mut rec = Vector::zero(3);
            for (&i, &w) in d.indices.iter().zip(&d.alphas) {
                rec = rec.add(&g.dirs()[i].scale(w));
            }
            assert!(rec.dist(&edge_mid) <= 1e-10 * edge_mid.norm());

            let center = a.add(&b).add(&c).normalized().unwrap();
            let d = g.decompose(&center).unwrap();
            assert_eq!(d.indices.len(), 3);
            assert!(d.p_hat.norm() <= 1.0 + 1e-12);
            assert!(d.p_hat.norm() >= 1.0 - g.step() * g.step() / 2.0 - 1e-12);
        }
    }

    #[test]
    fn export_has_header_and_rows() {
        let g = grid_uniform_2d(16).unwrap();
        let mut buf = Vec::new();
        g.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("2 16 "));
        assert_eq!(lines.count(), 16);
    }
}
