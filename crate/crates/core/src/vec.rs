//! Small fixed-capacity vectors and rotations for 2- and 3-dimensional
//! Euclidean geometry.
//!
//! Every end-to-end pipeline in this crate runs in dimension 2 or 3, so a
//! copyable `[f64; 3]`-backed vector with an explicit dimension tag is both
//! simpler and faster than a heap-allocated alternative.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// A point or direction in R^2 or R^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    dim: usize,
    coords: [f64; 3],
}

impl Vector {
    pub fn new2(x: f64, y: f64) -> Self {
        Vector {
            dim: 2,
            coords: [x, y, 0.0],
        }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Vector {
            dim: 3,
            coords: [x, y, z],
        }
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dimension must be 2 or 3");
        Vector {
            dim,
            coords: [0.0; 3],
        }
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        match coords {
            [x, y] => Ok(Vector::new2(*x, *y)),
            [x, y, z] => Ok(Vector::new3(*x, *y, *z)),
            other => Err(Error::UnsupportedDimension(format!(
                "expected 2 or 3 coordinates, got {}",
                other.len()
            ))),
        }
    }

    /// Unit vector at angle `theta` in the plane.
    pub fn from_angle(theta: f64) -> Self {
        Vector::new2(theta.cos(), theta.sin())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn get(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim);
        self.coords[i]
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut acc = 0.0;
        for i in 0..self.dim {
            acc += self.coords[i] * other.coords[i];
        }
        acc
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.sub(other).norm()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = [0.0; 3];
        for i in 0..self.dim {
            c[i] = self.coords[i] + other.coords[i];
        }
        Vector {
            dim: self.dim,
            coords: c,
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = [0.0; 3];
        for i in 0..self.dim {
            c[i] = self.coords[i] - other.coords[i];
        }
        Vector {
            dim: self.dim,
            coords: c,
        }
    }

    pub fn scale(&self, t: f64) -> Vector {
        let mut c = [0.0; 3];
        for i in 0..self.dim {
            c[i] = self.coords[i] * t;
        }
        Vector {
            dim: self.dim,
            coords: c,
        }
    }

    pub fn neg(&self) -> Vector {
        self.scale(-1.0)
    }

    /// Returns the unit vector in this direction, or an error for the zero
    /// vector.
    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Planar angle in [0, 2*pi). Panics on 3-D vectors.
    pub fn angle(&self) -> f64 {
        assert_eq!(self.dim, 2, "angle is defined for planar vectors");
        let a = self.coords[1].atan2(self.coords[0]);
        if a < 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }

    /// Cross product; 2-D inputs return the scalar z-component embedded in a
    /// 3-D vector.
    pub fn cross(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim, other.dim);
        let a = &self.coords;
        let b = &other.coords;
        Vector::new3(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    }

    /// z-component of the planar cross product.
    pub fn cross2(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, 2);
        self.coords[0] * other.coords[1] - self.coords[1] * other.coords[0]
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An orthogonal linear map (rotation or reflection) in dimension 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    dim: usize,
    // Row-major; acts on column vectors from the left.
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3);
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Rotation { dim, m }
    }

    pub fn from_angle_2d(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Rotation {
            dim: 2,
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Builds a rotation from explicit rows; the matrix must be orthogonal
    /// within 1e-9.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if !(dim == 2 || dim == 3) || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::UnsupportedDimension(
                "rotation matrix must be square of size 2 or 3".into(),
            ));
        }
        let mut m = [[0.0; 3]; 3];
        m[2][2] = 1.0;
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidInput(
                        "rotation entries must be finite".into(),
                    ));
                }
                m[i][j] = *v;
            }
        }
        let r = Rotation { dim, m };
        // Orthogonality: R^T R = I.
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = 0.0;
                for k in 0..dim {
                    acc += r.m[k][i] * r.m[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                if (acc - want).abs() > 1e-9 {
                    return Err(Error::InvalidGeometry(
                        "rotation matrix is not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.dim, v.dim());
        let mut c = [0.0; 3];
        for i in 0..self.dim {
            for j in 0..self.dim {
                c[i] += self.m[i][j] * v.get(j);
            }
        }
        Vector {
            dim: self.dim,
            coords: c,
        }
    }

    pub fn apply_transpose(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.dim, v.dim());
        let mut c = [0.0; 3];
        for i in 0..self.dim {
            for j in 0..self.dim {
                c[i] += self.m[j][i] * v.get(j);
            }
        }
        Vector {
            dim: self.dim,
            coords: c,
        }
    }
}
