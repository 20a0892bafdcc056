//! Certified polyhedral approximation of strictly convex compacta.
//!
//! The crate builds external polyhedral approximations of convex bodies on
//! unit-direction grids, evaluates the approximation error exactly or with
//! certified resolution, and computes every error bound that links the grid
//! step to the body's modulus of convexity. A dense simplex core backs the
//! hull-value and inscribed-ball programs.
//!
//! ```
//! use polyapprox::convexity::{bound_main, Modulus};
//! use polyapprox::{external_approx, grid_uniform_2d, hausdorff_outer_2d, ConvexBody, Vector};
//!
//! let ball = ConvexBody::ball(Vector::zero(2), 1.0)?;
//! let grid = grid_uniform_2d(16)?;
//! let hat = external_approx(&ball, &grid)?;
//! let h = hausdorff_outer_2d(&hat, &ball)?; // sec(pi/16) - 1, exact
//! let bound = bound_main(&Modulus::AnalyticBall { radius: 1.0 }, grid.step(), 2.0)?;
//! assert!((h.value - 0.019591158).abs() < 1e-8);
//! assert!(h.value <= bound.value);
//! # Ok::<(), polyapprox::Error>(())
//! ```
//!
//! All types are immutable after construction and all operations are pure;
//! concurrent use requires no synchronization.

pub mod convexity;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod hull;
pub mod lp;
pub mod metrics;
pub mod vec;

mod hull2d;
mod numeric;

pub use error::{Error, Result};
pub use geometry::{power_cap_normals, ConvexBody, SupportEval, Supportable};
pub use grid::{grid_from_angles, grid_icosphere_3d, grid_uniform_2d, Decomposition, Grid};
pub use hull::{
    approx_co_value, approx_hull, approx_hull_recentered, co_value, external_approx, polytope_of,
    presupport_diff, presupport_min, restrict, restrict_body, u_extend, vertices_2d, GridFunction,
    HPolytope, SupportFn, VPolytope,
};
pub use lp::{chebyshev_ball, solve_max, LinearProgram, LpOutcome};
pub use metrics::{hausdorff_by_support, hausdorff_outer_2d, HausdorffResult, Method};
pub use vec::{Rotation, Vector};
