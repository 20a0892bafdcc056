//! Body specification documents.
//!
//! A body is described by a TOML document with a `kind` key and per-kind
//! parameters; composite bodies nest tables. Unknown keys are rejected and
//! parse errors carry the offending line and column.
//!
//! ```toml
//! kind = "minkowski_sum"
//! [left]
//! kind = "ball"
//! center = [0.0, 0.0]
//! radius = 1.0
//! [right]
//! kind = "ellipsoid"
//! center = [0.0, 0.0]
//! semi_axes = [2.0, 1.0]
//! rotation_angle = 0.5
//! ```

use polyapprox::{ConvexBody, Error, Rotation, Vector};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        #[serde(default)]
        rotation_angle: Option<f64>,
        #[serde(default)]
        rotation: Option<Vec<Vec<f64>>>,
    },
    PowerCap {
        exponent: f64,
    },
    BallIntersection {
        centers: Vec<Vec<f64>>,
        radius: f64,
    },
    MinkowskiSum {
        left: Box<BodySpec>,
        right: Box<BodySpec>,
    },
    Translate {
        inner: Box<BodySpec>,
        shift: Vec<f64>,
    },
    HPolytope {
        /// Rows of `n` normal coordinates followed by the offset.
        halfspaces: Vec<Vec<f64>>,
    },
}

/// Errors from reading a body document: syntax (with position) or an invalid
/// geometric description.
#[derive(Debug)]
pub enum SpecError {
    Parse(String),
    Construct(Error),
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecError::Parse(msg) => write!(f, "body spec parse error: {msg}"),
            SpecError::Construct(e) => write!(f, "body spec invalid: {e}"),
        }
    }
}

impl std::error::Error for SpecError {}

pub fn parse_body(text: &str) -> Result<ConvexBody, SpecError> {
    let spec: BodySpec = toml::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // Tagged-enum validation errors come without spans; recover the
        // position of the offending key from the source.
        if e.span().is_none() {
            if let Some((line, column)) = position_hint(text, &msg) {
                return SpecError::Parse(format!("at line {line}, column {column}: {msg}"));
            }
        }
        SpecError::Parse(msg)
    })?;
    build(&spec).map_err(SpecError::Construct)
}

/// Line/column of the first key mentioned in backticks in `msg`.
fn position_hint(text: &str, msg: &str) -> Option<(usize, usize)> {
    let start = msg.find('`')? + 1;
    let end = msg[start..].find('`')? + start;
    let key = &msg[start..end];
    for (ln, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix(key) {
            if rest.trim_start().starts_with('=') {
                return Some((ln + 1, line.len() - trimmed.len() + 1));
            }
        }
    }
    None
}

pub fn build(spec: &BodySpec) -> Result<ConvexBody, Error> {
    match spec {
        BodySpec::Ball { center, radius } => ConvexBody::ball(Vector::from_slice(center)?, *radius),
        BodySpec::Ellipsoid {
            center,
            semi_axes,
            rotation_angle,
            rotation,
        } => {
            let center = Vector::from_slice(center)?;
            let rot = match (rotation_angle, rotation) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidInput(
                        "give rotation_angle or rotation, not both".into(),
                    ))
                }
                (Some(theta), None) => {
                    if center.dim() != 2 {
                        return Err(Error::UnsupportedDimension(
                            "rotation_angle is planar only".into(),
                        ));
                    }
                    Rotation::from_angle_2d(*theta)
                }
                (None, Some(rows)) => Rotation::from_rows(rows)?,
                (None, None) => Rotation::identity(center.dim()),
            };
            ConvexBody::ellipsoid(center, semi_axes.clone(), rot)
        }
        BodySpec::PowerCap { exponent } => ConvexBody::power_cap(*exponent),
        BodySpec::BallIntersection { centers, radius } => {
            let centers: Result<Vec<Vector>, Error> =
                centers.iter().map(|c| Vector::from_slice(c)).collect();
            ConvexBody::ball_intersection(centers?, *radius)
        }
        BodySpec::MinkowskiSum { left, right } => {
            ConvexBody::minkowski_sum(build(left)?, build(right)?)
        }
        BodySpec::Translate { inner, shift } => {
            ConvexBody::translate(build(inner)?, Vector::from_slice(shift)?)
        }
        BodySpec::HPolytope { halfspaces } => {
            let rows: Result<Vec<(Vector, f64)>, Error> = halfspaces
                .iter()
                .map(|row| {
                    if row.len() < 3 {
                        return Err(Error::InvalidInput(
                            "halfspace rows need at least two coordinates and an offset".into(),
                        ));
                    }
                    let (coords, off) = row.split_at(row.len() - 1);
                    Ok((Vector::from_slice(coords)?, off[0]))
                })
                .collect();
            ConvexBody::h_polytope(rows?)
        }
    }
}
