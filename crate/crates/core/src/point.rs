//! Points of the supported ground spaces.
//!
//! Three spaces are modelled: Euclidean points in dimension 1 to 3,
//! parametrised functions `(s, u)` over a base space of dimension 1 to 3,
//! and oriented lines `(theta, offset)` in the plane. Equality is exact
//! numeric equality; coincident points are represented through pattern
//! multiplicities, never through fuzzy matching.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Largest supported dimension of a Euclidean or base space.
pub const MAX_DIM: usize = 3;

/// A real vector of dimension `1..=MAX_DIM` with exact, total ordering.
#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Coords {
    v: [f64; MAX_DIM],
    dim: u8,
}

impl Coords {
    /// Builds a vector, rejecting non-finite entries and unsupported dimensions.
    /// Negative zero is normalised to zero so that equality stays numeric.
    pub fn new(values: &[f64]) -> Result<Self, CoreError> {
        if values.is_empty() || values.len() > MAX_DIM {
            return Err(CoreError::InvalidPoint(format!("dimension {} outside 1..={MAX_DIM}", values.len())));
        }
        let mut v = [0.0; MAX_DIM];
        for (slot, &x) in v.iter_mut().zip(values) {
            if !x.is_finite() {
                return Err(CoreError::InvalidPoint(format!("non-finite coordinate {x}")));
            }
            *slot = if x == 0.0 { 0.0 } else { x };
        }
        Ok(Self { v, dim: values.len() as u8 })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.v[..self.dim()]
    }

    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Euclidean distance; both vectors must share the dimension.
    pub fn dist(&self, other: &Coords) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice().iter().zip(other.as_slice()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl TryFrom<Vec<f64>> for Coords {
    type Error = CoreError;
    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Coords::new(&v)
    }
}

impl From<Coords> for Vec<f64> {
    fn from(c: Coords) -> Self {
        c.as_slice().to_vec()
    }
}

impl Ord for Coords {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            self.as_slice()
                .iter()
                .zip(other.as_slice())
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Coords {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Coords {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Coords {}

impl fmt::Debug for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

/// Identifies the ground space a point or pattern lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceTag {
    Euclid { dim: u8 },
    Param { dim: u8 },
    Line,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::Euclid { dim } => write!(f, "euclid(d={dim})"),
            SpaceTag::Param { dim } => write!(f, "param(d={dim})"),
            SpaceTag::Line => write!(f, "line"),
        }
    }
}

/// A point of one of the supported ground spaces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpacePoint {
    Euclid {
        x: Coords,
    },
    /// The function `r -> u - R |s - r|^beta` of the envelope family.
    Param {
        s: Coords,
        u: f64,
    },
    /// The half-plane `{x : <x, (cos theta, sin theta)> <= offset}`.
    Line {
        theta: f64,
        offset: f64,
    },
}

fn finite(x: f64, what: &str) -> Result<f64, CoreError> {
    if x.is_finite() {
        Ok(if x == 0.0 { 0.0 } else { x })
    } else {
        Err(CoreError::InvalidPoint(format!("non-finite {what} {x}")))
    }
}

impl SpacePoint {
    pub fn euclid(x: &[f64]) -> Result<Self, CoreError> {
        Ok(SpacePoint::Euclid { x: Coords::new(x)? })
    }

    pub fn param(s: &[f64], u: f64) -> Result<Self, CoreError> {
        Ok(SpacePoint::Param { s: Coords::new(s)?, u: finite(u, "height")? })
    }

    /// Builds a line; `theta` is reduced to `[0, 2pi)`.
    pub fn line(theta: f64, offset: f64) -> Result<Self, CoreError> {
        let theta = finite(theta, "angle")?;
        let offset = finite(offset, "offset")?;
        if offset < 0.0 {
            return Err(CoreError::InvalidPoint(format!("negative line offset {offset}")));
        }
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Ok(SpacePoint::Line { theta: t, offset })
    }

    /// Planar Euclidean point; panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Self::euclid(&[x, y]).expect("finite planar point")
    }

    pub fn space(&self) -> SpaceTag {
        match self {
            SpacePoint::Euclid { x } => SpaceTag::Euclid { dim: x.dim() as u8 },
            SpacePoint::Param { s, .. } => SpaceTag::Param { dim: s.dim() as u8 },
            SpacePoint::Line { .. } => SpaceTag::Line,
        }
    }

    /// Euclidean coordinates, if this is a Euclidean point.
    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            SpacePoint::Euclid { x } => Some(x.as_slice()),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            SpacePoint::Euclid { .. } => 0,
            SpacePoint::Param { .. } => 1,
            SpacePoint::Line { .. } => 2,
        }
    }
}

impl Ord for SpacePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use SpacePoint::*;
        match (self, other) {
            (Euclid { x: a }, Euclid { x: b }) => a.cmp(b),
            (Param { s: a, u: ua }, Param { s: b, u: ub }) => a.cmp(b).then(ua.total_cmp(ub)),
            (Line { theta: ta, offset: oa }, Line { theta: tb, offset: ob }) => ta.total_cmp(tb).then(oa.total_cmp(ob)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for SpacePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for SpacePoint {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for SpacePoint {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_equals_zero() {
        assert_eq!(SpacePoint::xy(-0.0, 1.0), SpacePoint::xy(0.0, 1.0));
    }

    #[test]
    fn rejects_non_finite_and_bad_dims() {
        assert!(SpacePoint::euclid(&[f64::NAN]).is_err());
        assert!(SpacePoint::euclid(&[]).is_err());
        assert!(SpacePoint::euclid(&[0.0; 4]).is_err());
        assert!(SpacePoint::line(0.0, -1.0).is_err());
    }

    #[test]
    fn line_angle_is_reduced() {
        let a = SpacePoint::line(-std::f64::consts::FRAC_PI_2, 1.0).unwrap();
        let b = SpacePoint::line(1.5 * std::f64::consts::PI, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn serde_round_trip() {
        let p = SpacePoint::param(&[0.25], 0.5).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let q: SpacePoint = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
