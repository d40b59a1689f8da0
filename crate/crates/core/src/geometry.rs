//! Points with exact rational coordinates and the apex scalar product.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::doubling::ConstructionTrace;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(#[serde(with = "rational::vec")] Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    /// Concatenates `self` with `tail`.
    pub fn extend(&self, tail: &[Rational]) -> Point {
        let mut coords = Vec::with_capacity(self.0.len() + tail.len());
        coords.extend_from_slice(&self.0);
        coords.extend_from_slice(tail);
        Point(coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The exact value of `<y - x, z - x>`.
pub fn apex_dot(x: &Point, y: &Point, z: &Point) -> Result<Rational> {
    for p in [y, z] {
        if p.dim() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                found: p.dim(),
            });
        }
    }
    Ok(apex_dot_unchecked(x.coords(), y.coords(), z.coords()))
}

pub(crate) fn apex_dot_unchecked(x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
    x.iter()
        .zip(y)
        .zip(z)
        .fold(Rational::zero(), |acc, ((xi, yi), zi)| {
            acc + (yi - xi) * (zi - xi)
        })
}

/// Where a point set came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Construction,
    Catalog,
    Search,
    Ef,
    #[default]
    External,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default = "default_format_version")]
    pub format_version: u32,
    #[serde(default)]
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
    #[serde(flatten)]
    pub extra: serde_json::Map<String, serde_json::Value>,
}

fn default_format_version() -> u32 {
    FORMAT_VERSION
}

impl Meta {
    pub fn new(source: Source) -> Self {
        Meta {
            format_version: FORMAT_VERSION,
            source,
            trace: None,
            extra: serde_json::Map::new(),
        }
    }
}

impl Default for Meta {
    fn default() -> Self {
        Meta::new(Source::External)
    }
}

/// A finite set of pairwise distinct points in `R^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    pub meta: Meta,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>, meta: Meta) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut seen = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        Ok(PointSet { dim, points, meta })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(Point::to_f64).collect()
    }

    /// The points at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points.get(i).cloned().ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "index {i} out of range for {} points",
                        self.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.dim, points, self.meta.clone())
    }

    /// Applies `f` to every point; the result must still be a valid set.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<PointSet> {
        let points: Vec<Point> = self.points.iter().map(f).collect();
        let dim = points.first().map_or(self.dim, Point::dim);
        PointSet::new(dim, points, self.meta.clone())
    }
}
