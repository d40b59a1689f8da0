//! Lifting an acute set in `R^d` to an acute set of twice the size in
//! `R^(d+2)`.
//!
//! Each point `x` becomes `(x, +phi(x))` and `(x, -phi(x))`, where the `phi`
//! are distinct rational points of a circle of radius `r` with `4r^2 < s` and
//! `s` is a positive lower bound on the set's minimum apex dot. For lifted
//! triples with distinct bases the apex dot is the base dot plus a circle
//! term of absolute value at most `4r^2`; when the apex shares its base with
//! another point the dot is `2(r^2 +- <phi(x), phi(z)>)`. Both are positive,
//! and the smaller of the two margins bounds the new set's minimum apex dot.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basecases;
use crate::error::{Error, Result};
use crate::geometry::{Meta, Point, PointSet, Source};
use crate::rational::{self, Rational};
use crate::verifier;

/// A rational point on the circle of radius `r`, from the tangent half-angle
/// parametrization at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePoint {
    pub t: Rational,
    pub coords: [Rational; 2],
}

impl CirclePoint {
    pub fn new(t: Rational, r: &Rational) -> Self {
        let t2 = &t * &t;
        let denom = Rational::one() + &t2;
        let cx = r * (Rational::one() - &t2) / &denom;
        let cy = r * (&t * rational::int(2)) / denom;
        CirclePoint {
            t,
            coords: [cx, cy],
        }
    }

    pub fn dot(&self, other: &CirclePoint) -> Rational {
        &self.coords[0] * &other.coords[0] + &self.coords[1] * &other.coords[1]
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn negated(&self) -> [Rational; 2] {
        [-&self.coords[0], -&self.coords[1]]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingStep {
    pub dim_before: usize,
    pub n_before: usize,
    #[serde(with = "rational")]
    pub s_lower_bound: Rational,
    #[serde(with = "rational")]
    pub r: Rational,
    #[serde(rename = "circle_parameters", with = "rational::vec")]
    pub t: Vec<Rational>,
    /// Largest `|<phi_i, phi_j>|` over `i != j`.
    #[serde(rename = "max_circle_dot", with = "rational")]
    pub m: Rational,
    /// Certified lower bound carried to the next step.
    #[serde(with = "rational")]
    pub s_next: Rational,
    /// Exact minimum apex dot of the output, when recomputed.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "rational::opt"
    )]
    pub s_exact: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub base_id: String,
    pub steps: Vec<DoublingStep>,
}

/// The largest `r = 2^-k`, `k >= 0`, with `4r^2 < s`.
pub fn choose_radius(s: &Rational) -> Result<Rational> {
    if !s.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "radius needs s > 0, got {s}"
        )));
    }
    let four = rational::int(4);
    let mut r = Rational::one();
    while &four * &r * &r >= *s {
        r /= rational::int(2);
    }
    Ok(r)
}

/// `n` points on the radius-`r` circle at `t_i = (i+1)/(n+1)`, all in the
/// open first quadrant, so no two of `+-phi_i` coincide.
pub fn circle_points(n: usize, r: &Rational) -> Result<Vec<CirclePoint>> {
    if n == 0 {
        return Err(Error::InvalidArgument("circle_points needs n >= 1".into()));
    }
    if !r.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {r}"
        )));
    }
    let den = BigInt::from(n + 1);
    Ok((0..n)
        .map(|i| CirclePoint::new(Rational::new(BigInt::from(i + 1), den.clone()), r))
        .collect())
}

/// `max |<phi_i, phi_j>|` over `i != j`, zero for a single point.
pub fn max_cross_dot(phis: &[CirclePoint]) -> Rational {
    let mut m = Rational::zero();
    for (i, a) in phis.iter().enumerate() {
        for b in &phis[i + 1..] {
            let d = a.dot(b).abs();
            if d > m {
                m = d;
            }
        }
    }
    m
}

/// `min(s_lb - 4r^2, 2(r^2 - M))`: a certified lower bound on the minimum
/// apex dot of the doubled set.
pub fn certified_s_bound(s_lb: &Rational, r: &Rational, phis: &[CirclePoint]) -> Result<Rational> {
    let r2 = r * r;
    let margin = s_lb - rational::int(4) * &r2;
    if !margin.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "need 4r^2 < s, got r = {r}, s = {s_lb}"
        )));
    }
    for (i, a) in phis.iter().enumerate() {
        if a.norm_sq() != r2 {
            return Err(Error::InvalidArgument(format!(
                "circle point {i} is not on the radius-{r} circle"
            )));
        }
        for (j, b) in phis.iter().enumerate().skip(i + 1) {
            if a.coords == b.coords || a.coords == b.negated() {
                return Err(Error::InvalidArgument(format!(
                    "circle points {i} and {j} coincide up to sign"
                )));
            }
        }
    }
    let m = max_cross_dot(phis);
    let equal_base = rational::int(2) * (r2 - m);
    Ok(if margin < equal_base {
        margin
    } else {
        equal_base
    })
}

/// Lifts `set` into `R^(dim+2)`. Point `2i` is `(x_i, +phi_i)`, point `2i+1`
/// is `(x_i, -phi_i)`.
pub fn double(set: &PointSet, s_lb: &Rational) -> Result<(PointSet, DoublingStep)> {
    if set.is_empty() {
        return Err(Error::TooFewPoints {
            needed: 1,
            found: 0,
        });
    }
    let r = choose_radius(s_lb)?;
    let phis = circle_points(set.len(), &r)?;
    let s_next = certified_s_bound(s_lb, &r, &phis)?;
    let mut points = Vec::with_capacity(2 * set.len());
    for (x, phi) in set.points().iter().zip(&phis) {
        points.push(x.extend(&phi.coords));
        points.push(x.extend(&phi.negated()));
    }
    let lifted = PointSet::new(set.dim() + 2, points, set.meta.clone())?;
    let step = DoublingStep {
        dim_before: set.dim(),
        n_before: set.len(),
        s_lower_bound: s_lb.clone(),
        m: max_cross_dot(&phis),
        t: phis.into_iter().map(|p| p.t).collect(),
        r,
        s_next,
        s_exact: None,
    };
    Ok((lifted, step))
}

#[derive(Clone, Debug, Default)]
pub struct ConstructOptions {
    /// Catalog dimension to start from instead of the default 4 or 5.
    pub base: Option<usize>,
    /// Recompute the exact minimum apex dot after every step.
    pub recheck_exact: bool,
}

/// Catalog dimension used for target `d` when no base is requested.
pub fn default_base(d: usize) -> usize {
    match d {
        0..=5 => d,
        _ if d.is_multiple_of(2) => 4,
        _ => 5,
    }
}

/// Size of `construct(d)` from the default bases.
pub fn expected_size(d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let base = default_base(d);
    basecases::CATALOG_SIZES[base - 1] << ((d - base) / 2)
}

pub fn construct(d: usize) -> Result<(PointSet, ConstructionTrace)> {
    construct_with(d, &ConstructOptions::default())
}

pub fn construct_with(d: usize, opts: &ConstructOptions) -> Result<(PointSet, ConstructionTrace)> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let base_dim = opts.base.unwrap_or_else(|| default_base(d));
    if base_dim > d || !(d - base_dim).is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "base d{base_dim} cannot reach d={d} by steps of two dimensions"
        )));
    }
    let entry = basecases::base_set(base_dim)?;
    let mut trace = ConstructionTrace {
        base_id: basecases::catalog_id(base_dim),
        steps: Vec::new(),
    };
    let mut set = entry.points;
    if base_dim < d {
        let (mut s_lb, _) = verifier::min_apex_dot(&set)?;
        while set.dim() < d {
            let (next, mut step) = double(&set, &s_lb)?;
            if opts.recheck_exact {
                let (exact, _) = verifier::min_apex_dot(&next)?;
                if exact < step.s_next {
                    return Err(Error::CertificateMismatch {
                        dim: next.dim(),
                        reason: format!("exact s {exact} below carried bound {}", step.s_next),
                    });
                }
                step.s_exact = Some(exact);
            }
            s_lb = step.s_next.clone();
            trace.steps.push(step);
            set = next;
        }
    }
    let mut meta = Meta::new(Source::Construction);
    meta.trace = Some(trace.clone());
    let set = PointSet::new(set.dim(), set.points().to_vec(), meta)?;
    Ok((set, trace))
}

/// Splits a lifted point into its base and circle parts.
pub fn split_lifted(p: &Point) -> (Point, Point) {
    let k = p.dim() - 2;
    (
        Point::new(p.coords()[..k].to_vec()),
        Point::new(p.coords()[k..].to_vec()),
    )
}
