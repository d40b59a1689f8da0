//! Acuteness certification by exhaustive triple enumeration.
//!
//! Exact mode scales every coordinate by the common denominator of the whole
//! set and works on the integer Gram matrix `G`, using
//! `<y-x, z-x> = G[y][z] - G[x][y] - G[x][z] + G[x][x]`. Apexes are scanned in
//! parallel and reduced in index order, so witnesses do not depend on the
//! thread schedule.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::rational::{self, Rational};

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Acute,
    RightAnglePresent,
    ObtusePresent,
    Indeterminate,
}

impl Verdict {
    pub fn is_acute(self) -> bool {
        self == Verdict::Acute
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Float { tolerance: f64 },
}

impl Mode {
    pub fn float() -> Self {
        Mode::Float {
            tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    /// Minimum of `<y-x, z-x>` over `x != y`, `x != z` (y = z allowed).
    #[serde(with = "rational::opt")]
    pub s_min: Option<Rational>,
    /// `[apex, y, z]`; absent for fewer than three points.
    pub witness: Option<[usize; 3]>,
    pub min_angle_deg: Option<f64>,
    pub mode: ModeKind,
    pub tolerance: Option<f64>,
    pub n: usize,
    pub dim: usize,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    /// Equality of everything except timing.
    pub fn same_certificate(&self, other: &VerificationReport) -> bool {
        self.verdict == other.verdict
            && self.s_min == other.s_min
            && self.witness == other.witness
            && self.mode == other.mode
            && self.n == other.n
            && self.dim == other.dim
    }
}

/// A candidate minimum with its `(apex, y, z)` indices.
type Candidate<T> = Option<(T, [usize; 3])>;

fn take_min<T: Ord>(best: &mut Candidate<T>, cand: Candidate<T>) {
    if let Some((v, w)) = cand {
        match best {
            Some((bv, bw)) if (&*bv, *bw) <= (&v, w) => {}
            _ => *best = Some((v, w)),
        }
    }
}

struct ExactScan {
    /// Over `y <= z`, both different from the apex.
    overall: Candidate<BigInt>,
    /// Over `y < z`, both different from the apex.
    distinct: Candidate<BigInt>,
}

/// Integer Gram matrix of the set scaled by the common denominator `L`.
/// Every apex dot it yields equals the true dot times `L^2`.
struct ScaledGram {
    n: usize,
    gram: Vec<BigInt>,
    inv_scale_sq: Rational,
}

impl ScaledGram {
    fn new(set: &PointSet) -> Self {
        let lcm = set
            .points()
            .iter()
            .flat_map(|p| p.coords())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Vec<BigInt>> = set
            .points()
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect()
            })
            .collect();
        let n = ints.len();
        let rows: Vec<Vec<BigInt>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| ints[i].iter().zip(&ints[j]).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        let inv_scale_sq = Rational::new(BigInt::one(), &lcm * &lcm);
        ScaledGram {
            n,
            gram: rows.into_iter().flatten().collect(),
            inv_scale_sq,
        }
    }

    fn g(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i * self.n + j]
    }

    fn unscale(&self, v: BigInt) -> Rational {
        Rational::from_integer(v) * &self.inv_scale_sq
    }

    fn scan_apex(&self, x: usize) -> ExactScan {
        let n = self.n;
        let gxx = self.g(x, x);
        // dot(y, z) = G[y][z] + (G[x][x] - G[x][y]) - G[x][z]
        let left: Vec<BigInt> = (0..n).map(|y| gxx - self.g(x, y)).collect();
        let mut overall: Candidate<BigInt> = None;
        let mut distinct: Candidate<BigInt> = None;
        for y in (0..n).filter(|&y| y != x) {
            for z in (y..n).filter(|&z| z != x) {
                let mut dot = self.g(y, z) + &left[y];
                dot -= self.g(x, z);
                let w = [x, y, z];
                if overall.as_ref().is_none_or(|(v, _)| dot < *v) {
                    overall = Some((dot.clone(), w));
                }
                if z != y && distinct.as_ref().is_none_or(|(v, _)| dot < *v) {
                    distinct = Some((dot, w));
                }
            }
        }
        ExactScan { overall, distinct }
    }

    fn scan(&self) -> ExactScan {
        let per_apex: Vec<ExactScan> = (0..self.n)
            .into_par_iter()
            .map(|x| self.scan_apex(x))
            .collect();
        let mut out = ExactScan {
            overall: None,
            distinct: None,
        };
        for s in per_apex {
            take_min(&mut out.overall, s.overall);
            take_min(&mut out.distinct, s.distinct);
        }
        out
    }
}

/// The minimum of `<y-x, z-x>` over ordered triples with `x != y`, `x != z`
/// (`y = z` allowed), with the lexicographically smallest witness.
pub fn min_apex_dot(set: &PointSet) -> Result<(Rational, [usize; 3])> {
    if set.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: set.len(),
        });
    }
    let gram = ScaledGram::new(set);
    let (v, w) = gram
        .scan()
        .overall
        .expect("two points give at least one triple");
    Ok((gram.unscale(v), w))
}

pub fn verify_acute(set: &PointSet, mode: Mode) -> Result<VerificationReport> {
    if set.is_empty() {
        return Err(Error::TooFewPoints {
            needed: 1,
            found: 0,
        });
    }
    let start = Instant::now();
    let mut report = match mode {
        Mode::Exact => verify_exact(set),
        Mode::Float { tolerance } => {
            if !(tolerance.is_finite() && tolerance > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance must be positive, got {tolerance}"
                )));
            }
            verify_float(set, tolerance)
        }
    };
    report.min_angle_deg = min_angle_deg(set).ok();
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn blank_report(set: &PointSet, mode: ModeKind, tolerance: Option<f64>) -> VerificationReport {
    VerificationReport {
        verdict: Verdict::Acute,
        s_min: None,
        witness: None,
        min_angle_deg: None,
        mode,
        tolerance,
        n: set.len(),
        dim: set.dim(),
        elapsed_ms: 0.0,
    }
}

fn verify_exact(set: &PointSet) -> VerificationReport {
    let mut report = blank_report(set, ModeKind::Exact, None);
    if set.len() < 2 {
        return report;
    }
    let gram = ScaledGram::new(set);
    let scan = gram.scan();
    let (s, _) = scan.overall.expect("n >= 2");
    report.s_min = Some(gram.unscale(s));
    if let Some((v, w)) = scan.distinct {
        report.verdict = if v.is_positive() {
            Verdict::Acute
        } else if v.is_zero() {
            Verdict::RightAnglePresent
        } else {
            Verdict::ObtusePresent
        };
        report.witness = Some(w);
    }
    report
}

fn verify_float(set: &PointSet, tol: f64) -> VerificationReport {
    let mut report = blank_report(set, ModeKind::Float, Some(tol));
    if set.len() < 3 {
        return report;
    }
    let pts = set.to_f64();
    let n = pts.len();
    let per_apex: Vec<(Candidate<OrdF64>, bool)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let diffs: Vec<Vec<f64>> = pts
                .iter()
                .map(|p| p.iter().zip(&pts[x]).map(|(a, b)| a - b).collect())
                .collect();
            let mut best: Candidate<OrdF64> = None;
            let mut near_zero = false;
            for y in (0..n).filter(|&y| y != x) {
                for z in (y + 1..n).filter(|&z| z != x) {
                    let dot: f64 = diffs[y].iter().zip(&diffs[z]).map(|(a, b)| a * b).sum();
                    near_zero |= dot.abs() < tol;
                    take_min(&mut best, Some((OrdF64(dot), [x, y, z])));
                }
            }
            (best, near_zero)
        })
        .collect();
    let mut best = None;
    let mut near_zero = false;
    for (b, nz) in per_apex {
        take_min(&mut best, b);
        near_zero |= nz;
    }
    let (OrdF64(min), w) = best.expect("n >= 3");
    report.witness = Some(w);
    report.verdict = if min <= -tol {
        Verdict::ObtusePresent
    } else if near_zero {
        Verdict::Indeterminate
    } else {
        Verdict::Acute
    };
    report
}

#[derive(Clone, Copy)]
struct OrdF64(f64);

impl PartialEq for OrdF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Smallest angle, in degrees, over all triples of distinct points.
pub fn min_angle_deg(set: &PointSet) -> Result<f64> {
    if set.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            found: set.len(),
        });
    }
    let pts = set.to_f64();
    let n = pts.len();
    let max_cos = (0..n)
        .into_par_iter()
        .map(|x| {
            let diffs: Vec<Vec<f64>> = pts
                .iter()
                .map(|p| p.iter().zip(&pts[x]).map(|(a, b)| a - b).collect())
                .collect();
            let norms: Vec<f64> = diffs
                .iter()
                .map(|d| d.iter().map(|v| v * v).sum::<f64>().sqrt())
                .collect();
            let mut best = f64::NEG_INFINITY;
            for y in (0..n).filter(|&y| y != x) {
                for z in (y + 1..n).filter(|&z| z != x) {
                    let dot: f64 = diffs[y].iter().zip(&diffs[z]).map(|(a, b)| a * b).sum();
                    best = best.max(dot / (norms[y] * norms[z]));
                }
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(max_cos.clamp(-1.0, 1.0).acos().to_degrees())
}
