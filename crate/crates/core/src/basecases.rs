//! Certified small-dimension acute sets and the annealing search that
//! produced them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{Meta, Point, PointSet, Source};
use crate::io;
use crate::rational::{self, Rational};
use crate::verifier::{self, Mode, VerificationReport};

/// Catalog sizes for `d = 1..=5`.
pub const CATALOG_SIZES: [usize; 5] = [2, 3, 5, 8, 12];

const CATALOG_JSON: [&str; 5] = [
    include_str!("../data/catalog/d1.json"),
    include_str!("../data/catalog/d2.json"),
    include_str!("../data/catalog/d3.json"),
    include_str!("../data/catalog/d4.json"),
    include_str!("../data/catalog/d5.json"),
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub dim: usize,
    pub target_size: usize,
    pub points: PointSet,
    pub certificate: VerificationReport,
}

pub fn catalog_id(d: usize) -> String {
    format!("d{d}")
}

/// Parses a catalog id such as `d4` (a bare `4` is accepted too).
pub fn parse_catalog_id(id: &str) -> Result<usize> {
    let digits = id.strip_prefix('d').unwrap_or(id);
    match digits.parse::<usize>() {
        Ok(d @ 1..=5) => Ok(d),
        _ => Err(Error::InvalidArgument(format!(
            "unknown catalog id {id:?} (expected d1..d5)"
        ))),
    }
}

/// Loads the shipped entry for `d` and re-certifies it exactly.
pub fn base_set(d: usize) -> Result<CatalogEntry> {
    if !(1..=5).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "catalog covers d = 1..5, got {d}"
        )));
    }
    let mismatch = |reason: String| Error::CertificateMismatch { dim: d, reason };
    let points = io::from_json(CATALOG_JSON[d - 1]).map_err(|e| mismatch(e.to_string()))?;
    certify_entry(points, d, CATALOG_SIZES[d - 1]).map_err(|e| match e {
        Error::CertificateMismatch { reason, .. } => mismatch(reason),
        other => mismatch(other.to_string()),
    })
}

/// Checks dimension, size, exact acuteness, and the recorded `s_min` if any.
pub fn certify_entry(points: PointSet, dim: usize, target_size: usize) -> Result<CatalogEntry> {
    let mismatch = |reason: String| Error::CertificateMismatch { dim, reason };
    if points.dim() != dim || points.len() != target_size {
        return Err(mismatch(format!(
            "expected {target_size} points in R^{dim}, found {} in R^{}",
            points.len(),
            points.dim()
        )));
    }
    let certificate = verifier::verify_acute(&points, Mode::Exact)?;
    if !certificate.verdict.is_acute() {
        return Err(mismatch(format!("verdict {:?}", certificate.verdict)));
    }
    if let Some(Value::String(recorded)) = points.meta.extra.get("s_min") {
        let recorded = rational::parse_rational(recorded)?;
        if Some(&recorded) != certificate.s_min.as_ref() {
            return Err(mismatch(format!(
                "recorded s_min {recorded} does not match recomputation"
            )));
        }
    }
    Ok(CatalogEntry {
        dim,
        target_size,
        points,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub dim: usize,
    pub target_size: usize,
    pub seed: u64,
    pub max_iters: u64,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub perturbation_scale: f64,
    pub max_denominator: u64,
    /// Minimum cosine the float configuration must reach before exact
    /// certification is attempted.
    pub margin: f64,
}

impl SearchConfig {
    pub fn new(dim: usize, target_size: usize, seed: u64) -> Self {
        SearchConfig {
            dim,
            target_size,
            seed,
            max_iters: 200_000,
            initial_temperature: 0.01,
            cooling_rate: 0.99997,
            perturbation_scale: 0.05,
            max_denominator: 10_000,
            margin: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.dim == 0 || self.target_size == 0 {
            return bad("dim and target_size must be positive");
        }
        if self.max_iters == 0 || self.max_denominator == 0 {
            return bad("max_iters and max_denominator must be positive");
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.initial_temperature)
            || !positive(self.perturbation_scale)
            || !positive(self.margin)
        {
            return bad("temperature, perturbation scale and margin must be positive");
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return bad("cooling_rate must lie in (0, 1)");
        }
        Ok(())
    }
}

/// Minimum cosine over all angles of the configuration; 1 for fewer than
/// three points, -1 if two points coincide.
pub fn min_cosine(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let mut best = 1.0f64;
    let mut unit = vec![Vec::new(); n];
    for x in 0..n {
        for (y, u) in unit.iter_mut().enumerate() {
            u.clear();
            if y == x {
                continue;
            }
            u.extend(points[y].iter().zip(&points[x]).map(|(a, b)| a - b));
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return -1.0;
            }
            u.iter_mut().for_each(|v| *v /= norm);
        }
        for y in 0..n {
            for z in y + 1..n {
                if y != x && z != x {
                    let c: f64 = unit[y].iter().zip(&unit[z]).map(|(a, b)| a * b).sum();
                    best = best.min(c);
                }
            }
        }
    }
    best
}

/// Centers the configuration and scales its largest coordinate to 1.
fn normalize(points: &mut [Vec<f64>]) {
    let n = points.len() as f64;
    let dim = points[0].len();
    for k in 0..dim {
        let mean = points.iter().map(|p| p[k]).sum::<f64>() / n;
        points.iter_mut().for_each(|p| p[k] -= mean);
    }
    let scale = points.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale > 0.0 {
        points.iter_mut().flatten().for_each(|v| *v /= scale);
    }
}

fn certify_floats(
    points: &[Vec<f64>],
    cfg: &SearchConfig,
    objective: f64,
    iteration: u64,
) -> Option<CatalogEntry> {
    let mut scaled = points.to_vec();
    normalize(&mut scaled);
    let mut meta = Meta::new(Source::Search);
    meta.extra.insert("seed".into(), cfg.seed.into());
    meta.extra.insert("iteration".into(), iteration.into());
    meta.extra
        .insert("float_objective".into(), objective.into());
    let set = io::point_set_from_floats(&scaled, Some(cfg.max_denominator), meta).ok()?;
    let entry = certify_entry(set, cfg.dim, cfg.target_size).ok()?;
    let mut points = entry.points;
    let s = entry
        .certificate
        .s_min
        .as_ref()
        .map(rational::format_rational);
    if let Some(s) = s {
        points.meta.extra.insert("s_min".into(), s.into());
    }
    Some(CatalogEntry { points, ..entry })
}

/// Simulated annealing over `target_size` points in `R^dim`, maximizing the
/// smallest angle cosine. A result is returned only once its rationalized
/// coordinates pass exact verification.
pub fn search_acute(cfg: &SearchConfig) -> Result<Option<CatalogEntry>> {
    cfg.validate()?;
    let (d, n) = (cfg.dim, cfg.target_size);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = 0.1;
    let mut current: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let base = if i < d && i == k { 1.0 } else { 0.0 };
                    let spread = if i < d { noise } else { 1.0 };
                    base + rng.gen_range(-spread..spread)
                })
                .collect()
        })
        .collect();
    let mut current_obj = min_cosine(&current);
    let mut best = current.clone();
    let mut best_obj = current_obj;
    let mut attempted_obj = f64::NEG_INFINITY;
    let mut temperature = cfg.initial_temperature;

    for iter in 0..cfg.max_iters {
        if best_obj > cfg.margin && best_obj > attempted_obj {
            attempted_obj = best_obj;
            if let Some(entry) = certify_floats(&best, cfg, best_obj, iter) {
                return Ok(Some(entry));
            }
        }
        let i = rng.gen_range(0..n);
        let step =
            cfg.perturbation_scale * (temperature / cfg.initial_temperature).sqrt().max(1e-3);
        let old = current[i].clone();
        current[i]
            .iter_mut()
            .for_each(|v| *v += rng.gen_range(-step..step));
        let obj = min_cosine(&current);
        let accept =
            obj >= current_obj || rng.gen::<f64>() < ((obj - current_obj) / temperature).exp();
        if accept {
            current_obj = obj;
            if obj > best_obj {
                best_obj = obj;
                best.clone_from(&current);
            }
        } else {
            current[i] = old;
        }
        temperature *= cfg.cooling_rate;
    }
    if best_obj > cfg.margin && best_obj > attempted_obj {
        return Ok(certify_floats(&best, cfg, best_obj, cfg.max_iters));
    }
    Ok(None)
}

/// Converts raw rational rows into a catalog-format point set.
pub fn catalog_point_set(dim: usize, rows: Vec<Vec<Rational>>) -> Result<PointSet> {
    PointSet::new(
        dim,
        rows.into_iter().map(Point::new).collect(),
        Meta::new(Source::Catalog),
    )
}
