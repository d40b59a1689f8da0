//! Random hypercube vertices with right-angle deletion.
//!
//! Apex dots between 0/1 vectors are sums of terms `(y_i - x_i)(z_i - x_i)`,
//! each 0 or 1, so no angle is obtuse. Removing one point from every right
//! triple leaves an acute set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Meta, Point, PointSet, Source};

#[derive(Clone, Debug, Serialize)]
pub struct EfRun {
    pub dim: usize,
    pub sample_size: usize,
    pub seed: u64,
    pub sampled: Vec<Vec<u8>>,
    pub duplicates_removed: usize,
    /// Right triples `{apex; y, z}` among the deduplicated sample.
    pub right_triples_found: usize,
    pub deleted: usize,
    #[serde(skip)]
    pub output: PointSet,
}

/// `ceil((2/sqrt(3))^d)`.
pub fn default_sample_size(d: usize) -> usize {
    (2.0 / 3f64.sqrt()).powi(d as i32).ceil() as usize
}

pub fn cube_apex_dot(x: &[u8], y: &[u8], z: &[u8]) -> i64 {
    x.iter()
        .zip(y)
        .zip(z)
        .map(|((&a, &b), &c)| (b as i64 - a as i64) * (c as i64 - a as i64))
        .sum()
}

/// First right triple in `(apex, y, z)` order with `y < z`.
fn first_right_triple(pts: &[Vec<u8>]) -> Option<[usize; 3]> {
    let n = pts.len();
    (0..n).find_map(|x| {
        (0..n).filter(|&y| y != x).find_map(|y| {
            (y + 1..n)
                .filter(|&z| z != x)
                .find(|&z| cube_apex_dot(&pts[x], &pts[y], &pts[z]) == 0)
                .map(|z| [x, y, z])
        })
    })
}

fn count_right_triples(pts: &[Vec<u8>]) -> usize {
    let n = pts.len();
    let mut count = 0;
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            for z in (y + 1..n).filter(|&z| z != x) {
                let dot = cube_apex_dot(&pts[x], &pts[y], &pts[z]);
                debug_assert!(dot >= 0);
                count += usize::from(dot == 0);
            }
        }
    }
    count
}

pub fn ef_generate(d: usize, seed: u64, samples: Option<usize>) -> Result<EfRun> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("ef needs d >= 2, got {d}")));
    }
    let sample_size = samples.unwrap_or_else(|| default_sample_size(d));
    if sample_size == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled: Vec<Vec<u8>> = (0..sample_size)
        .map(|_| (0..d).map(|_| rng.gen_range(0..=1u8)).collect())
        .collect();

    let mut kept: Vec<Vec<u8>> = Vec::with_capacity(sampled.len());
    for v in &sampled {
        if !kept.contains(v) {
            kept.push(v.clone());
        }
    }
    let duplicates_removed = sampled.len() - kept.len();
    let right_triples_found = count_right_triples(&kept);

    let mut deleted = 0;
    while let Some(triple) = first_right_triple(&kept) {
        let victim = triple.into_iter().max().expect("three indices");
        kept.remove(victim);
        deleted += 1;
    }

    let points = kept
        .iter()
        .map(|v| Point::from_ints(&v.iter().map(|&b| b as i64).collect::<Vec<_>>()))
        .collect();
    let mut meta = Meta::new(Source::Ef);
    meta.extra.insert("seed".into(), seed.into());
    meta.extra.insert("sample_size".into(), sample_size.into());
    let output = PointSet::new(d, points, meta)?;
    Ok(EfRun {
        dim: d,
        sample_size,
        seed,
        sampled,
        duplicates_removed,
        right_triples_found,
        deleted,
        output,
    })
}
