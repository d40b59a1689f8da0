//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::Instant;

use acute_core::basecases::{self, CATALOG_SIZES};
use acute_core::doubling::{self, split_lifted, DoublingStep};
use acute_core::ef;
use acute_core::geometry::{apex_dot, Meta, Point, PointSet};
use acute_core::rational::{self, int, ratio, Rational};
use acute_core::verifier::{min_apex_dot, verify_acute, Mode, Verdict};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// One lifted set together with the set it came from.
struct Lift {
    before: PointSet,
    after: PointSet,
    step: DoublingStep,
}

/// Chains of 1..=3 doublings from every catalog base, using the exact `s` of
/// the base and carried bounds afterwards.
fn doubling_chains() -> Vec<(usize, Vec<Lift>)> {
    (1..=5)
        .map(|d| {
            let base = basecases::base_set(d).expect("catalog").points;
            let (mut s, _) = min_apex_dot(&base).expect("two or more points");
            let mut set = base;
            let mut lifts = Vec::new();
            for _ in 0..3 {
                let (next, step) = doubling::double(&set, &s).expect("valid doubling");
                s = step.s_next.clone();
                lifts.push(Lift {
                    before: set,
                    after: next.clone(),
                    step,
                });
                set = next;
            }
            (d, lifts)
        })
        .collect()
}

fn criterion_1(chains: &[(usize, Vec<Lift>)]) -> Check {
    let mut checked = 0;
    for (d, lifts) in chains {
        for (k, lift) in lifts.iter().enumerate() {
            let want = CATALOG_SIZES[d - 1] << (k + 1);
            ensure(lift.after.len() == want, || {
                format!("d={d} k={}: size {} != {want}", k + 1, lift.after.len())
            })?;
            let r = verify_acute(&lift.after, Mode::Exact).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Acute, || {
                format!("d={d} k={}: {:?}", k + 1, r.verdict)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} doubled sets exactly acute with size 2^k x base"
    ))
}

fn criterion_2(constructed: &[(usize, PointSet)]) -> Check {
    let want = [8usize, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256];
    for ((d, set), &n) in constructed.iter().zip(&want) {
        ensure(set.len() == n && set.dim() == *d, || {
            format!("d={d}: {} points in R^{}", set.len(), set.dim())
        })?;
        if d % 2 == 0 {
            ensure(n == 1 << (d / 2 + 1), || format!("d={d}: {n} != 2^(d/2+1)"))?;
        }
        let start = Instant::now();
        let r = verify_acute(set, Mode::Exact).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Acute, || {
            format!("d={d}: {:?}", r.verdict)
        })?;
        if *d == 14 {
            eprintln!("    d=14 exact verification: {:.2?}", start.elapsed());
        }
    }
    Ok("construct(4..=14) sizes 8..256 all exactly acute".into())
}

fn criterion_3() -> Check {
    for (d, n) in [(4, 8), (5, 12)] {
        let e = basecases::base_set(d).map_err(|e| e.to_string())?;
        ensure(e.points.len() == n, || {
            format!("d={d}: {} points", e.points.len())
        })?;
        ensure(e.certificate.verdict == Verdict::Acute, || {
            format!("d={d}: {:?}", e.certificate.verdict)
        })?;
    }
    Ok("catalog d4 (8 points) and d5 (12 points) re-certify exactly".into())
}

fn criterion_4(chains: &[(usize, Vec<Lift>)]) -> Check {
    let mut checked = 0;
    for (d, lifts) in chains {
        for lift in lifts.iter().filter(|l| l.after.len() <= 64) {
            let (exact, _) = min_apex_dot(&lift.after).map_err(|e| e.to_string())?;
            ensure(exact >= lift.step.s_next, || {
                format!(
                    "d={d} n={}: exact {exact} < carried {}",
                    lift.after.len(),
                    lift.step.s_next
                )
            })?;
            checked += 1;
        }
    }
    let (_, trace) = doubling::construct_with(
        10,
        &doubling::ConstructOptions {
            base: None,
            recheck_exact: true,
        },
    )
    .map_err(|e| e.to_string())?;
    for step in trace.steps.iter().filter(|s| 2 * s.n_before <= 64) {
        let exact = step.s_exact.as_ref().ok_or("missing recheck")?;
        ensure(*exact >= step.s_next, || {
            format!("construct step: {exact} < {}", step.s_next)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} steps: exact s >= carried bound"))
}

fn criterion_5(chains: &[(usize, Vec<Lift>)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let lifts: Vec<&Lift> = chains
        .iter()
        .flat_map(|(_, l)| l)
        .filter(|l| l.before.len() >= 3)
        .collect();
    let trials = 1200;
    for _ in 0..trials {
        let lift = lifts[rng.gen_range(0..lifts.len())];
        let n = lift.before.len();
        // distinct base indices for apex, y and z
        let bx = rng.gen_range(0..n);
        let by = loop {
            let v = rng.gen_range(0..n);
            if v != bx {
                break v;
            }
        };
        let bz = loop {
            let v = rng.gen_range(0..n);
            if v != bx && v != by {
                break v;
            }
        };
        let pick =
            |b: usize, rng: &mut ChaCha8Rng| &lift.after.points()[2 * b + rng.gen_range(0..2)];
        let (x, y, z) = (pick(bx, &mut rng), pick(by, &mut rng), pick(bz, &mut rng));
        let (xb, xc) = split_lifted(x);
        let (yb, yc) = split_lifted(y);
        let (zb, zc) = split_lifted(z);
        let base = &lift.before.points();
        ensure(xb == base[bx] && yb == base[by] && zb == base[bz], || {
            "base coordinates changed".into()
        })?;
        let whole = apex_dot(x, y, z).map_err(|e| e.to_string())?;
        let base_term = apex_dot(&xb, &yb, &zb).map_err(|e| e.to_string())?;
        let circle_term = apex_dot(&xc, &yc, &zc).map_err(|e| e.to_string())?;
        ensure(whole == &base_term + &circle_term, || {
            "decomposition mismatch".into()
        })?;
        let r2 = &lift.step.r * &lift.step.r;
        ensure(circle_term.abs() <= int(4) * r2, || {
            format!("circle term {circle_term} exceeds 4r^2")
        })?;
    }
    Ok(format!(
        "{trials} random lifted triples decompose exactly, |circle term| <= 4r^2"
    ))
}

fn cube(d: usize) -> PointSet {
    let pts = (0..1u32 << d)
        .map(|m| Point::from_ints(&(0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>()))
        .collect();
    PointSet::new(d, pts, Meta::default()).expect("distinct vertices")
}

fn criterion_6() -> Check {
    let square = cube(2);
    let r = verify_acute(&square, Mode::Exact).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::RightAnglePresent, || {
        format!("square: {:?}", r.verdict)
    })?;
    for d in 2..=6 {
        let c = cube(d);
        let r = verify_acute(&c, Mode::Exact).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::RightAnglePresent, || {
            format!("cube d={d}: {:?}", r.verdict)
        })?;
        let (s, _) = min_apex_dot(&c).map_err(|e| e.to_string())?;
        ensure(s.is_zero(), || format!("cube d={d}: min dot {s}"))?;
    }
    let coords =
        rational::rationalize(&[0.0, 0.0, 4.0, 0.0, 1.0, 0.2], 1000).map_err(|e| e.to_string())?;
    ensure(coords[5] == ratio(1, 5), || {
        "0.2 did not rationalize to 1/5".into()
    })?;
    let tri = PointSet::new(
        2,
        coords.chunks(2).map(|c| Point::new(c.to_vec())).collect(),
        Meta::default(),
    )
    .map_err(|e| e.to_string())?;
    let r = verify_acute(&tri, Mode::Exact).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::ObtusePresent, || {
        format!("obtuse triangle: {:?}", r.verdict)
    })?;
    Ok("square and {0,1}^d (d<=6) right, min dot 0; rationalized obtuse triangle obtuse".into())
}

fn criterion_7() -> Check {
    for seed in 0..50 {
        let cfg = basecases::SearchConfig::new(2, 4, seed);
        let found = basecases::search_acute(&cfg).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || {
            format!("false certificate for 4 planar points, seed {seed}")
        })?;
    }
    let mut successes = 0;
    for seed in 0..50 {
        let cfg = basecases::SearchConfig::new(3, 5, seed);
        if let Some(entry) = basecases::search_acute(&cfg).map_err(|e| e.to_string())? {
            let r = verify_acute(&entry.points, Mode::Exact).map_err(|e| e.to_string())?;
            ensure(
                r.verdict == Verdict::Acute && entry.points.len() == 5,
                || format!("seed {seed} did not re-certify"),
            )?;
            successes += 1;
        }
    }
    ensure(successes >= 1, || "no (3,5) search succeeded".into())?;
    Ok(format!(
        "(2,4): 0/50 certified; (3,5): {successes}/50 certified and re-checked"
    ))
}

fn criterion_8(constructed: &[(usize, PointSet)]) -> Check {
    let mean_size = |d: usize| -> Result<f64, String> {
        let mut total = 0usize;
        for seed in 0..100 {
            let run = ef::ef_generate(d, seed, None).map_err(|e| e.to_string())?;
            let r = verify_acute(&run.output, Mode::Exact).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Acute, || {
                format!("ef d={d} seed={seed}: {:?}", r.verdict)
            })?;
            total += run.output.len();
        }
        Ok(total as f64 / 100.0)
    };
    let floor_bound = (0.5 * (2.0 / 3f64.sqrt()).powi(10)).floor();
    let mean10 = mean_size(10)?;
    ensure(mean10 >= floor_bound, || {
        format!("d=10 mean {mean10} < {floor_bound}")
    })?;
    let mut summary = Vec::new();
    for d in 8..=12 {
        let mean = mean_size(d)?;
        let ours = constructed
            .iter()
            .find(|(k, _)| *k == d)
            .map(|(_, s)| s.len())
            .ok_or("missing construct")?;
        ensure(mean < ours as f64, || {
            format!("d={d}: ef mean {mean} >= construct {ours}")
        })?;
        summary.push(format!("d{d} {mean:.2}<{ours}"));
    }
    Ok(format!(
        "d=10 mean {mean10:.2} >= {floor_bound}; {}",
        summary.join(", ")
    ))
}

fn criterion_9(constructed: &[(usize, PointSet)], chains: &[(usize, Vec<Lift>)]) -> Check {
    let threshold = ratio(1, 1_000_000);
    let mut sets: Vec<(&PointSet, Rational)> = Vec::new();
    for (_, set) in constructed {
        let trace = set
            .meta
            .trace
            .as_ref()
            .ok_or("construct output without trace")?;
        let bound = match trace.steps.last() {
            Some(step) => step.s_next.clone(),
            None => min_apex_dot(set).map_err(|e| e.to_string())?.0,
        };
        sets.push((set, bound));
    }
    for (_, lifts) in chains {
        for lift in lifts {
            sets.push((&lift.after, lift.step.s_next.clone()));
        }
    }
    let mut compared = 0;
    for (set, bound) in sets.into_iter().filter(|(_, b)| *b > threshold) {
        let exact = verify_acute(set, Mode::Exact).map_err(|e| e.to_string())?;
        let float =
            verify_acute(set, Mode::Float { tolerance: 1e-9 }).map_err(|e| e.to_string())?;
        ensure(exact.verdict == float.verdict, || {
            format!(
                "n={} bound {bound}: exact {:?} vs float {:?}",
                set.len(),
                exact.verdict,
                float.verdict
            )
        })?;
        compared += 1;
    }
    ensure(compared > 0, || "no set above the bound threshold".into())?;
    Ok(format!("{compared} sets with carried bound > 1e-6 agree"))
}

fn main() {
    let start = Instant::now();
    let chains = doubling_chains();
    let constructed: Vec<(usize, PointSet)> = (4..=14)
        .map(|d| (d, doubling::construct(d).expect("construct").0))
        .collect();

    let results: Vec<(&str, Check)> = vec![
        ("1 doubling soundness", criterion_1(&chains)),
        ("2 headline bound", criterion_2(&constructed)),
        ("3 base values", criterion_3()),
        ("4 carried-bound validity", criterion_4(&chains)),
        ("5 decomposition identity", criterion_5(&chains)),
        ("6 negative controls", criterion_6()),
        ("7 search safety", criterion_7()),
        ("8 ef generator", criterion_8(&constructed)),
        (
            "9 exact/float agreement",
            criterion_9(&constructed, &chains),
        ),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} passed, {failed} failed in {:.1?}",
        results.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
