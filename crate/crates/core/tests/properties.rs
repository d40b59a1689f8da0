use acute_core::basecases;
use acute_core::doubling::{self, construct};
use acute_core::geometry::{Meta, Point, PointSet};
use acute_core::rational::ratio;
use acute_core::verifier::{min_apex_dot, verify_acute, Mode, Verdict};
use proptest::prelude::*;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let (set, _) = construct(8).unwrap();
    let one = in_pool(1, || verify_acute(&set, Mode::Exact).unwrap());
    let four = in_pool(4, || verify_acute(&set, Mode::Exact).unwrap());
    assert!(one.same_certificate(&four));
    let cube: Vec<Point> = (0..16u32)
        .map(|m| Point::from_ints(&(0..4).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>()))
        .collect();
    let cube = PointSet::new(4, cube, Meta::default()).unwrap();
    assert_eq!(
        in_pool(1, || min_apex_dot(&cube).unwrap()),
        in_pool(3, || min_apex_dot(&cube).unwrap())
    );
}

#[test]
fn chained_doublings_from_every_base_stay_acute() {
    for d in 1..=5 {
        let mut set = basecases::base_set(d).unwrap().points;
        let (mut s, _) = min_apex_dot(&set).unwrap();
        for _ in 0..3 {
            let (next, step) = doubling::double(&set, &s).unwrap();
            let r = verify_acute(&next, Mode::Exact).unwrap();
            assert_eq!(r.verdict, Verdict::Acute);
            assert!(r.s_min.unwrap() >= step.s_next);
            s = step.s_next;
            set = next;
        }
    }
}

/// Acute triangles in a small grid, found by exact filtering.
fn acute_triangle() -> impl Strategy<Value = PointSet> {
    proptest::collection::vec((-8i64..8, -8i64..8), 3).prop_filter_map("acute, distinct", |pts| {
        let pts = pts
            .into_iter()
            .map(|(a, b)| Point::from_ints(&[a, b]))
            .collect();
        let set = PointSet::new(2, pts, Meta::default()).ok()?;
        verify_acute(&set, Mode::Exact)
            .ok()?
            .verdict
            .is_acute()
            .then_some(set)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn doubling_is_sound_on_random_acute_triangles(tri in acute_triangle(), steps in 1usize..3) {
        let (mut s, _) = min_apex_dot(&tri).unwrap();
        let mut set = tri;
        for _ in 0..steps {
            let (next, step) = doubling::double(&set, &s).unwrap();
            let (exact, _) = min_apex_dot(&next).unwrap();
            prop_assert!(exact >= step.s_next);
            prop_assert_eq!(verify_acute(&next, Mode::Exact).unwrap().verdict, Verdict::Acute);
            s = step.s_next;
            set = next;
        }
    }

    #[test]
    fn doubling_accepts_any_smaller_bound(tri in acute_triangle(), shrink in 1i64..50) {
        let (s, _) = min_apex_dot(&tri).unwrap();
        let (next, _) = doubling::double(&tri, &(s * ratio(1, shrink))).unwrap();
        prop_assert_eq!(verify_acute(&next, Mode::Exact).unwrap().verdict, Verdict::Acute);
    }

    #[test]
    fn subsets_of_acute_sets_are_acute(mask in 1u32..(1 << 16)) {
        let (set, _) = construct(6).unwrap();
        let keep: Vec<usize> = (0..16).filter(|i| mask >> i & 1 == 1).collect();
        let sub = set.subset(&keep).unwrap();
        prop_assert_eq!(verify_acute(&sub, Mode::Exact).unwrap().verdict, Verdict::Acute);
    }

    #[test]
    fn float_agrees_with_exact_away_from_zero(pts in proptest::collection::vec((-20i64..20, -20i64..20, -20i64..20), 3..9)) {
        let pts: Vec<Point> = pts.into_iter().map(|(a, b, c)| Point::from_ints(&[a, b, c])).collect();
        let Ok(set) = PointSet::new(3, pts, Meta::default()) else { return Ok(()) };
        let exact = verify_acute(&set, Mode::Exact).unwrap();
        let float = verify_acute(&set, Mode::Float { tolerance: 0.5 }).unwrap();
        // integer data: every nonzero dot has magnitude >= 1 > tolerance
        if exact.verdict == Verdict::RightAnglePresent {
            prop_assert_eq!(float.verdict, Verdict::Indeterminate);
        } else {
            prop_assert_eq!(float.verdict, exact.verdict);
        }
    }
}
