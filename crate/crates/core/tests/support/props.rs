//! Kernel property suites shared by the property and acceptance tests.

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use projgeo::conic::{conic_through_five, pole, polar, Conic};
use projgeo::projective::{
    apply_map, collinear, cross_ratio, harmonic_conjugate, homology_from, incident, join, meet,
    HLine, HPoint, ProjMap,
};
use projgeo::verifier::generate::{conic, points_on_conic};

pub const CASES: u32 = 1000;
const SEED: u64 = 0x5_eed0_f9e0;

fn config() -> Config {
    Config {
        cases: CASES,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        // Rejections are rare; keep the budget generous anyway.
        max_global_rejects: 100_000,
        ..Config::default()
    }
}

fn coord() -> impl Strategy<Value = i64> {
    -30i64..=30
}

fn triple() -> impl Strategy<Value = [i64; 3]> {
    [coord(), coord(), coord()].prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn point() -> impl Strategy<Value = HPoint> {
    triple().prop_map(|[a, b, c]| HPoint::from_ints(a, b, c).unwrap())
}

fn line() -> impl Strategy<Value = HLine> {
    triple().prop_map(|[a, b, c]| HLine::from_ints(a, b, c).unwrap())
}

fn collineation() -> impl Strategy<Value = ProjMap> {
    [[coord(), coord(), coord()], [coord(), coord(), coord()], [coord(), coord(), coord()]]
        .prop_filter_map("invertible", |m| ProjMap::from_ints(m).ok())
}

/// `s·p + t·q` in homogeneous coordinates.
fn combine(p: &HPoint, s: i64, q: &HPoint, t: i64) -> Option<HPoint> {
    let v = std::array::from_fn(|i| &p.coords()[i] * s + &q.coords()[i] * t);
    HPoint::from_coords(v).ok()
}

fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config()).run(&strategy, test).map_err(|e| e.to_string())
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-9i64..=9).prop_filter("nonzero", |k| *k != 0)
}

fn canonicalization_is_idempotent() -> Result<(), String> {
    check((triple(), nonzero()), |(v, k)| {
        let p = HPoint::from_ints(v[0], v[1], v[2]).unwrap();
        prop_assert_eq!(&HPoint::from_coords(p.coords().clone()).unwrap(), &p);
        let scaled = HPoint::from_ints(k * v[0], k * v[1], k * v[2]).unwrap();
        prop_assert_eq!(&scaled, &p);
        let first = p.coords().iter().find(|x| **x != BigInt::from(0)).unwrap();
        prop_assert!(*first > BigInt::from(0));
        let l = HLine::from_ints(v[0], v[1], v[2]).unwrap();
        prop_assert_eq!(&HLine::from_coords(l.coords().clone()).unwrap(), &l);
        Ok(())
    })
}

fn join_meet_duality() -> Result<(), String> {
    check((point(), point(), point()), |(p, q, r)| {
        prop_assume!(p != q);
        let l = join(&p, &q).unwrap();
        prop_assert!(incident(&p, &l) && incident(&q, &l));
        // the dual construction on the same coordinates
        let lp = HLine::from_coords(p.coords().clone()).unwrap();
        let lq = HLine::from_coords(q.coords().clone()).unwrap();
        let dual = meet(&lp, &lq).unwrap();
        prop_assert_eq!(dual.coords(), l.coords());
        if !collinear(&p, &q, &r) {
            let m = join(&p, &r).unwrap();
            prop_assert_eq!(meet(&l, &m).unwrap(), p);
        }
        Ok(())
    })
}

fn cross_ratio_invariance() -> Result<(), String> {
    let coeffs = [(-9i64..=9, -9i64..=9), (-9i64..=9, -9i64..=9)];
    check((point(), point(), coeffs, collineation()), |(a, b, coeffs, t)| {
        prop_assume!(a != b);
        let c = combine(&a, coeffs[0].0, &b, coeffs[0].1);
        let d = combine(&a, coeffs[1].0, &b, coeffs[1].1);
        let (Some(c), Some(d)) = (c, d) else { return Err(TestCaseError::reject("zero combination")) };
        prop_assume!(c != d);
        let before = cross_ratio(&a, &b, &c, &d).unwrap();
        let m = |p: &HPoint| apply_map(&t, p);
        let after = cross_ratio(&m(&a), &m(&b), &m(&c), &m(&d)).unwrap();
        prop_assert_eq!(before, after);
        Ok(())
    })
}

fn harmonic_involution() -> Result<(), String> {
    check((point(), point(), -9i64..=9, -9i64..=9), |(a, b, s, u)| {
        prop_assume!(a != b);
        let Some(c) = combine(&a, s, &b, u) else { return Err(TestCaseError::reject("zero")) };
        prop_assume!(c != a && c != b);
        let d = harmonic_conjugate(&a, &b, &c).unwrap();
        prop_assert!(cross_ratio(&a, &b, &c, &d).unwrap().is_harmonic());
        prop_assert_eq!(harmonic_conjugate(&a, &b, &d).unwrap(), c);
        Ok(())
    })
}

fn pole_polar_round_trip() -> Result<(), String> {
    check((any::<u64>(), point(), line()), |(seed, p, l)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _) = conic(&mut rng, 12).unwrap();
        prop_assert_eq!(pole(&polar(&p, &c).unwrap(), &c).unwrap(), p);
        prop_assert_eq!(polar(&pole(&l, &c).unwrap(), &c).unwrap(), l);
        Ok(())
    })
}

fn five_point_reconstruction() -> Result<(), String> {
    check(any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, base) = conic(&mut rng, 12).unwrap();
        // five fresh points, not the ones the conic was built from
        let pts = points_on_conic(&mut rng, &c, &base, 6, 12).unwrap();
        let again: Conic = conic_through_five([&pts[1], &pts[2], &pts[3], &pts[4], &pts[5]]).unwrap();
        prop_assert_eq!(again, c);
        Ok(())
    })
}

fn homology_axis_fixed() -> Result<(), String> {
    check((point(), line(), point(), nonzero(), point()), |(center, axis, pre, k, x)| {
        prop_assume!(!incident(&center, &axis) && !incident(&pre, &axis) && pre != center);
        let Some(image) = combine(&pre, k, &center, 1) else { return Err(TestCaseError::reject("zero")) };
        prop_assume!(image != center && !incident(&image, &axis));
        let h = homology_from(&center, &axis, &pre, &image).unwrap();
        prop_assert_eq!(apply_map(&h, &pre), image);
        prop_assert_eq!(apply_map(&h, &center), center.clone());
        // a point of the axis: its meet with the line through x and the center
        if x != center {
            let on_axis = meet(&join(&x, &center).unwrap(), &axis).unwrap();
            prop_assert_eq!(apply_map(&h, &on_axis), on_axis);
        }
        Ok(())
    })
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 7] = [
    ("canonicalization idempotence", canonicalization_is_idempotent),
    ("join/meet duality", join_meet_duality),
    ("cross-ratio projective invariance", cross_ratio_invariance),
    ("harmonic-conjugate involution", harmonic_involution),
    ("pole/polar round trip", pole_polar_round_trip),
    ("five-point conic reconstruction", five_point_reconstruction),
    ("homology axis fixed pointwise", homology_axis_fixed),
];

pub fn run(name: &str) -> Result<(), String> {
    let (_, f) = SUITES.iter().find(|(n, _)| *n == name).expect("known suite");
    f()
}
