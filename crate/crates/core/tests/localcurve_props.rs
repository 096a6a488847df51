use jspairs::equivariant::{check_square_root, euler_factored, SplitGeometry};
use jspairs::localcurve::{
    closed_form_term, enumerate_fixed_points, full_obstruction_d1, full_obstruction_general,
    half_obstruction_d1_equivariant, half_obstruction_general, js_invariant_enumerated,
    orientation_sign, Composition, D1FixedPoint, Orientation,
};
use jspairs::ratfun::{Poly, RatFun, Rational, NVARS};
use proptest::prelude::*;

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(0u32..=3, 1..=5)
        .prop_filter("positive degree", |p| p.iter().sum::<u32>() > 0)
        .prop_map(|p| Composition::new(p).unwrap())
}

fn cy_geometry() -> impl Strategy<Value = SplitGeometry> {
    (-4i64..=4, -4i64..=4).prop_map(|(l1, l2)| SplitGeometry::new(l1, l2, -2 - l1 - l2).unwrap())
}

/// `f(s λ0, λ1, λ2, s λ3)` with `s = λ1`, for functions of `λ0, λ3` only.
fn rescale_with_l1(f: &RatFun) -> RatFun {
    let s = Poly::var(NVARS, 1);
    f.specialize(&[
        (0, &s * &Poly::var(NVARS, 0)),
        (3, &s * &Poly::var(NVARS, 3)),
    ])
    .unwrap()
}

/// `f(s λ)` for a rational scalar `s`.
fn rescale_by(f: &RatFun, s: i64) -> RatFun {
    let subs: Vec<(usize, Poly)> = (0..NVARS)
        .map(|i| (i, Poly::var(NVARS, i).scale(&Rational::from_integer(s.into()))))
        .collect();
    f.specialize(&subs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_root_doubles(c in composition()) {
        let half = half_obstruction_general(&c);
        prop_assert!(check_square_root(&full_obstruction_general(&c), &half));
    }

    #[test]
    fn trivial_weight_cancels(c in composition()) {
        prop_assert_eq!(half_obstruction_general(&c).trivial_multiplicity(), 0);
    }

    #[test]
    fn signed_point_matches_closed_summand(c in composition()) {
        let mut e = euler_factored(&half_obstruction_general(&c)).unwrap();
        e.scale(&Rational::from_integer(orientation_sign(&c).into()));
        prop_assert_eq!(e.to_ratfun(), closed_form_term(&c).to_ratfun());
    }

    #[test]
    fn point_contribution_is_homogeneous(c in composition()) {
        let n = (c.d() as i64) * (c.k() as i64 + 1);
        let f = euler_factored(&half_obstruction_general(&c)).unwrap().to_ratfun();
        prop_assert!(f.is_homogeneous_of_degree(-n));
        let s_pow = RatFun::var(NVARS, 1).pow(-(n as i32)).unwrap();
        prop_assert_eq!(rescale_with_l1(&f), &s_pow * &f);
    }

    #[test]
    fn d1_equivariant_root_doubles(g in cy_geometry(), a in 0i64..=4, b in 0i64..=4) {
        let fp = D1FixedPoint::new(a, b).unwrap();
        let half = half_obstruction_d1_equivariant(&fp, &g).unwrap();
        prop_assert!(check_square_root(&full_obstruction_d1(&fp, &g).unwrap(), &half));
    }

    #[test]
    fn d1_values(g in cy_geometry(), n in 1i64..=6) {
        let r = js_invariant_enumerated(n, 1, &g, Orientation::default(), true).unwrap();
        prop_assert!(r.value.is_homogeneous_of_degree(-n));
        let scaled = rescale_by(&r.value, 3);
        let factor = Rational::new(1.into(), num_bigint::BigInt::from(3).pow(n as u32));
        prop_assert_eq!(scaled, r.value.scale(&factor));
        for p in r.contributions.unwrap() {
            prop_assert!(p.value.is_homogeneous_of_degree(-n));
        }
        if n >= 2 {
            prop_assert!(r.value.is_zero());
        }
    }
}

#[test]
fn invariant_totals_are_homogeneous() {
    let g = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;
    for d in 1..=4i64 {
        for ratio in 1..=4i64 {
            let n = d * ratio;
            let r = js_invariant_enumerated(n, d, &g, Orientation::default(), false).unwrap();
            assert!(r.value.is_homogeneous_of_degree(-n), "(n,d) = ({n},{d})");
            let s_pow = RatFun::var(NVARS, 1).pow(-(n as i32)).unwrap();
            assert_eq!(rescale_with_l1(&r.value), &s_pow * &r.value);
        }
    }
}

#[test]
fn summation_is_deterministic() {
    let g = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;
    let run = |threads: usize, n: i64, d: i64| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| js_invariant_enumerated(n, d, &g, Orientation::default(), false).unwrap())
    };
    for (n, d) in [(12, 3), (10, 2), (8, 4)] {
        let serial = run(1, n, d);
        let parallel = run(6, n, d);
        assert_eq!(serial, parallel);
        assert_eq!(serial.value.to_string(), parallel.value.to_string());
    }
}

#[test]
fn fixed_point_counts() {
    for d in 1..=6i64 {
        for k in 0..=6i64 {
            let count = enumerate_fixed_points(d * (k + 1), d).unwrap().len() as u64;
            let binom = (1..=k as u64).fold(1u64, |acc, i| acc * (d as u64 + i) / i);
            assert_eq!(count, binom);
        }
    }
}
