use jspairs::ratfun::{poly_gcd, sum_factored, Factored, Monomial, Poly, RatFun, Rational, NVARS};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn poly_strategy(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, NVARS),
            -4i64..=4,
            1i64..=3,
        ),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            NVARS,
            terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::new(e), rat(n, d))),
        )
    })
}

fn nonzero_poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    poly_strategy(max_terms, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun_strategy() -> impl Strategy<Value = RatFun> {
    (poly_strategy(3, 1), nonzero_poly(2, 1)).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn linear_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, NVARS).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_canonical(a in poly_strategy(3, 2), b in nonzero_poly(3, 2), c in nonzero_poly(2, 1)) {
        let direct = RatFun::new(a.clone(), b.clone()).unwrap();
        let scaled = RatFun::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&direct, &scaled);
        prop_assert_eq!(direct.to_string(), scaled.to_string());
    }

    #[test]
    fn gcd_divides_and_quotients_are_coprime(a in nonzero_poly(3, 2), b in nonzero_poly(3, 2), c in nonzero_poly(2, 1)) {
        let a = &a * &c;
        let b = &b * &c;
        let g = poly_gcd(&a, &b).unwrap();
        let qa = a.div_exact(&g);
        let qb = b.div_exact(&g);
        prop_assert!(qa.is_some() && qb.is_some());
        let h = poly_gcd(&qa.unwrap(), &qb.unwrap()).unwrap();
        prop_assert!(h.is_constant());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn text_round_trip(f in ratfun_strategy()) {
        let s = f.to_string();
        let back: RatFun = s.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn specialize_is_a_homomorphism(a in ratfun_strategy(), b in ratfun_strategy(), v in 0usize..NVARS, n in -5i64..=5) {
        let at = [(v, rat(n, 1))];
        let (Ok(sa), Ok(sb)) = (a.specialize_values(&at), b.specialize_values(&at)) else {
            return Ok(());
        };
        if let Ok(ssum) = (&a + &b).specialize_values(&at) {
            prop_assert_eq!(ssum, &sa + &sb);
        }
        if let Ok(sprod) = (&a * &b).specialize_values(&at) {
            prop_assert_eq!(sprod, &sa * &sb);
        }
    }

    #[test]
    fn specializations_compose(f in ratfun_strategy(), x in -4i64..=4, y in -4i64..=4) {
        let both = f.specialize_values(&[(1, rat(x, 1)), (2, rat(y, 1))]);
        let stepwise = f
            .specialize_values(&[(1, rat(x, 1))])
            .and_then(|g| g.specialize_values(&[(2, rat(y, 1))]));
        if let (Ok(a), Ok(b)) = (both, stepwise) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn residue_is_linear(ca in -5i64..=5, cb in -5i64..=5, na in poly_strategy(2, 1), nb in poly_strategy(2, 1), m in -3i64..=3) {
        let n = NVARS;
        let pole = Poly::var(n, 0).checked_sub(&Poly::constant(n, rat(m, 1))).unwrap();
        let other = Poly::linear(&[1, 0, 0, 1]).checked_sub(&Poly::constant(n, rat(10, 1))).unwrap();
        let a = RatFun::new(na.scale(&rat(ca, 1)), &pole * &other).unwrap();
        let b = RatFun::new(nb.scale(&rat(cb, 1)), pole.clone()).unwrap();
        let m = rat(m, 1);
        let sum = (&a + &b).residue_at(0, &m).unwrap();
        let parts = &a.residue_at(0, &m).unwrap() + &b.residue_at(0, &m).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn factored_sum_agrees_with_ratfun_sum(
        terms in prop::collection::vec(
            (prop::collection::vec((linear_strategy(), -2i64..=2), 0..4), -6i64..=6, 1i64..=4),
            1..5,
        )
    ) {
        let mut factored = Vec::new();
        let mut expect = RatFun::zero(NVARS);
        for (forms, n, d) in terms {
            let mut f = Factored::constant(NVARS, rat(n, d));
            for (form, e) in forms {
                f.mul_linear(&form, e).unwrap();
            }
            expect = &expect + &f.to_ratfun();
            factored.push(f);
        }
        prop_assert_eq!(sum_factored(&factored, NVARS), expect);
    }

    #[test]
    fn bivariate_factored_sum_agrees(
        terms in prop::collection::vec(
            (prop::collection::vec(((-3i64..=3), (-3i64..=3)), 3), -6i64..=6, 1i64..=4),
            1..6,
        )
    ) {
        // every term has degree -1: two denominator forms and one numerator form
        let mut factored = Vec::new();
        let mut expect = RatFun::zero(NVARS);
        for (forms, n, d) in terms {
            let mut f = Factored::constant(NVARS, rat(n, d));
            for (k, (a, b)) in forms.into_iter().enumerate() {
                let (a, b) = if a == 0 && b == 0 { (1, 0) } else { (a, b) };
                f.mul_linear(&[a, 0, 0, b], if k == 0 { 1 } else { -1 }).unwrap();
            }
            expect = &expect + &f.to_ratfun();
            factored.push(f);
        }
        prop_assert_eq!(sum_factored(&factored, NVARS), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_laws(a in ratfun_strategy(), b in ratfun_strategy(), c in ratfun_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a / &a, RatFun::one(NVARS));
        }
    }
}
