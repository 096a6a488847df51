use jspairs::ratfun::Rational;
use jspairs::series::{
    gv0_from_gw, gw0_from_gv0, gw1_assemble, gw1_extract, js_coeff_from_gv, pt_coeff_from_gv,
    pt_series_from_gv, telescoping_check, wall_jump_check, walls, Class, ClassLattice, ClassMap,
    GVTable, MeetingMap, Side, StabilityParam,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn lattice() -> impl Strategy<Value = ClassLattice> {
    prop_oneof![
        (1u64..=2, 3u64..=6).prop_map(|(w, d)| ClassLattice::new(vec![w], d).unwrap()),
        (1u64..=2, 1u64..=2, 2u64..=4).prop_map(|(a, b, d)| ClassLattice::new(vec![a, b], d).unwrap()),
    ]
}

fn class_map(lat: &ClassLattice, density: usize) -> impl Strategy<Value = ClassMap> {
    let classes: Vec<Class> = lat.classes().into_iter().filter(|c| !c.is_zero()).collect();
    let n = classes.len();
    prop::collection::vec((0..n, rat()), 0..=density).prop_map(move |entries| {
        entries
            .into_iter()
            .filter(|(_, v)| *v != Rational::from_integer(0.into()))
            .map(|(i, v)| (classes[i].clone(), v))
            .collect()
    })
}

/// Random table on a random lattice; `p0` is synthesized from `n1` half of the time.
fn table() -> impl Strategy<Value = (GVTable, ClassLattice)> {
    lattice().prop_flat_map(|lat| {
        let omega = lat.omega().to_vec();
        (class_map(&lat, 4), class_map(&lat, 2), class_map(&lat, 2), any::<bool>(), Just(lat))
            .prop_map(move |(n0, n1, p0, given, lat)| {
                let mut gv = GVTable::new(omega.clone());
                gv.n0 = n0;
                gv.n1 = n1;
                if given {
                    let mut p0 = p0;
                    p0.insert(Class::zero(lat.rank()), Rational::from_integer(1.into()));
                    gv.p0 = Some(p0);
                }
                (gv, lat)
            })
    })
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::from(1), |a, k| a * k))
}

fn param() -> impl Strategy<Value = StabilityParam> {
    prop_oneof![
        Just(StabilityParam::ZeroLimit),
        Just(StabilityParam::Infinity),
        (1i64..=6, 1i64..=6, prop_oneof![Just(Side::Plus), Just(Side::Minus)]).prop_map(|(p, q, side)| {
            StabilityParam::finite(Rational::new(p.into(), q.into()), side).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_construction((gv, lat) in table(), p in param(), n_max in 0u32..=3) {
        let s = pt_series_from_gv(&p, &gv, &lat, n_max).unwrap();
        for n in 0..=n_max {
            for beta in lat.classes() {
                let direct = pt_coeff_from_gv(&p, n, &beta, &gv, &lat).unwrap();
                prop_assert_eq!(s.coeff(n, &beta) * factorial(n), direct);
            }
        }
    }

    #[test]
    fn telescoping((gv, lat) in table(), n_max in 0u32..=3) {
        prop_assert!(telescoping_check(&gv, &lat, n_max).unwrap().passed());
    }

    #[test]
    fn walls_cross_consistently((gv, lat) in table(), n_max in 1u32..=3) {
        for w in walls(&gv, &lat) {
            let r = wall_jump_check(&w, &gv, &lat, n_max).unwrap();
            prop_assert!(r.passed(), "wall {}", w);
        }
    }

    #[test]
    fn js_chamber_specialization((gv, lat) in table(), n in 1u32..=3) {
        for beta in lat.classes() {
            let deg = lat.degree(&beta);
            if deg == 0 {
                continue;
            }
            let t = Rational::new(BigInt::from(n), BigInt::from(deg));
            let p = StabilityParam::finite(t, Side::Plus).unwrap();
            prop_assert_eq!(
                pt_coeff_from_gv(&p, n, &beta, &gv, &lat).unwrap(),
                js_coeff_from_gv(n, &beta, &gv, &lat).unwrap()
            );
        }
    }

    #[test]
    fn truncation_is_sound((gv, lat) in table(), p in param(), n_max in 0u32..=2) {
        let big = lat.with_max_degree(lat.max_degree() + 1);
        let small = pt_series_from_gv(&p, &gv, &lat, n_max).unwrap();
        let large = pt_series_from_gv(&p, &gv, &big, n_max + 1).unwrap();
        prop_assert_eq!(large.truncate(&lat, n_max), small);
    }

    #[test]
    fn genus_zero_round_trip((gv, lat) in table()) {
        let gw = gw0_from_gv0(&gv.n0, &lat);
        prop_assert_eq!(gv0_from_gw(&gw, &lat), gv.n0.clone());
        prop_assert_eq!(gw0_from_gv0(&gv0_from_gw(&gv.n1, &lat), &lat), gv.n1.clone());
    }

    #[test]
    fn genus_one_round_trip((gv, lat) in table(), m in rat()) {
        let mut meeting = MeetingMap::new();
        let classes: Vec<Class> = lat.classes().into_iter().filter(|c| !c.is_zero()).collect();
        meeting.insert((classes[0].clone(), classes[0].clone()), m);
        let gw1 = gw1_assemble(&gv.n1, &gv.n0, &meeting, &lat);
        prop_assert_eq!(gw1_extract(&gw1, &gv.n0, &meeting, &lat), gv.n1.clone());
    }
}
