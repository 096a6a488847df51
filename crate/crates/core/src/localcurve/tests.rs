use super::*;
use crate::equivariant::{check_square_root, euler_class, KClass, SplitGeometry};
use crate::ratfun::{RatFun, NVARS};

const CONIFOLD: SplitGeometry = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn rf(s: &str) -> RatFun {
    s.parse().unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_fixed_points(2, 2).unwrap(), vec![comp(&[2])]);
    assert_eq!(
        enumerate_fixed_points(4, 2).unwrap(),
        vec![comp(&[2, 0]), comp(&[1, 1]), comp(&[0, 2])]
    );
    assert!(enumerate_fixed_points(3, 2).unwrap().is_empty());
    assert!(enumerate_fixed_points(-2, 2).unwrap().is_empty());
    assert!(enumerate_fixed_points(4, 0).is_err());
}

#[test]
fn enumeration_counts() {
    for d in 1..=5u64 {
        for k in 0..=5u64 {
            let n = (d * (k + 1)) as i64;
            assert_eq!(
                enumerate_fixed_points(n, d as i64).unwrap().len() as u64,
                binom(d + k, k)
            );
        }
    }
}

#[test]
fn d1_half_examples() {
    let h = half_obstruction_d1(&D1FixedPoint::new(0, 0).unwrap(), &CONIFOLD).unwrap();
    assert_eq!(h, "-t3".parse::<KClass>().unwrap());
    let h = half_obstruction_d1(&D1FixedPoint::new(1, 0).unwrap(), &CONIFOLD).unwrap();
    assert_eq!(h, "-t3 - t0".parse::<KClass>().unwrap());
    let bad = SplitGeometry { l1: 0, l2: 0, l3: 0 };
    assert!(half_obstruction_d1(&D1FixedPoint::new(0, 0).unwrap(), &bad).is_err());
}

#[test]
fn d1_single_point_euler_class() {
    for (l1, l2, l3) in [(-1, -1, 0), (1, -1, -2), (0, 0, -2), (3, -2, -3)] {
        let g = SplitGeometry::new(l1, l2, l3).unwrap();
        let e = euler_class(&half_obstruction_d1(&D1FixedPoint::new(0, 0).unwrap(), &g).unwrap()).unwrap();
        let mut expect = RatFun::one(NVARS);
        for (i, l) in [l1, l2, l3].into_iter().enumerate() {
            expect = &expect * &RatFun::var(NVARS, i + 1).pow(-(l as i32 + 1)).unwrap();
        }
        assert_eq!(e, expect, "geometry ({l1},{l2},{l3})");
    }
}

#[test]
fn general_half_examples() {
    assert_eq!(half_obstruction_general(&comp(&[1])), "-t3".parse::<KClass>().unwrap());
    for d in 1..=5 {
        let h = half_obstruction_general(&comp(&[d]));
        assert_eq!(h.trivial_multiplicity(), 0);
        let e = euler_class(&h).unwrap();
        let mut f = 1i64;
        for m in 1..=d as i64 {
            f *= m;
        }
        let sign = if d % 2 == 1 { "" } else { "-" };
        assert_eq!(e, rf(&format!("({sign}1/{f})/(l3^{d})")), "d = {d}");
    }
}

#[test]
fn general_half_doubles_to_full_class() {
    for (n, d) in [(2, 1), (3, 1), (4, 2), (6, 2), (6, 3), (9, 3), (8, 4)] {
        for c in enumerate_fixed_points(n, d).unwrap() {
            let half = half_obstruction_general(&c);
            let full = full_obstruction_general(&c);
            assert!(check_square_root(&full, &half), "composition {c}");
        }
    }
}

#[test]
fn d1_half_agrees_with_general_route() {
    for n in 1..=6i64 {
        let k = n - 1;
        for i in 0..=k {
            let mut parts = vec![0u32; n as usize];
            parts[i as usize] = 1;
            let fp = D1FixedPoint::new(i, k - i).unwrap();
            assert_eq!(
                half_obstruction_general(&comp(&parts)),
                half_obstruction_d1(&fp, &CONIFOLD).unwrap()
            );
        }
    }
}

#[test]
fn small_invariants() {
    let one = js_invariant_enumerated(1, 1, &CONIFOLD, Orientation::default(), false).unwrap();
    assert_eq!(one.value, rf("(1)/(l3)"));
    for (l1, l2, l3) in [(-1, -1, 0), (1, -1, -2), (0, 0, -2)] {
        let g = SplitGeometry::new(l1, l2, l3).unwrap();
        for n in 2..=5 {
            let r = js_invariant_enumerated(n, 1, &g, Orientation::default(), false).unwrap();
            assert!(r.value.is_zero(), "n = {n}, geometry {g}");
        }
    }
    let empty = js_invariant_enumerated(0, 0, &CONIFOLD, Orientation::default(), true).unwrap();
    assert_eq!(empty.value, RatFun::one(NVARS));
    let r = js_invariant_enumerated(5, 2, &CONIFOLD, Orientation::default(), false).unwrap();
    assert!(r.value.is_zero());
    assert_eq!(r.fixed_point_count, 0);
    let bad = SplitGeometry::new(1, -1, -2).unwrap();
    assert!(matches!(
        js_invariant_enumerated(4, 2, &bad, Orientation::default(), false),
        Err(crate::Error::UnsupportedGeometry { .. })
    ));
}

#[test]
fn diagonal_values_carry_the_sign_of_the_square_root() {
    for d in 1..=6i64 {
        let r = js_invariant_enumerated(d, d, &CONIFOLD, Orientation::default(), false).unwrap();
        let expect = conjectured_value(d, d);
        if d % 2 == 1 {
            assert_eq!(r.value, expect);
        } else {
            assert_eq!(r.value, -&expect);
        }
    }
}

#[test]
fn closed_form_examples() {
    assert_eq!(js_invariant_closed_form(1, 1).unwrap().value, rf("(1)/(l3)"));
    assert!(js_invariant_closed_form(4, 2).unwrap().value.is_zero());
    assert!(js_invariant_closed_form(3, 2).is_err());
    assert_eq!(
        js_invariant_closed_form(6, 3).unwrap().value,
        js_invariant_enumerated(6, 3, &CONIFOLD, Orientation::default(), false).unwrap().value
    );
}

#[test]
fn closed_form_matches_signed_points_term_by_term() {
    for (n, d) in [(4, 2), (6, 2), (6, 3), (8, 4), (12, 3)] {
        for c in enumerate_fixed_points(n, d).unwrap() {
            let mut e = crate::equivariant::euler_factored(&half_obstruction_general(&c)).unwrap();
            e.scale(&crate::ratfun::Rational::from_integer(orientation_sign(&c).into()));
            assert_eq!(e.to_ratfun(), closed_form_term(&c).to_ratfun(), "composition {c}");
        }
    }
}

#[test]
fn audit_lists_every_point() {
    let r = js_invariant_enumerated(6, 2, &CONIFOLD, Orientation::default(), true).unwrap();
    let parts = r.contributions.unwrap();
    assert_eq!(parts.len(), 6);
    let mut total = RatFun::zero(NVARS);
    for p in &parts {
        total = &total + &p.value;
    }
    assert_eq!(total, r.value);
}

#[test]
fn residue_check_small() {
    for d in 1..=4 {
        let r = residue_vanishing_check(d).unwrap();
        assert_eq!(r.poles.len(), 2 * d as usize + 1);
        assert!(r.passed(), "d = {d}: {r:?}");
    }
}

#[test]
fn verify_reports() {
    let r = verify_conjecture(2, 3, VerifyMode::Literal).unwrap();
    assert_eq!(r.cases.len(), 6);
    assert_eq!(r.first_counterexample, Some((2, 2)));
    let r = verify_conjecture(3, 3, VerifyMode::UpToOrientation).unwrap();
    assert!(r.passed());
    let json = serde_json::to_value(&r.cases[0]).unwrap();
    assert_eq!(json["conjecture_status"], "match");
    assert_eq!(json["value"], "(1)/(l3)");
}
