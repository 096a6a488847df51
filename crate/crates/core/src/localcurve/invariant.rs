use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::obstruction::{half_obstruction_d1, half_obstruction_general, orientation_sign};
use super::{enumerate_d1_fixed_points, enumerate_fixed_points, Composition};
use crate::equivariant::{euler_factored, SplitGeometry};
use crate::error::{Error, Result};
use crate::ratfun::{sum_factored, Factored, RatFun, Rational, NVARS};

/// How fixed-point contributions are signed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Euler class of the chosen square root times `(-1)^(number of zero parts)`.
    #[default]
    Formula,
    /// Euler class of the chosen square root, unsigned.
    Lemma,
}

/// One fixed point's share of an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub label: String,
    pub sign: i64,
    pub value: RatFun,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub value: RatFun,
    pub n: i64,
    pub d: i64,
    pub geometry: SplitGeometry,
    pub fixed_point_count: usize,
    pub contributions: Option<Vec<Contribution>>,
}

fn lam(c0: i64, c3: i64) -> [i64; NVARS] {
    [c0, 0, 0, c3]
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn trivial_result(n: i64, d: i64, geometry: SplitGeometry, audit: bool) -> Option<InvariantResult> {
    if n == 0 && d == 0 {
        return Some(InvariantResult {
            value: RatFun::one(NVARS),
            n,
            d,
            geometry,
            fixed_point_count: 1,
            contributions: audit.then(Vec::new),
        });
    }
    None
}

/// Sum of Euler classes of the chosen square roots over all torus-fixed pairs.
///
/// `d = 1` accepts any split Calabi-Yau geometry; `d >= 2` requires
/// `O(-1) ⊕ O(-1) ⊕ O`. With `audit` the per-point values are kept.
pub fn js_invariant_enumerated(
    n: i64,
    d: i64,
    geom: &SplitGeometry,
    orientation: Orientation,
    audit: bool,
) -> Result<InvariantResult> {
    if let Some(r) = trivial_result(n, d, *geom, audit) {
        return Ok(r);
    }
    if d <= 0 {
        return Err(Error::NonPositiveDegree(d));
    }
    if d == 1 && geom.l1 + geom.l2 + geom.l3 != -2 {
        return Err(Error::NotCalabiYau {
            l1: geom.l1,
            l2: geom.l2,
            l3: geom.l3,
        });
    }
    let terms: Vec<(String, i64, Factored)> = if d == 1 {
        enumerate_d1_fixed_points(n)
            .into_par_iter()
            .map(|fp| {
                let half = half_obstruction_d1(&fp, geom)?;
                Ok((format!("({},{})", fp.a, fp.b), 1, euler_factored(&half)?))
            })
            .collect::<Result<_>>()?
    } else {
        if *geom != SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE {
            return Err(Error::UnsupportedGeometry {
                l1: geom.l1,
                l2: geom.l2,
                l3: geom.l3,
                d,
            });
        }
        enumerate_fixed_points(n, d)?
            .into_par_iter()
            .map(|c| {
                let mut e = euler_factored(&half_obstruction_general(&c))?;
                let sign = match orientation {
                    Orientation::Formula => orientation_sign(&c),
                    Orientation::Lemma => 1,
                };
                e.scale(&Rational::from_integer(sign.into()));
                Ok((c.to_string(), sign, e))
            })
            .collect::<Result<_>>()?
    };
    let factored: Vec<Factored> = terms.iter().map(|t| t.2.clone()).collect();
    let value = sum_factored(&factored, NVARS);
    let contributions = audit.then(|| {
        terms
            .par_iter()
            .map(|(label, sign, f)| Contribution {
                label: label.clone(),
                sign: *sign,
                value: f.to_ratfun(),
            })
            .collect()
    });
    Ok(InvariantResult {
        value,
        n,
        d,
        geometry: *geom,
        fixed_point_count: terms.len(),
        contributions,
    })
}

/// Summand of the closed formula for one composition, including the prefactor.
pub fn closed_form_term(c: &Composition) -> Factored {
    let k = c.k();
    let d = c.d() as i64;
    let sign = if ((k as i64 + 1) * (d + 1)) % 2 == 0 { 1 } else { -1 };
    let mut denom = BigInt::one();
    for m in 1..=k as u64 {
        denom *= factorial(m);
    }
    for &p in c.parts() {
        denom *= factorial(p as u64);
    }
    let mut f = Factored::constant(NVARS, Rational::new(sign.into(), denom));
    let kk = k as i64;
    f.mul_linear(&lam(1, 0), -(kk * (kk + 1) / 2)).expect("arity");
    f.mul_linear(&lam(0, 1), -d).expect("arity");
    let parts: Vec<i64> = c.parts().iter().map(|&p| p as i64).collect();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            f.mul_linear(&lam((j - i) as i64, parts[i] - parts[j]), 1)
                .expect("arity");
        }
    }
    for (i, &di) in parts.iter().enumerate() {
        let i = i as i64;
        for a in 1..=di {
            for b in 1..=kk - i {
                f.mul_linear(&lam(b, a), -1).expect("arity");
            }
            for b in 1..=i {
                f.mul_linear(&lam(-b, a), -1).expect("arity");
            }
        }
    }
    f
}

/// The closed formula for `O(-1) ⊕ O(-1) ⊕ O`, evaluated as printed.
pub fn js_invariant_closed_form(n: i64, d: i64) -> Result<InvariantResult> {
    let geom = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;
    if let Some(r) = trivial_result(n, d, geom, false) {
        return Ok(r);
    }
    if d <= 0 {
        return Err(Error::NonPositiveDegree(d));
    }
    if n % d != 0 {
        return Err(Error::NotDivisible { n, d });
    }
    if n < d {
        return Err(Error::Invalid(format!("closed formula needs n >= d, got n = {n}")));
    }
    let comps = enumerate_fixed_points(n, d)?;
    let terms: Vec<Factored> = comps.par_iter().map(closed_form_term).collect();
    Ok(InvariantResult {
        value: sum_factored(&terms, NVARS),
        n,
        d,
        geometry: geom,
        fixed_point_count: comps.len(),
        contributions: None,
    })
}

/// `1 / (d! λ3^d)` when `n = d >= 0`, zero otherwise.
pub fn conjectured_value(n: i64, d: i64) -> RatFun {
    if n != d || d < 0 {
        return RatFun::zero(NVARS);
    }
    let mut f = Factored::constant(NVARS, Rational::new(BigInt::one(), factorial(d as u64)));
    f.mul_linear(&lam(0, 1), -d).expect("arity");
    f.to_ratfun()
}
