use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::invariant::{conjectured_value, js_invariant_enumerated, Orientation};
use crate::equivariant::SplitGeometry;
use crate::error::{Error, Result};
use crate::ratfun::{Factored, RatFun, Rational, NVARS};

/// How an enumerated value is compared with the conjectured one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    /// Exact equality.
    #[default]
    Literal,
    /// Equality up to an overall sign.
    UpToOrientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureStatus {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "counterexample")]
    Counterexample,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl std::fmt::Display for ConjectureStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConjectureStatus::Match => "match",
            ConjectureStatus::Counterexample => "counterexample",
            ConjectureStatus::NotApplicable => "n/a",
        })
    }
}

/// One row of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub n: i64,
    pub d: i64,
    pub geometry: String,
    pub value: String,
    pub fixed_point_count: usize,
    pub elapsed_ms: u64,
    pub conjecture_status: ConjectureStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub mode: VerifyMode,
    pub cases: Vec<CaseReport>,
    pub first_counterexample: Option<(i64, i64)>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.first_counterexample.is_none()
    }
}

fn status(value: &RatFun, n: i64, d: i64, mode: VerifyMode) -> ConjectureStatus {
    let expect = conjectured_value(n, d);
    let ok = *value == expect
        || (mode == VerifyMode::UpToOrientation && *value == expect.scale(&-Rational::one()));
    if ok {
        ConjectureStatus::Match
    } else {
        ConjectureStatus::Counterexample
    }
}

/// Evaluates the enumerated invariant for each `(n, d)` on `O(-1) ⊕ O(-1) ⊕ O`.
pub fn verify_cases(cases: &[(i64, i64)], mode: VerifyMode) -> Result<Vec<CaseReport>> {
    let geom = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;
    cases
        .iter()
        .map(|&(n, d)| {
            let start = Instant::now();
            let r = js_invariant_enumerated(n, d, &geom, Orientation::default(), false)?;
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let conjecture_status = if d >= 1 {
                status(&r.value, n, d, mode)
            } else {
                ConjectureStatus::NotApplicable
            };
            Ok(CaseReport {
                n,
                d,
                geometry: geom.tag(),
                value: r.value.to_string(),
                fixed_point_count: r.fixed_point_count,
                elapsed_ms,
                conjecture_status,
            })
        })
        .collect()
}

/// Checks the conjectured values for `1 <= d <= d_max` and `1 <= n / d <= ratio_max`.
///
/// Cases run in order of `d`, then `n`; the first mismatch is recorded and
/// the run continues.
pub fn verify_conjecture(d_max: i64, ratio_max: i64, mode: VerifyMode) -> Result<ConjectureReport> {
    if d_max < 1 || ratio_max < 1 {
        return Err(Error::Invalid(format!(
            "need d_max >= 1 and ratio_max >= 1, got {d_max} and {ratio_max}"
        )));
    }
    let cases: Vec<(i64, i64)> = (1..=d_max)
        .flat_map(|d| (1..=ratio_max).map(move |r| (r * d, d)))
        .collect();
    let cases = verify_cases(&cases, mode)?;
    let first_counterexample = cases
        .iter()
        .find(|c| c.conjecture_status == ConjectureStatus::Counterexample)
        .map(|c| (c.n, c.d));
    Ok(ConjectureReport {
        mode,
        cases,
        first_counterexample,
    })
}

/// Residue data at `λ0 = m` of the `n = 2d` function with `λ3 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub m: i64,
    /// Largest pole order among the summands.
    pub max_summand_order: usize,
    /// Pole order of the full sum.
    pub total_order: usize,
    pub residue: Rational,
    /// Sum of the hand-derived per-summand residues.
    pub paper_residue: Rational,
    /// Each summand's residue agrees with the hand-derived term.
    pub summands_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub d: i64,
    pub poles: Vec<PoleReport>,
    pub phi_is_zero: bool,
}

impl ResidueReport {
    pub fn all_simple(&self) -> bool {
        self.poles.iter().all(|p| p.max_summand_order <= 1)
    }

    pub fn residues_vanish(&self) -> bool {
        self.poles
            .iter()
            .all(|p| p.residue.is_zero() && p.paper_residue.is_zero())
    }

    pub fn passed(&self) -> bool {
        self.phi_is_zero && self.all_simple() && self.residues_vanish() && self.poles.iter().all(|p| p.summands_agree)
    }
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Summand `(d0, d1)` of the `n = 2d` function, homogeneous in `(λ0, λ3)`.
fn phi_summand(d0: i64, d1: i64) -> Factored {
    let sign = if d1 % 2 == 0 { 1 } else { -1 };
    let mut f = Factored::constant(
        NVARS,
        Rational::new(BigInt::from(sign), factorial(d0) * factorial(d1)),
    );
    f.mul_linear(&[1, 0, 0, d0 - d1], 1).expect("arity");
    for t in -d1..=d0 {
        f.mul_linear(&[1, 0, 0, t], -1).expect("arity");
    }
    f
}

/// Hand-derived residue at `λ0 = m` of the summand with `d1 = i`, with `λ3 = 1`.
///
/// For `m >= 0` this is `(-1)^m (m + d - 2i) / ((d-i)! i! (i-m)! (m+d-i)!)`,
/// zero when a factorial argument is negative. Negative `m` uses the symmetry
/// exchanging `d0, d1` under `λ0 -> -λ0`.
pub fn paper_residue_term(d: i64, m: i64, i: i64) -> Rational {
    if i < 0 || i > d {
        return Rational::zero();
    }
    if m < 0 {
        return -paper_residue_term(d, -m, d - i);
    }
    if i < m {
        return Rational::zero();
    }
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Rational::new(
        BigInt::from(sign * (m + d - 2 * i)),
        factorial(d - i) * factorial(i) * factorial(i - m) * factorial(m + d - i),
    )
}

/// Pole and residue analysis of the `n = 2d` case at `λ3 = 1`.
///
/// A summand pole of order two or more is an error.
pub fn residue_vanishing_check(d: i64) -> Result<ResidueReport> {
    if d < 1 {
        return Err(Error::NonPositiveDegree(d));
    }
    let at_one = [(3usize, Rational::one())];
    let summands: Vec<RatFun> = (0..=d)
        .map(|d1| phi_summand(d - d1, d1).to_ratfun().specialize_values(&at_one))
        .collect::<Result<_>>()?;
    let mut phi = RatFun::zero(NVARS);
    for s in &summands {
        phi = &phi + s;
    }
    let mut poles = Vec::new();
    for m in -d..=d {
        let at = Rational::from_integer(m.into());
        let mut max_summand_order = 0;
        let mut residue = Rational::zero();
        let mut paper_residue = Rational::zero();
        let mut summands_agree = true;
        for (d1, s) in summands.iter().enumerate() {
            let order = s.pole_order(0, &at);
            if order > 1 {
                return Err(Error::HigherOrderPole {
                    pole: format!("l0 = {m} in summand ({},{d1})", d - d1 as i64),
                    order,
                });
            }
            max_summand_order = max_summand_order.max(order);
            let r = s.residue_at(0, &at)?;
            let r = constant_value(&r)?;
            let p = paper_residue_term(d, m, d1 as i64);
            summands_agree &= r == p;
            residue += r;
            paper_residue += p;
        }
        poles.push(PoleReport {
            m,
            max_summand_order,
            total_order: phi.pole_order(0, &at),
            residue,
            paper_residue,
            summands_agree,
        });
    }
    Ok(ResidueReport {
        d,
        poles,
        phi_is_zero: phi.is_zero(),
    })
}

fn constant_value(f: &RatFun) -> Result<Rational> {
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    if !f.is_constant() {
        return Err(Error::Invalid(format!("expected a constant residue, got {f}")));
    }
    let num = f.numerator().constant_value().expect("constant");
    let den = f.denominator().constant_value().expect("constant");
    Ok(num / den)
}
