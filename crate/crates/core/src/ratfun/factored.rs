//! Products of linear forms and their sums.
//!
//! Equivariant Euler classes are products of integer linear forms in the
//! torus parameters raised to signed powers. Sums of such products are formed
//! over the least common denominator of the forms and reduced by dividing out
//! linear factors, which avoids general multivariate gcds. When every form
//! lives in the same two variables and all terms share one degree, the
//! numerators are dense homogeneous bivariate polynomials with integer
//! coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Monomial, Poly, RatFun, Rational};
use crate::error::{Error, Result};

/// Primitive integer linear form whose first nonzero coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<i64>);

impl LinearForm {
    /// Normalizes `coeffs`; returns the form and the integer `c` with `coeffs = c * form`.
    pub fn normalize(coeffs: &[i64]) -> Option<(LinearForm, i64)> {
        let g = coeffs.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            return None;
        }
        let first = *coeffs.iter().find(|&&c| c != 0)?;
        let c = if first < 0 { -g } else { g };
        Some((LinearForm(coeffs.iter().map(|&x| x / c).collect()), c))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.0)
    }

    fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, _)| i)
    }
}

/// `scalar * prod form^exp` with pairwise distinct normalized forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    nvars: usize,
    scalar: Rational,
    factors: BTreeMap<LinearForm, i64>,
}

impl Factored {
    pub fn constant(nvars: usize, scalar: Rational) -> Self {
        Factored {
            nvars,
            scalar,
            factors: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> &BTreeMap<LinearForm, i64> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Total degree as a rational function.
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    /// Multiplies by `(sum coeffs[i] x_i)^exp`.
    pub fn mul_linear(&mut self, coeffs: &[i64], exp: i64) -> Result<()> {
        if coeffs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: coeffs.len(),
            });
        }
        if exp == 0 {
            return Ok(());
        }
        let Some((form, c)) = LinearForm::normalize(coeffs) else {
            if exp < 0 {
                return Err(Error::DivisionByZero);
            }
            self.scalar = Rational::zero();
            return Ok(());
        };
        let c = Rational::from_integer(c.into());
        self.scalar *= pow_rational(&c, exp);
        let e = self.factors.entry(form).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn scale(&mut self, c: &Rational) {
        self.scalar *= c;
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (f, e) in &other.factors {
            *out.factors.entry(f.clone()).or_insert(0) += e;
        }
        out.factors.retain(|_, v| *v != 0);
        out
    }

    pub fn to_ratfun(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero(self.nvars);
        }
        let mut num = Poly::constant(self.nvars, self.scalar.clone());
        let mut den = Poly::one(self.nvars);
        for (f, &e) in &self.factors {
            let p = f.to_poly().pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        RatFun::from_coprime(num, den)
    }
}

fn pow_rational(c: &Rational, exp: i64) -> Rational {
    let base = if exp < 0 { c.recip() } else { c.clone() };
    num_traits::pow(base, exp.unsigned_abs() as usize)
}

/// Exact reduced sum of factored terms.
///
/// Numerators are computed in parallel; the result is independent of the
/// number of worker threads.
pub fn sum_factored(terms: &[Factored], nvars: usize) -> RatFun {
    let live: Vec<&Factored> = terms.iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return RatFun::zero(nvars);
    }
    for t in &live {
        assert_eq!(t.nvars, nvars, "arity mismatch in factored sum");
    }
    let mut denom: BTreeMap<LinearForm, i64> = BTreeMap::new();
    for t in &live {
        for (f, &e) in &t.factors {
            if e < 0 {
                let m = denom.entry(f.clone()).or_insert(0);
                *m = (*m).max(-e);
            }
        }
    }
    match bivariate_support(&live, nvars) {
        Some((i, j)) => sum_bivariate(&live, &denom, nvars, i, j),
        None => sum_generic(&live, &denom, nvars),
    }
}

/// The two variables all forms live in, when every term has the same degree.
fn bivariate_support(terms: &[&Factored], nvars: usize) -> Option<(usize, usize)> {
    let deg = terms[0].degree();
    if terms.iter().any(|t| t.degree() != deg) {
        return None;
    }
    let mut used = vec![false; nvars];
    for t in terms {
        for f in t.factors.keys() {
            for v in f.support() {
                used[v] = true;
            }
        }
    }
    let vars: Vec<usize> = (0..nvars).filter(|&v| used[v]).collect();
    match vars.as_slice() {
        [a, b] => Some((*a, *b)),
        [a] => Some(if *a + 1 < nvars { (*a, *a + 1) } else { (*a - 1, *a) }),
        [] if nvars >= 2 => Some((0, 1)),
        _ => None,
    }
}

/// Dense homogeneous polynomial: `c[s]` multiplies `x_i^(m-s) x_j^s`.
type Dense = Vec<BigInt>;

fn dense_mul_linear(p: &Dense, a: &BigInt, b: &BigInt) -> Dense {
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (s, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !a.is_zero() {
            out[s] += c * a;
        }
        if !b.is_zero() {
            out[s + 1] += c * b;
        }
    }
    out
}

/// Exact division by `a x_i + b x_j`, when it divides.
fn dense_div_linear(p: &Dense, a: &BigInt, b: &BigInt) -> Option<Dense> {
    let m = p.len() - 1;
    if m == 0 {
        return if p[0].is_zero() { Some(vec![BigInt::zero()]) } else { None };
    }
    let mut q = vec![BigInt::zero(); m];
    if a.is_zero() {
        // divisor is b x_j
        if !p[0].is_zero() {
            return None;
        }
        for s in 0..m {
            let (qq, r) = p[s + 1].div_rem(b);
            if !r.is_zero() {
                return None;
            }
            q[s] = qq;
        }
        return Some(q);
    }
    for s in 0..m {
        let mut c = p[s].clone();
        if s > 0 {
            c -= b * &q[s - 1];
        }
        let (qq, r) = c.div_rem(a);
        if !r.is_zero() {
            return None;
        }
        q[s] = qq;
    }
    (p[m] == b * &q[m - 1]).then_some(q)
}

fn dense_from_forms(
    factors: &BTreeMap<LinearForm, i64>,
    denom: &BTreeMap<LinearForm, i64>,
    i: usize,
    j: usize,
) -> Dense {
    let mut p: Dense = vec![BigInt::one()];
    let mut all: BTreeMap<&LinearForm, i64> = denom.iter().map(|(f, m)| (f, *m)).collect();
    for (f, e) in factors {
        *all.entry(f).or_insert(0) += e;
    }
    for (f, e) in all {
        debug_assert!(e >= 0);
        let a = BigInt::from(f.0[i]);
        let b = BigInt::from(f.0[j]);
        for _ in 0..e {
            p = dense_mul_linear(&p, &a, &b);
        }
    }
    p
}

fn dense_to_poly(p: &[BigInt], scale: &Rational, nvars: usize, i: usize, j: usize) -> Poly {
    let m = p.len() - 1;
    Poly::from_terms(
        nvars,
        p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(s, c)| {
            let mut e = vec![0u32; nvars];
            e[i] = (m - s) as u32;
            e[j] += s as u32;
            (Monomial::new(e), Rational::from_integer(c.clone()) * scale)
        }),
    )
}

fn sum_bivariate(
    terms: &[&Factored],
    denom: &BTreeMap<LinearForm, i64>,
    nvars: usize,
    i: usize,
    j: usize,
) -> RatFun {
    let common = terms
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.scalar.denom()));
    let total = terms
        .par_iter()
        .map(|t| {
            let k = t.scalar.numer() * (&common / t.scalar.denom());
            dense_from_forms(&t.factors, denom, i, j)
                .into_iter()
                .map(|c| c * &k)
                .collect::<Dense>()
        })
        .reduce_with(|mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
        .expect("nonempty");
    if total.iter().all(Zero::is_zero) {
        return RatFun::zero(nvars);
    }
    let mut num = total;
    let mut den: Dense = vec![BigInt::one()];
    for (f, &m) in denom {
        let a = BigInt::from(f.0[i]);
        let b = BigInt::from(f.0[j]);
        let mut left = m;
        while left > 0 {
            match dense_div_linear(&num, &a, &b) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        for _ in 0..left {
            den = dense_mul_linear(&den, &a, &b);
        }
    }
    let scale = Rational::new(BigInt::one(), common);
    let num = dense_to_poly(&num, &scale, nvars, i, j);
    let den = dense_to_poly(&den, &Rational::one(), nvars, i, j);
    RatFun::from_coprime(num, den)
}

fn sum_generic(terms: &[&Factored], denom: &BTreeMap<LinearForm, i64>, nvars: usize) -> RatFun {
    let parts: Vec<Poly> = terms
        .par_iter()
        .map(|t| {
            let mut all: BTreeMap<&LinearForm, i64> = denom.iter().map(|(f, m)| (f, *m)).collect();
            for (f, e) in &t.factors {
                *all.entry(f).or_insert(0) += e;
            }
            let mut p = Poly::constant(nvars, t.scalar.clone());
            for (f, e) in all {
                if e > 0 {
                    p = &p * &f.to_poly().pow(e as u32);
                }
            }
            p
        })
        .collect();
    let mut num = Poly::zero(nvars);
    for p in &parts {
        num = &num + p;
    }
    if num.is_zero() {
        return RatFun::zero(nvars);
    }
    let mut den = Poly::one(nvars);
    for (f, &m) in denom {
        let lp = f.to_poly();
        let mut left = m;
        while left > 0 {
            match num.div_exact(&lp) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        if left > 0 {
            den = &den * &lp.pow(left as u32);
        }
    }
    RatFun::from_coprime(num, den)
}
