use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::gv::{ClassMap, GVTable};
use super::{Class, ClassLattice, Side, StabilityParam, TruncatedSeries};
use crate::error::Result;
use crate::ratfun::Rational;

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rat<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_class<S: Serializer>(c: &Class, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Coefficients of `prod_{k >= 1} (1 - q^k)^-k` through `q^order`.
pub fn macmahon(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for k in 1..=order {
        for _ in 0..k {
            for i in k..=order {
                let prev = c[i - k].clone();
                c[i] += prev;
            }
        }
    }
    c
}

/// `sum P_{0,beta} q^beta`: the table's `p0` when given, otherwise
/// `prod_beta M(q^beta)^(n_{1,beta})`.
pub fn p0_series(gv: &GVTable, lattice: &ClassLattice) -> ClassMap {
    if let Some(p0) = &gv.p0 {
        return p0
            .iter()
            .filter(|(c, v)| lattice.degree(c) <= lattice.max_degree() && !v.is_zero())
            .map(|(c, v)| (c.clone(), v.clone()))
            .collect();
    }
    // log M(x) = sum_{k, m >= 1} (k / m) x^(k m)
    let mut log = TruncatedSeries::zero(lattice, 0);
    for (c, v) in &gv.n1 {
        let deg = lattice.degree(c);
        if deg == 0 || deg > lattice.max_degree() {
            continue;
        }
        let max_mult = (lattice.max_degree() / deg) as u32;
        for k in 1..=max_mult {
            for m in 1..=max_mult / k {
                let w = Rational::new(BigInt::from(k), BigInt::from(m));
                log.add_term(0, c.scale(k * m), v * w);
            }
        }
    }
    let series = log.exp().expect("no constant term");
    series
        .terms()
        .map(|((_, c), v)| (c.clone(), v.clone()))
        .collect()
}

fn active_n0(
    param: &StabilityParam,
    gv: &GVTable,
    lattice: &ClassLattice,
) -> Result<Vec<(Class, Rational)>> {
    let mut out = Vec::new();
    for (c, v) in &gv.n0 {
        let deg = lattice.degree(c);
        if deg > lattice.max_degree() || v.is_zero() {
            continue;
        }
        if param.active(deg)? {
            out.push((c.clone(), v.clone()));
        }
    }
    Ok(out)
}

/// Ordered convolution: `f(gamma) -> sum_{b in parts} w(b) f(gamma - b)` on classes below `beta`.
fn convolve(
    f: &BTreeMap<Class, Rational>,
    parts: &[(Class, Rational)],
    below: &[Class],
) -> BTreeMap<Class, Rational> {
    let mut out = BTreeMap::new();
    for gamma in below {
        let mut acc = Rational::zero();
        for (b, w) in parts {
            if let Some(rest) = gamma.checked_sub(b) {
                if let Some(v) = f.get(&rest) {
                    acc += w * v;
                }
            }
        }
        if !acc.is_zero() {
            out.insert(gamma.clone(), acc);
        }
    }
    out
}

fn classes_below(lattice: &ClassLattice, beta: &Class) -> Vec<Class> {
    lattice
        .with_max_degree(lattice.degree(beta))
        .classes()
        .into_iter()
        .filter(|c| c.le(beta))
        .collect()
}

/// `P^t_{n,beta}` as the sum over ordered tuples `beta_0 + beta_1 + ... + beta_n = beta`
/// with `deg beta_i > 1/t` for `i >= 1`.
pub fn pt_coeff_from_gv(
    param: &StabilityParam,
    n: u32,
    beta: &Class,
    gv: &GVTable,
    lattice: &ClassLattice,
) -> Result<Rational> {
    lattice.check(beta)?;
    if lattice.degree(beta) > lattice.max_degree() {
        return Err(crate::Error::Invalid(format!(
            "class {beta} lies beyond the degree truncation {}",
            lattice.max_degree()
        )));
    }
    let below = classes_below(lattice, beta);
    let p0 = p0_series(gv, lattice);
    let mut f: BTreeMap<Class, Rational> = below
        .iter()
        .filter_map(|c| p0.get(c).map(|v| (c.clone(), v.clone())))
        .collect();
    let parts = active_n0(param, gv, lattice)?;
    for _ in 0..n {
        f = convolve(&f, &parts, &below);
    }
    Ok(f.get(beta).cloned().unwrap_or_else(Rational::zero))
}

/// All `P^t_{n,beta}` within the truncation, by the ordered-tuple sum.
fn coeff_table(
    param: &StabilityParam,
    gv: &GVTable,
    lattice: &ClassLattice,
    n_max: u32,
) -> Result<BTreeMap<(u32, Class), Rational>> {
    let all = lattice.classes();
    let parts = active_n0(param, gv, lattice)?;
    let mut f: BTreeMap<Class, Rational> = p0_series(gv, lattice).into_iter().collect();
    let mut out = BTreeMap::new();
    for n in 0..=n_max {
        if n > 0 {
            f = convolve(&f, &parts, &all);
        }
        for (c, v) in &f {
            out.insert((n, c.clone()), v.clone());
        }
    }
    Ok(out)
}

fn lookup(t: &BTreeMap<(u32, Class), Rational>, n: u32, c: &Class) -> Rational {
    t.get(&(n, c.clone())).cloned().unwrap_or_else(Rational::zero)
}

/// Joyce-Song chamber value: ordered tuples of `n` classes of degree `deg(beta) / n`.
pub fn js_coeff_from_gv(n: u32, beta: &Class, gv: &GVTable, lattice: &ClassLattice) -> Result<Rational> {
    lattice.check(beta)?;
    if n == 0 {
        return Ok(p0_series(gv, lattice)
            .get(beta)
            .cloned()
            .unwrap_or_else(Rational::zero));
    }
    let deg = lattice.degree(beta);
    if !deg.is_multiple_of(n as u64) {
        return Ok(Rational::zero());
    }
    let parts: Vec<(Class, Rational)> = gv
        .n0
        .iter()
        .filter(|(c, v)| lattice.degree(c) * n as u64 == deg && !v.is_zero())
        .map(|(c, v)| (c.clone(), v.clone()))
        .collect();
    let below = classes_below(lattice, beta);
    let mut f = BTreeMap::new();
    f.insert(Class::zero(lattice.rank()), Rational::one());
    for _ in 0..n {
        f = convolve(&f, &parts, &below);
    }
    Ok(f.get(beta).cloned().unwrap_or_else(Rational::zero))
}

fn exp_monomial(lattice: &ClassLattice, n_max: u32, c: &Class, coeff: &Rational) -> Result<TruncatedSeries> {
    let mut x = TruncatedSeries::zero(lattice, n_max);
    x.add_term(1, c.clone(), coeff.clone());
    x.exp()
}

/// `prod_{deg beta > 1/t} exp(y q^beta)^(n_{0,beta}) * sum P_{0,beta} q^beta`.
pub fn pt_series_from_gv(
    param: &StabilityParam,
    gv: &GVTable,
    lattice: &ClassLattice,
    n_max: u32,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(lattice, n_max);
    for (c, v) in p0_series(gv, lattice) {
        out.add_term(0, c, v);
    }
    for (c, v) in active_n0(param, gv, lattice)? {
        out = out.mul(&exp_monomial(lattice, n_max, &c, &v)?);
    }
    Ok(out)
}

/// `prod_{deg beta = 1/t0} exp(y q^beta)^(n_{0,beta})`.
fn wall_factor(t0: &Rational, gv: &GVTable, lattice: &ClassLattice, n_max: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(lattice, n_max);
    for (c, v) in &gv.n0 {
        let deg = lattice.degree(c);
        if deg == 0 || deg > lattice.max_degree() || v.is_zero() {
            continue;
        }
        if t0 * Rational::from_integer(deg.into()) == Rational::one() {
            out = out.mul(&exp_monomial(lattice, n_max, c, v)?);
        }
    }
    Ok(out)
}

/// Values `1 / deg(beta)` over classes with nonzero `n_0`, increasing.
pub fn walls(gv: &GVTable, lattice: &ClassLattice) -> Vec<Rational> {
    let mut out: Vec<Rational> = gv
        .n0
        .iter()
        .filter(|(c, v)| {
            let d = lattice.degree(c);
            !v.is_zero() && d > 0 && d <= lattice.max_degree()
        })
        .map(|(c, _)| Rational::new(BigInt::one(), BigInt::from(lattice.degree(c))))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// One coefficient `(n, beta)` across a wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub n: u32,
    #[serde(serialize_with = "ser_class")]
    pub beta: Class,
    #[serde(serialize_with = "ser_rat")]
    pub plus: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub minus: Rational,
    /// Expanded coefficient identity, summed over `k` wall classes.
    #[serde(serialize_with = "ser_rat")]
    pub expanded_rhs: Rational,
    /// Only the `k = 1` term is nonzero.
    pub simple: bool,
    /// `sum n P^{t0}_{n-1,beta'} n_{0,beta''}` at simple walls.
    #[serde(serialize_with = "ser_opt_rat")]
    pub simple_rhs: Option<Rational>,
    /// `n!` times the series coefficient jump equals `plus - minus`.
    pub series_agrees: bool,
}

impl CoefficientCheck {
    pub fn jump(&self) -> Rational {
        &self.plus - &self.minus
    }

    pub fn passed(&self) -> bool {
        let jump = self.jump();
        self.series_agrees
            && jump == self.expanded_rhs
            && self.simple_rhs.as_ref().is_none_or(|r| *r == jump)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallJumpReport {
    #[serde(serialize_with = "ser_rat")]
    pub t0: Rational,
    /// `PT^{t0+} = (wall factor) * PT^{t0-}` within the truncation.
    pub series_identity: bool,
    pub checks: Vec<CoefficientCheck>,
}

impl WallJumpReport {
    pub fn passed(&self) -> bool {
        self.series_identity && self.checks.iter().all(CoefficientCheck::passed)
    }

    pub fn simple_walls(&self) -> usize {
        self.checks.iter().filter(|c| c.simple).count()
    }
}

/// Compares both sides of a wall at `t0` for every coefficient in the truncation.
pub fn wall_jump_check(
    t0: &Rational,
    gv: &GVTable,
    lattice: &ClassLattice,
    n_max: u32,
) -> Result<WallJumpReport> {
    let plus_param = StabilityParam::finite(t0.clone(), Side::Plus)?;
    let minus_param = StabilityParam::finite(t0.clone(), Side::Minus)?;
    let plus = pt_series_from_gv(&plus_param, gv, lattice, n_max)?;
    let minus = pt_series_from_gv(&minus_param, gv, lattice, n_max)?;
    let factor = wall_factor(t0, gv, lattice, n_max)?;
    let series_identity = plus == factor.mul(&minus);

    let wall_parts: Vec<(Class, Rational)> = gv
        .n0
        .iter()
        .filter(|(c, v)| {
            let d = lattice.degree(c);
            !v.is_zero() && d > 0 && t0 * Rational::from_integer(d.into()) == Rational::one()
        })
        .map(|(c, v)| (c.clone(), v.clone()))
        .collect();

    let plus_table = coeff_table(&plus_param, gv, lattice, n_max)?;
    let minus_table = coeff_table(&minus_param, gv, lattice, n_max)?;
    let classes = lattice.classes();
    let mut checks = Vec::new();
    for n in 0..=n_max {
        for beta in &classes {
            let p_plus = lookup(&plus_table, n, beta);
            let p_minus = lookup(&minus_table, n, beta);
            let below = classes_below(lattice, beta);
            // w_k(beta'') = sum over ordered k-tuples of wall classes
            let mut wk = BTreeMap::new();
            wk.insert(Class::zero(lattice.rank()), Rational::one());
            let mut expanded_rhs = Rational::zero();
            let mut higher_nonzero = false;
            let mut first = Rational::zero();
            for k in 1..=n {
                wk = convolve(&wk, &wall_parts, &below);
                let mut term = Rational::zero();
                for (b2, w) in &wk {
                    let b1 = beta.checked_sub(b2).expect("below beta");
                    term += w * lookup(&minus_table, n - k, &b1);
                }
                let term = term * Rational::from_integer(binomial(n, k));
                if k == 1 {
                    first = term.clone();
                } else if !term.is_zero() {
                    higher_nonzero = true;
                }
                expanded_rhs += term;
            }
            let simple = !first.is_zero() && !higher_nonzero;
            let simple_rhs = if simple {
                let mut acc = Rational::zero();
                for (b2, w) in &wall_parts {
                    if let Some(b1) = beta.checked_sub(b2) {
                        let p = lookup(&minus_table, n - 1, &b1);
                        acc += Rational::from_integer(n.into()) * p * w;
                    }
                }
                Some(acc)
            } else {
                None
            };
            let scale = Rational::from_integer(factorial(n));
            let series_jump = (plus.coeff(n, beta) - minus.coeff(n, beta)) * &scale;
            let series_agrees = series_jump == &p_plus - &p_minus
                && plus.coeff(n, beta) * &scale == p_plus;
            checks.push(CoefficientCheck {
                n,
                beta: beta.clone(),
                plus: p_plus,
                minus: p_minus,
                expanded_rhs,
                simple,
                simple_rhs,
                series_agrees,
            });
        }
    }
    Ok(WallJumpReport {
        t0: t0.clone(),
        series_identity,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopingReport {
    #[serde(serialize_with = "ser_rats")]
    pub walls: Vec<Rational>,
    /// After each wall, the running product equals the series just above it.
    pub each_wall: Vec<bool>,
    /// The full product equals the `t -> infinity` series.
    pub reaches_infinity: bool,
}

fn ser_rats<S: Serializer>(r: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

impl TelescopingReport {
    pub fn passed(&self) -> bool {
        self.reaches_infinity && self.each_wall.iter().all(|&b| b)
    }
}

/// Multiplies the `t -> 0+` series by the wall factors in increasing `t`.
pub fn telescoping_check(gv: &GVTable, lattice: &ClassLattice, n_max: u32) -> Result<TelescopingReport> {
    let ws = walls(gv, lattice);
    let mut running = pt_series_from_gv(&StabilityParam::ZeroLimit, gv, lattice, n_max)?;
    let mut each_wall = Vec::new();
    for w in &ws {
        running = wall_factor(w, gv, lattice, n_max)?.mul(&running);
        let above = pt_series_from_gv(&StabilityParam::finite(w.clone(), Side::Plus)?, gv, lattice, n_max)?;
        each_wall.push(running == above);
    }
    let top = pt_series_from_gv(&StabilityParam::Infinity, gv, lattice, n_max)?;
    Ok(TelescopingReport {
        walls: ws,
        each_wall,
        reaches_infinity: running == top,
    })
}
