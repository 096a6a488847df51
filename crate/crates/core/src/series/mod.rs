//! Truncated generating series over a curve-class lattice.
//!
//! Classes are nonnegative integer vectors; the degree of a class is its
//! pairing with a vector of positive weights. Series are truncated at a
//! maximal `y` power `N` and a maximal degree `D`.

mod gv;
mod pt;
mod walls;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfun::Rational;

pub use gv::{gv0_from_gw, gw0_from_gv0, gw1_assemble, gw1_extract, ClassMap, GVTable, MeetingMap};
pub use pt::{
    js_coeff_from_gv, macmahon, p0_series, pt_coeff_from_gv, pt_series_from_gv, telescoping_check,
    wall_jump_check, walls, CoefficientCheck, TelescopingReport, WallJumpReport,
};
pub use walls::{no_wall_predicate, wall_candidates, NMinTable};

/// Effective curve class: a vector of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Class(pub Vec<u32>);

impl Class {
    pub fn zero(rank: usize) -> Self {
        Class(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Class) -> Class {
        Class(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when it stays effective.
    pub fn checked_sub(&self, other: &Class) -> Option<Class> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Class)
    }

    pub fn scale(&self, k: u32) -> Class {
        Class(self.0.iter().map(|c| c * k).collect())
    }

    /// `self / k` when every entry is divisible by `k`.
    pub fn divide(&self, k: u32) -> Option<Class> {
        self.0
            .iter()
            .map(|c| (c % k == 0).then_some(c / k))
            .collect::<Option<Vec<_>>>()
            .map(Class)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Class) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("class must look like [b1,..,br], got {s:?}")))?;
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad class entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Class)
    }
}

/// Class lattice with degree weights and a degree truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLattice {
    omega: Vec<u64>,
    max_degree: u64,
}

impl ClassLattice {
    pub fn new(omega: Vec<u64>, max_degree: u64) -> Result<Self> {
        if omega.is_empty() || omega.contains(&0) {
            return Err(Error::Invalid(format!(
                "degree weights must be a nonempty list of positive integers, got {omega:?}"
            )));
        }
        Ok(ClassLattice { omega, max_degree })
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[u64] {
        &self.omega
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn with_max_degree(&self, max_degree: u64) -> Self {
        ClassLattice {
            omega: self.omega.clone(),
            max_degree,
        }
    }

    pub fn degree(&self, c: &Class) -> u64 {
        self.omega.iter().zip(&c.0).map(|(w, b)| w * *b as u64).sum()
    }

    pub fn check(&self, c: &Class) -> Result<()> {
        if c.rank() != self.rank() {
            return Err(Error::Invalid(format!(
                "class {c} has rank {}, lattice rank is {}",
                c.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// All effective classes of degree at most the truncation, by degree then entries.
    pub fn classes(&self) -> Vec<Class> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.rank()];
        self.fill(0, 0, &mut cur, &mut out);
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then(a.cmp(b)));
        out
    }

    fn fill(&self, pos: usize, deg: u64, cur: &mut Vec<u32>, out: &mut Vec<Class>) {
        if pos == cur.len() {
            out.push(Class(cur.clone()));
            return;
        }
        let mut b = 0u32;
        while deg + self.omega[pos] * b as u64 <= self.max_degree {
            cur[pos] = b;
            self.fill(pos + 1, deg + self.omega[pos] * b as u64, cur, out);
            b += 1;
        }
        cur[pos] = 0;
    }

    /// Classes `0 < c < beta` componentwise.
    pub fn proper_subclasses(&self, beta: &Class) -> Vec<Class> {
        let sub = ClassLattice {
            omega: self.omega.clone(),
            max_degree: self.degree(beta),
        };
        sub.classes()
            .into_iter()
            .filter(|c| !c.is_zero() && c != beta && c.le(beta))
            .collect()
    }
}

/// Which side of a wall a stability parameter sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
    Exact,
}

/// Stability parameter `t`, possibly a one-sided limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityParam {
    /// `t -> 0+`: no class is active.
    ZeroLimit,
    Finite { t: Rational, side: Side },
    /// `t -> infinity`: every nonzero class is active.
    Infinity,
}

impl StabilityParam {
    pub fn finite(t: Rational, side: Side) -> Result<Self> {
        if t <= Rational::zero() {
            return Err(Error::Invalid(format!("stability parameter must be positive, got {t}")));
        }
        Ok(StabilityParam::Finite { t, side })
    }

    /// Whether a class of degree `deg` satisfies `deg > 1/t`.
    pub fn active(&self, deg: u64) -> Result<bool> {
        if deg == 0 {
            return Ok(false);
        }
        match self {
            StabilityParam::ZeroLimit => Ok(false),
            StabilityParam::Infinity => Ok(true),
            StabilityParam::Finite { t, side } => {
                let td = t * Rational::from_integer(BigInt::from(deg));
                match td.cmp(&Rational::one()) {
                    std::cmp::Ordering::Greater => Ok(true),
                    std::cmp::Ordering::Less => Ok(false),
                    std::cmp::Ordering::Equal => match side {
                        Side::Plus => Ok(true),
                        Side::Minus => Ok(false),
                        Side::Exact => Err(Error::OnWall {
                            t: t.to_string(),
                            class: format!("of degree {deg}"),
                        }),
                    },
                }
            }
        }
    }
}

impl fmt::Display for StabilityParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityParam::ZeroLimit => f.write_str("0+"),
            StabilityParam::Infinity => f.write_str("inf"),
            StabilityParam::Finite { t, side } => match side {
                Side::Plus => write!(f, "{t}+"),
                Side::Minus => write!(f, "{t}-"),
                Side::Exact => write!(f, "{t}"),
            },
        }
    }
}

impl FromStr for StabilityParam {
    type Err = Error;

    /// Accepts `0+`, `inf`, `p/q`, `p/q+` and `p/q-`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "0+" => return Ok(StabilityParam::ZeroLimit),
            "inf" | "infinity" => return Ok(StabilityParam::Infinity),
            _ => {}
        }
        let (body, side) = if let Some(b) = s.strip_suffix('+') {
            (b, Side::Plus)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, Side::Minus)
        } else {
            (s, Side::Exact)
        };
        let t = parse_rational(body)?;
        StabilityParam::finite(t, side)
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("expected a rational p/q, got {s:?}"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Series in `y` and `q^beta` truncated at `y^N` and degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    lattice: ClassLattice,
    n_max: u32,
    coeffs: BTreeMap<(u32, Class), Rational>,
}

impl TruncatedSeries {
    pub fn zero(lattice: &ClassLattice, n_max: u32) -> Self {
        TruncatedSeries {
            lattice: lattice.clone(),
            n_max,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(lattice: &ClassLattice, n_max: u32) -> Self {
        let mut s = Self::zero(lattice, n_max);
        s.coeffs
            .insert((0, Class::zero(lattice.rank())), Rational::one());
        s
    }

    pub fn lattice(&self) -> &ClassLattice {
        &self.lattice
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn within(&self, n: u32, c: &Class) -> bool {
        n <= self.n_max && self.lattice.degree(c) <= self.lattice.max_degree
    }

    /// Adds `value * y^n q^c`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, n: u32, c: Class, value: Rational) {
        if value.is_zero() || !self.within(n, &c) {
            return;
        }
        let key = (n, c);
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, n: u32, c: &Class) -> Rational {
        self.coeffs
            .get(&(n, c.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, Class), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.lattice, self.n_max)
    }

    fn check_compatible(&self, other: &TruncatedSeries) {
        assert_eq!(self.lattice, other.lattice, "series over different lattices");
        assert_eq!(self.n_max, other.n_max, "series with different truncations");
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let mut out = self.clone();
        for ((n, c), v) in &other.coeffs {
            out.add_term(*n, c.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> TruncatedSeries {
        let mut out = Self::zero(&self.lattice, self.n_max);
        for ((n, c), v) in &self.coeffs {
            out.add_term(*n, c.clone(), v * k);
        }
        out
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let mut out = Self::zero(&self.lattice, self.n_max);
        let max = self.lattice.max_degree;
        for ((n1, c1), v1) in &self.coeffs {
            let d1 = self.lattice.degree(c1);
            for ((n2, c2), v2) in &other.coeffs {
                if n1 + n2 > self.n_max || d1 + self.lattice.degree(c2) > max {
                    continue;
                }
                out.add_term(n1 + n2, c1.add(c2), v1 * v2);
            }
        }
        out
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        let origin = (0, Class::zero(self.lattice.rank()));
        if self.coeffs.contains_key(&origin) {
            return Err(Error::Invalid("exp needs a series without constant term".into()));
        }
        let mut out = Self::one(&self.lattice, self.n_max);
        let mut power = Self::one(&self.lattice, self.n_max);
        let mut j = 1u64;
        loop {
            power = power.mul(self).scale(&Rational::new(BigInt::one(), BigInt::from(j)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            j += 1;
        }
        Ok(out)
    }

    /// Restriction to a smaller truncation.
    pub fn truncate(&self, lattice: &ClassLattice, n_max: u32) -> TruncatedSeries {
        assert_eq!(lattice.omega, self.lattice.omega, "different degree weights");
        let mut out = Self::zero(lattice, n_max);
        for ((n, c), v) in &self.coeffs {
            out.add_term(*n, c.clone(), v.clone());
        }
        out
    }
}
