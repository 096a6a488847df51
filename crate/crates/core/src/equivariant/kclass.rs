use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::ratfun::text::{parse_terms, write_term};
use crate::ratfun::Rational;

/// Number of torus parameters `t0..t3`.
pub const RANK: usize = 4;

/// Character `t0^w0 t1^w1 t2^w2 t3^w3` of the four-dimensional torus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub [i32; RANK]);

impl Weight {
    pub const TRIVIAL: Weight = Weight([0; RANK]);

    /// The character `t_i^e`.
    pub fn t(i: usize, e: i32) -> Weight {
        let mut w = [0; RANK];
        w[i] = e;
        Weight(w)
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == [0; RANK]
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|&x| (x as i64).abs()).sum()
    }

    /// Representative modulo `t0 t1 t2 t3 = 1` with vanishing `t1` exponent.
    pub fn reduce_cy(&self) -> Weight {
        let s = self.0[1];
        Weight(self.0.map(|x| x - s))
    }

    pub fn coefficients(&self) -> [i64; RANK] {
        self.0.map(i64::from)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.map(|x| -x))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        crate::ratfun::text::write_monomial(f, self.0.iter().map(|&x| x as i64), "t")
    }
}

/// Virtual representation of the torus: weights with integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KClass {
    terms: BTreeMap<Weight, i64>,
}

impl KClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Weight::TRIVIAL, 1)
    }

    pub fn monomial(w: Weight, mult: i64) -> Self {
        let mut k = Self::zero();
        k.add_term(w, mult);
        k
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut k = Self::zero();
        for (w, m) in terms {
            k.add_term(w, m);
        }
        k
    }

    pub fn add_term(&mut self, w: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(w).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn trivial_multiplicity(&self) -> i64 {
        self.multiplicity(&Weight::TRIVIAL)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Dual representation `t^w -> t^-w`.
    pub fn conj(&self) -> KClass {
        KClass {
            terms: self.terms.iter().map(|(w, m)| (-*w, *m)).collect(),
        }
    }

    /// Multiplies by the character `t^w`.
    pub fn shift(&self, w: Weight) -> KClass {
        KClass {
            terms: self.terms.iter().map(|(v, m)| (*v + w, *m)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> KClass {
        if c == 0 {
            return KClass::zero();
        }
        KClass {
            terms: self.terms.iter().map(|(w, m)| (*w, m * c)).collect(),
        }
    }

    /// Image in the representation ring of the Calabi-Yau subtorus `t0 t1 t2 t3 = 1`.
    pub fn reduce_cy(&self) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(w, m)| (w.reduce_cy(), *m)))
    }

    /// Terms in display order: by total absolute exponent, then descending weight.
    fn display_order(&self) -> Vec<(&Weight, &i64)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.l1_norm().cmp(&b.0.l1_norm()).then(b.0.cmp(a.0)));
        v
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        for (w, m) in &rhs.terms {
            out.add_term(*w, *m);
        }
        out
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        for (w, m) in &rhs.terms {
            out.add_term(*w, -*m);
        }
        out
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl Mul for &KClass {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        let mut out = KClass::zero();
        for (a, m) in &self.terms {
            for (b, n) in &rhs.terms {
                out.add_term(*a + *b, m * n);
            }
        }
        out
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.display_order().into_iter().enumerate() {
            let e: Vec<i64> = w.0.iter().map(|&x| x as i64).collect();
            write_term(f, &Rational::from_integer((*m).into()), &e, "t", i == 0)?;
        }
        Ok(())
    }
}

impl FromStr for KClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(KClass::zero());
        }
        let mut out = KClass::zero();
        for (c, e) in parse_terms(s, 't', RANK)? {
            if !c.denom().is_one() {
                return Err(Error::Parse(format!("non-integer multiplicity {c}")));
            }
            let m = c
                .numer()
                .to_i64()
                .ok_or_else(|| Error::Parse("multiplicity out of range".into()))?;
            let mut w = [0i32; RANK];
            for (slot, x) in w.iter_mut().zip(&e) {
                *slot = i32::try_from(*x).map_err(|_| Error::Parse("exponent out of range".into()))?;
            }
            out.add_term(Weight(w), m);
        }
        Ok(out)
    }
}
