use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::gcd::primitive_gcd;
use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced quotient of two polynomials.
///
/// Invariants: the denominator is nonzero, integer-primitive and has positive
/// leading coefficient, and numerator and denominator are coprime. Two equal
/// rational functions therefore have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.nvars()));
        }
        let g = primitive_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds from parts already known to be coprime; only unit normalization is applied.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        let (c, den) = den.primitive();
        let num = num.scale(&c.recip());
        RatFun { num, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFun {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(Poly::var(nvars, index))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFun {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn checked_add(&self, other: &RatFun) -> Result<RatFun> {
        self.num.check_arity(&other.num)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // with g = gcd(b, d), only factors of g can cancel from a*(d/g) + c*(b/g)
        let g = primitive_gcd(&self.den, &other.den);
        let bq = self.den.div_exact(&g).expect("gcd divides");
        let dq = other.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &dq) + &(&other.num * &bq);
        if t.is_zero() {
            return Ok(RatFun::zero(self.nvars()));
        }
        let den = &bq * &dq;
        if g.is_one() {
            return Ok(RatFun::from_coprime(t, den));
        }
        let h = primitive_gcd(&t, &g);
        let t = t.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        Ok(RatFun::from_coprime(t, &den * &g))
    }

    pub fn checked_sub(&self, other: &RatFun) -> Result<RatFun> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RatFun) -> Result<RatFun> {
        self.num.check_arity(&other.num)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFun::zero(self.nvars()));
        }
        let g1 = primitive_gcd(&self.num, &other.den);
        let g2 = primitive_gcd(&other.num, &self.den);
        let num = &self.num.div_exact(&g1).expect("gcd divides")
            * &other.num.div_exact(&g2).expect("gcd divides");
        let den = &self.den.div_exact(&g2).expect("gcd divides")
            * &other.den.div_exact(&g1).expect("gcd divides");
        Ok(RatFun::from_coprime(num, den))
    }

    pub fn checked_div(&self, other: &RatFun) -> Result<RatFun> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.nvars());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: i32) -> Result<RatFun> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Substitutes polynomials (or constants) for variables and reduces.
    pub fn specialize(&self, assignments: &[(usize, Poly)]) -> Result<RatFun> {
        let num = self.num.substitute(assignments)?;
        let den = self.den.substitute(assignments)?;
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        RatFun::new(num, den)
    }

    pub fn specialize_values(&self, assignments: &[(usize, Rational)]) -> Result<RatFun> {
        let n = self.nvars();
        let polys: Vec<(usize, Poly)> = assignments
            .iter()
            .map(|(v, c)| (*v, Poly::constant(n, c.clone())))
            .collect();
        self.specialize(&polys)
    }

    /// Residue at `var = pole`, assuming at most a simple pole there.
    ///
    /// Returns zero when the denominator does not vanish at the point.
    pub fn residue_at(&self, var: usize, pole: &Rational) -> Result<RatFun> {
        let n = self.nvars();
        if self.is_zero() {
            return Ok(RatFun::zero(n));
        }
        let order = self.pole_order(var, pole);
        let lin = &Poly::var(n, var) - &Poly::constant(n, pole.clone());
        match order {
            0 => Ok(RatFun::zero(n)),
            1 => {
                let rest = self.den.div_exact(&lin).expect("simple pole factor");
                let num = self.num.eval_var(var, pole);
                let den = rest.eval_var(var, pole);
                RatFun::new(num, den)
            }
            order => Err(Error::HigherOrderPole {
                pole: pole.to_string(),
                order,
            }),
        }
    }

    /// Multiplicity of `(var - pole)` in the denominator.
    pub fn pole_order(&self, var: usize, pole: &Rational) -> usize {
        let n = self.nvars();
        let lin = &Poly::var(n, var) - &Poly::constant(n, pole.clone());
        let mut den = self.den.clone();
        let mut order = 0;
        while let Some(q) = den.div_exact(&lin) {
            den = q;
            order += 1;
        }
        order
    }

    /// Degree `deg(num) - deg(den)` when both parts are homogeneous.
    ///
    /// The zero function is reported as `Some(0)`; use
    /// [`RatFun::is_homogeneous_of_degree`] when the degree matters.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let a = self.num.homogeneous_degree()? as i64;
        let b = self.den.homogeneous_degree()? as i64;
        Some(a - b)
    }

    pub fn is_homogeneous_of_degree(&self, degree: i64) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(degree)
    }

    /// Canonical text form, e.g. `(1/6)/(l3^3)`; the zero function prints as `0`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.checked_add(rhs).expect("rational function arity mismatch")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.checked_sub(rhs).expect("rational function arity mismatch")
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        self.checked_mul(rhs).expect("rational function arity mismatch")
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl FromStr for RatFun {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::text::parse_ratfun(s, super::NVARS)
    }
}
