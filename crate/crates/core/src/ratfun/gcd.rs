//! Multivariate gcd over the rationals.
//!
//! Recursive primitive remainder sequences: the polynomial is viewed as
//! univariate in its first used variable with coefficients in the remaining
//! ones, contents are computed recursively and stripped after every
//! pseudo-division step.

use num_integer::Integer;
use num_traits::Zero;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Greatest common divisor of `a` and `b`.
///
/// The result is `g * p` where `g` is the gcd of the rational contents of the
/// inputs and `p` is integer-primitive with positive leading coefficient.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let c = rational_gcd(&a.content(), &b.content());
    Ok(primitive_gcd(a, b).scale(&c))
}

pub(crate) fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn normalize(p: &Poly) -> Poly {
    p.primitive().1
}

/// Gcd up to a rational unit, normalized integer-primitive with positive leading coefficient.
pub(crate) fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a == b {
        return normalize(a);
    }
    if b.div_exact(a).is_some() {
        return normalize(a);
    }
    if a.div_exact(b).is_some() {
        return normalize(b);
    }
    // degree bounds from univariate images; the gcd is free of every variable with bound 0
    let mut best: Option<(u32, usize)> = None;
    for v in (0..n).filter(|&v| a.uses(v) || b.uses(v)) {
        let bound = if a.uses(v) && b.uses(v) {
            degree_bound(a, b, v)
        } else {
            0
        };
        if bound == 0 {
            return primitive_gcd(&content_in(a, v), &content_in(b, v));
        }
        if best.is_none_or(|(d, _)| bound < d) {
            best = Some((bound, v));
        }
    }
    let var = best.expect("non-constant polynomial uses a variable").1;
    if !a.uses(var) {
        return primitive_gcd(a, &content_in(b, var));
    }
    if !b.uses(var) {
        return primitive_gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = primitive_gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, var);
    normalize(&(&c * &g))
}

/// Gcd of the coefficients of `p` viewed as univariate in `var`.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g: Option<Poly> = None;
    for c in p.coefficients_in(var).into_iter().filter(|c| !c.is_zero()) {
        if c.is_constant() {
            return Poly::one(p.nvars());
        }
        g = Some(match g {
            None => normalize(&c),
            Some(acc) => primitive_gcd(&acc, &c),
        });
        if g.as_ref().is_some_and(Poly::is_constant) {
            return Poly::one(p.nvars());
        }
    }
    g.unwrap_or_else(|| Poly::one(p.nvars()))
}

/// Subresultant remainder sequence for inputs primitive in `var`.
fn prs(a: Poly, b: Poly, var: usize) -> Poly {
    let n = a.nvars();
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    let mut lc_prev = Poly::one(n);
    let mut h = Poly::one(n);
    loop {
        let delta = f.degree_in(var) - g.degree_in(var);
        let r = exact_prem(&f, &g, var);
        if r.is_zero() {
            let c = content_in(&g, var);
            return normalize(&g.div_exact(&c).expect("content divides"));
        }
        if r.degree_in(var) == 0 {
            return Poly::one(n);
        }
        let divisor = &lc_prev * &h.pow(delta);
        let next = r.div_exact(&divisor).expect("subresultant division is exact");
        f = g;
        g = next;
        lc_prev = leading_coeff_in(&f, var);
        h = if delta == 0 {
            h
        } else {
            let num = lc_prev.pow(delta);
            num.div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

fn leading_coeff_in(p: &Poly, var: usize) -> Poly {
    p.coefficients_in(var).pop().expect("nonzero polynomial")
}

/// `lc(g)^(deg f - deg g + 1) * f mod g` in `var`.
fn exact_prem(f: &Poly, g: &Poly, var: usize) -> Poly {
    let n = f.nvars();
    let gc = g.coefficients_in(var);
    let dg = gc.len() - 1;
    let lcg = gc[dg].clone();
    let mut r = f.coefficients_in(var);
    let mut steps = (r.len() - 1 - dg + 1) as u32;
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for ri in r.iter_mut() {
            *ri = &*ri * &lcg;
        }
        for (i, gi) in gc.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * gi);
        }
        steps -= 1;
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    let rem = Poly::from_coefficients_in(n, var, &r);
    if steps > 0 {
        &rem * &lcg.pow(steps)
    } else {
        rem
    }
}

/// A nonzero multiple of the remainder of `f` by `g` in `var`.
fn pseudo_rem(f: &Poly, g: &Poly, var: usize) -> Poly {
    let n = f.nvars();
    let gc = g.coefficients_in(var);
    let dg = gc.len() - 1;
    let lcg = gc[dg].clone();
    let mut r = f.coefficients_in(var);
    // over a constant leading coefficient plain field division keeps coefficients small
    let field_lc = lcg.constant_value();
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        match &field_lc {
            Some(c) => {
                let q = lr.scale(&c.recip());
                for (i, gi) in gc.iter().enumerate() {
                    r[i + shift] = &r[i + shift] - &(&q * gi);
                }
            }
            None => {
                for ri in r.iter_mut() {
                    *ri = &*ri * &lcg;
                }
                for (i, gi) in gc.iter().enumerate() {
                    r[i + shift] = &r[i + shift] - &(&lr * gi);
                }
            }
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    Poly::from_coefficients_in(n, var, &r)
}

/// Upper bound for the degree in `var` of `gcd(a, b)`.
///
/// The other variables are set to integers where both leading coefficients in
/// `var` survive; the image of the gcd then divides the univariate gcd of the
/// images and keeps its degree.
fn degree_bound(a: &Poly, b: &Poly, var: usize) -> u32 {
    let n = a.nvars();
    let mut bound = a.degree_in(var).min(b.degree_in(var));
    let mut attempts = 0;
    let mut seed = 3i64;
    while attempts < 2 && seed < 200 {
        let point: Vec<(usize, Poly)> = (0..n)
            .filter(|&v| v != var)
            .enumerate()
            .map(|(k, v)| (v, Poly::from_int(n, seed + 7 * k as i64)))
            .collect();
        seed += 4;
        let (Ok(ia), Ok(ib)) = (a.substitute(&point), b.substitute(&point)) else {
            break;
        };
        if ia.degree_in(var) != a.degree_in(var) || ib.degree_in(var) != b.degree_in(var) {
            continue;
        }
        attempts += 1;
        bound = bound.min(univariate_gcd_degree(ia, ib, var));
        if bound == 0 {
            break;
        }
    }
    bound
}

fn univariate_gcd_degree(a: Poly, b: Poly, var: usize) -> u32 {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if g.is_zero() {
            return f.degree_in(var);
        }
        let r = pseudo_rem(&f, &g, var);
        f = g;
        g = normalize(&r);
    }
}
