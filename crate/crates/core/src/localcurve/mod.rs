//! Torus-fixed Joyce-Song pairs on local curves and their invariants.
//!
//! Two fixed-point families are handled. For `d = 1` and any split
//! Calabi-Yau geometry the fixed pairs are `O -> O(a Z0 + b Zinf)` with
//! `a + b = n - 1`. For `O(-1) ⊕ O(-1) ⊕ O` and any `d` they are indexed by
//! weak compositions `(d0, ..., dk)` of `d` with `n = d (k + 1)`.

mod invariant;
mod obstruction;
mod verify;

use serde::Serialize;

use crate::error::{Error, Result};

pub use invariant::{
    closed_form_term, conjectured_value, js_invariant_closed_form, js_invariant_enumerated,
    Contribution, InvariantResult, Orientation,
};
pub use obstruction::{
    fixed_sheaf, fixed_sheaf_d1, full_obstruction_d1, full_obstruction_general,
    half_obstruction_d1, half_obstruction_d1_equivariant, half_obstruction_general,
    orientation_sign,
};
pub use verify::{
    paper_residue_term, residue_vanishing_check, verify_cases, verify_conjecture, CaseReport,
    ConjectureReport, ConjectureStatus, PoleReport, ResidueReport, VerifyMode,
};

/// Weak composition `(d0, ..., dk)`; fixed pair with `n = d (k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("composition needs at least one part".into()));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn d(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn zero_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 0).count()
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Fixed pair `O -> O(a Z0 + b Zinf)` for the degree one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct D1FixedPoint {
    pub a: i64,
    pub b: i64,
}

impl D1FixedPoint {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 0 || b < 0 {
            return Err(Error::Invalid(format!("fixed point ({a},{b}) needs a, b >= 0")));
        }
        Ok(D1FixedPoint { a, b })
    }

    pub fn n(&self) -> i64 {
        self.a + self.b + 1
    }
}

/// All weak compositions of `d` into `n / d` parts; empty unless `d | n` and `n >= d`.
pub fn enumerate_fixed_points(n: i64, d: i64) -> Result<Vec<Composition>> {
    if d <= 0 {
        return Err(Error::NonPositiveDegree(d));
    }
    if n < d || n % d != 0 {
        return Ok(Vec::new());
    }
    let parts = (n / d) as usize;
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    weak_compositions(d as u32, 0, &mut current, &mut out);
    Ok(out)
}

fn weak_compositions(left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Composition { parts: cur.clone() });
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v;
        weak_compositions(left - v, pos + 1, cur, out);
    }
}

/// Fixed points `(a, b)` with `a + b = n - 1`, in order of increasing `b`.
pub fn enumerate_d1_fixed_points(n: i64) -> Vec<D1FixedPoint> {
    if n < 1 {
        return Vec::new();
    }
    (0..n).map(|b| D1FixedPoint { a: n - 1 - b, b }).collect()
}

#[cfg(test)]
mod tests;
