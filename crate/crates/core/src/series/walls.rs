use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Class, ClassLattice};
use crate::error::{Error, Result};
use crate::ratfun::Rational;

/// Minimal holomorphic Euler characteristic `n(beta)` of curves in class `beta`.
pub type NMinTable = BTreeMap<Class, i64>;

fn nmin(table: &NMinTable, c: &Class) -> Result<i64> {
    table
        .get(c)
        .copied()
        .ok_or_else(|| Error::MissingNMin(c.to_string()))
}

/// True iff `n / deg(beta) <= n(beta') / deg(beta')` for every `0 < beta' < beta`.
pub fn no_wall_predicate(beta: &Class, n: i64, table: &NMinTable, lattice: &ClassLattice) -> Result<bool> {
    lattice.check(beta)?;
    let deg = lattice.degree(beta) as i128;
    let mut ok = true;
    for sub in lattice.proper_subclasses(beta) {
        let m = nmin(table, &sub)? as i128;
        if (n as i128) * (lattice.degree(&sub) as i128) > m * deg {
            ok = false;
        }
    }
    Ok(ok)
}

/// Candidate walls `n'' / deg(beta'')` above `n / deg(beta)` with `0 < beta'' < beta`
/// and `n(beta'') <= n'' <= n - n(beta - beta'')`, sorted and deduplicated.
pub fn wall_candidates(
    beta: &Class,
    n: i64,
    table: &NMinTable,
    lattice: &ClassLattice,
) -> Result<Vec<Rational>> {
    lattice.check(beta)?;
    let floor = Rational::new(BigInt::from(n), BigInt::from(lattice.degree(beta)));
    let mut out = Vec::new();
    for sub in lattice.proper_subclasses(beta) {
        let rest = beta.checked_sub(&sub).expect("proper subclass");
        let lo = nmin(table, &sub)?;
        let hi = n - nmin(table, &rest)?;
        let deg = BigInt::from(lattice.degree(&sub));
        for n2 in lo..=hi {
            let w = Rational::new(BigInt::from(n2), deg.clone());
            if w > floor {
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
