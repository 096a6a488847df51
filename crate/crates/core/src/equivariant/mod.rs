//! Torus representations, Riemann-Roch on the zero section and Euler classes.

mod kclass;
mod p1;

pub use kclass::{KClass, Weight, RANK};
pub use p1::{
    check_square_root, chi_adjunction, chi_p1_line, chi_p1_pair, chi_sheaf, chi_x_pair, EqLineBundleP1,
    SplitGeometry,
};

use crate::error::{Error, Result};
use crate::ratfun::{Factored, RatFun};

/// Euler class as a product of linear forms `(w · λ)^mult` in `λ0..λ3`.
pub fn euler_factored(c: &KClass) -> Result<Factored> {
    let m = c.trivial_multiplicity();
    if m != 0 {
        return Err(Error::TrivialWeight { multiplicity: m });
    }
    let mut out = Factored::one(RANK);
    for (w, m) in c.terms() {
        out.mul_linear(&w.coefficients(), *m)?;
    }
    Ok(out)
}

pub fn euler_class(c: &KClass) -> Result<RatFun> {
    Ok(euler_factored(c)?.to_ratfun())
}
