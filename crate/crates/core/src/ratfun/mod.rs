//! Exact multivariate rational functions over the rationals.

mod factored;
mod function;
mod gcd;
mod poly;
pub(crate) mod text;

pub use factored::{sum_factored, Factored, LinearForm};
pub use function::RatFun;
pub use gcd::poly_gcd;
pub use poly::{Monomial, Poly};
pub use text::{parse_poly, parse_ratfun};

pub type Rational = num_rational::BigRational;

/// Default number of equivariant parameters `l0..l3`.
pub const NVARS: usize = 4;
