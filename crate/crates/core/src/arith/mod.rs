//! Exact arithmetic: integers and rationals (backed by `num-bigint` /
//! `num-rational`), the Eisenstein field `Q(ζ₃)`, sparse multivariate
//! polynomials, factorization, polynomials over `F_p` and fraction-free
//! linear algebra.

mod eisenstein;
mod factor;
pub mod fp;
mod integer;
pub mod linalg;
mod poly;
mod primes;

pub use eisenstein::Eisenstein;
pub use factor::{factor_integer, is_prime, PrimeFactorization};
pub use integer::{
    int, int_valuation, is_perfect_square, is_s_integer, mod_floor, mod_inverse, p_valuation,
    rat, rational_mod_p, Valuation,
};
pub(crate) use integer::{isqrt_exact_i128, require_prime};
pub use poly::{Coefficient, Monomial, MultiPoly};
pub use primes::PrimeSet;
