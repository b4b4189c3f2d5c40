//! Exact arithmetic on elliptic curves over the rationals, built around the
//! notion of a *stably integral* point: a rational point that stays integral
//! on the semistable model obtained after a finite base extension.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs; IO, parallel scans and report formats live
//! in the `ecs` companion crate.
//!
//! Module map:
//!
//! * [`arith`]: integers, rationals, `Q(ζ₃)`, sparse multivariate polynomials,
//!   factorization, polynomials over `F_p`, fraction-free linear algebra.
//! * [`curve`]: Weierstrass models, coordinate changes, the group law, point
//!   search and division polynomials.
//! * [`reduction`]: global minimal models and Tate's algorithm.
//! * [`stable`]: the stably minimal model and the stably `S`-integral classifier.
//! * [`hesse`]: the Hesse pencil `λ(X³+Y³+Z³) − 3μXYZ = 0`.
//! * [`twist`]: quadratic twists `ty² = f(x)` and the Kummer map.
//! * [`torsion`]: torsion subgroups and integrality thresholds for torsion.
//! * [`correlation`]: fitting hypersurfaces through fibered tuples of points.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod correlation;
pub mod curve;
mod error;
pub mod hesse;
pub mod reduction;
pub mod stable;
pub mod torsion;
pub mod twist;

pub use error::{Error, Result};

pub use num_bigint::{BigInt, BigUint, Sign};
pub use num_rational::BigRational;
