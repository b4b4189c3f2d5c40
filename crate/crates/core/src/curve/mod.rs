//! Weierstrass models over `Q` and their rational points.

mod divpoly;
mod group;
mod map;
mod search;

pub use divpoly::{division_polynomial, DivisionPolynomial};
pub use group::{add_points, double_point, negate_point, scalar_multiply, scalar_multiply_big};
pub use map::{apply_model_map, ModelMap};
pub use search::{search_s_integral_points, search_s_integral_points_in, SearchChunk, SearchPlan};

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `b`/`c` invariants, discriminant and `j`-invariant of a Weierstrass
/// equation, over any ring of coefficients that embeds in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants<T> {
    pub b2: T,
    pub b4: T,
    pub b6: T,
    pub b8: T,
    pub c4: T,
    pub c6: T,
    pub disc: T,
}

trait Scalar:
    Clone + core::ops::Add<Output = Self> + core::ops::Sub<Output = Self> + core::ops::Mul<Output = Self>
{
    fn small(n: i32) -> Self;
}

impl Scalar for BigInt {
    fn small(n: i32) -> Self {
        BigInt::from(n)
    }
}

impl Scalar for BigRational {
    fn small(n: i32) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

fn invariants_generic<T: Scalar>(a: &[T; 5]) -> Invariants<T> {
    let k = T::small;
    let [a1, a2, a3, a4, a6] = a.clone();
    let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
    let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
    let b8 = a1.clone() * a1.clone() * a6.clone() + k(4) * a2.clone() * a6.clone()
        - a1.clone() * a3.clone() * a4.clone()
        + a2.clone() * a3.clone() * a3.clone()
        - a4.clone() * a4.clone();
    let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
    let c6 = k(0) - b2.clone() * b2.clone() * b2.clone() + k(36) * b2.clone() * b4.clone() - k(216) * b6.clone();
    let disc = k(0) - b2.clone() * b2.clone() * b8.clone() - k(8) * b4.clone() * b4.clone() * b4.clone()
        - k(27) * b6.clone() * b6.clone()
        + k(9) * b2.clone() * b4.clone() * b6.clone();
    Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        disc,
    }
}

/// Invariants of an integral equation `[a1, a2, a3, a4, a6]`, together with
/// `j = c4³/Δ`. Fails on singular equations.
pub fn compute_invariants(a: &[BigInt; 5]) -> Result<(Invariants<BigInt>, BigRational)> {
    let inv = invariants_generic(a);
    if inv.disc.is_zero() {
        return Err(Error::SingularCurve);
    }
    let j = BigRational::new(&inv.c4 * &inv.c4 * &inv.c4, inv.disc.clone());
    Ok((inv, j))
}

/// Invariants of an equation with rational coefficients (no singularity check).
pub fn rational_invariants(a: &[BigRational; 5]) -> Invariants<BigRational> {
    invariants_generic(a)
}

/// A long Weierstrass equation
/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with integer coefficients and
/// nonzero discriminant, with its invariants cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: [BigInt; 5],
    inv: Invariants<BigInt>,
    j: BigRational,
}

impl WeierstrassModel {
    pub fn new(a: [BigInt; 5]) -> Result<Self> {
        let (inv, j) = compute_invariants(&a)?;
        Ok(WeierstrassModel { a, inv, j })
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from))
    }

    /// `y² = x³ + A·x + B`.
    pub fn short(a: BigInt, b: BigInt) -> Result<Self> {
        Self::new([BigInt::zero(), BigInt::zero(), BigInt::zero(), a, b])
    }

    /// Accepts rational coefficients if they happen to be integers.
    pub fn from_rational(a: &[BigRational; 5]) -> Result<Self> {
        if a.iter().any(|c| !c.is_integer()) {
            return Err(Error::NonIntegralModel);
        }
        Self::new(a.clone().map(|c| c.to_integer()))
    }

    pub fn coeffs(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn rational_coeffs(&self) -> [BigRational; 5] {
        self.a.clone().map(BigRational::from_integer)
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    pub fn invariants(&self) -> &Invariants<BigInt> {
        &self.inv
    }
    pub fn b2(&self) -> &BigInt {
        &self.inv.b2
    }
    pub fn b4(&self) -> &BigInt {
        &self.inv.b4
    }
    pub fn b6(&self) -> &BigInt {
        &self.inv.b6
    }
    pub fn b8(&self) -> &BigInt {
        &self.inv.b8
    }
    pub fn c4(&self) -> &BigInt {
        &self.inv.c4
    }
    pub fn c6(&self) -> &BigInt {
        &self.inv.c6
    }
    pub fn discriminant(&self) -> &BigInt {
        &self.inv.disc
    }
    pub fn j_invariant(&self) -> &BigRational {
        &self.j
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    /// `y² + a1xy + a3y − (x³ + a2x² + a4x + a6)` at an affine point.
    pub fn equation_residual(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let [a1, a2, a3, a4, a6] = self.rational_coeffs();
        let lhs = y * y + &a1 * x * y + &a3 * y;
        let rhs = x * x * x + &a2 * x * x + &a4 * x + a6;
        lhs - rhs
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.equation_residual(x, y).is_zero(),
        }
    }

    /// The point at `(x, y)`, checked against the equation.
    pub fn point(&self, x: BigRational, y: BigRational) -> Result<CurvePoint> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// `4x³ + b2x² + 2b4x + b6` at `x`, i.e. `(2y + a1x + a3)²` on the curve.
    pub fn two_torsion_cubic(&self, x: &BigRational) -> BigRational {
        let k = |n: &BigInt| BigRational::from_integer(n.clone());
        let four = BigRational::from_integer(BigInt::from(4));
        let two = BigRational::from_integer(BigInt::from(2));
        four * x * x * x + k(self.b2()) * x * x + two * k(self.b4()) * x + k(self.b6())
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("y^2")?;
        let term = |f: &mut fmt::Formatter<'_>, c: &BigInt, mon: &str| -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" };
            let mag = c.magnitude();
            if mon.is_empty() {
                write!(f, " {sign} {mag}")
            } else if mag.is_one() {
                write!(f, " {sign} {mon}")
            } else {
                write!(f, " {sign} {mag}{mon}")
            }
        };
        term(f, self.a1(), "xy")?;
        term(f, self.a3(), "y")?;
        f.write_str(" = x^3")?;
        term(f, self.a2(), "x^2")?;
        term(f, self.a4(), "x")?;
        term(f, self.a6(), "")
    }
}

/// A rational point: the point at infinity or an affine pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        CurvePoint::Affine {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}
