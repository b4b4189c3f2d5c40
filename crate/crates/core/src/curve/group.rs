use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::curve::{CurvePoint, WeierstrassModel};

pub fn negate_point(model: &WeierstrassModel, p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let [a1, _, a3, _, _] = model.rational_coeffs();
            CurvePoint::Affine {
                x: x.clone(),
                y: -y - a1 * x - a3,
            }
        }
    }
}

fn finish(
    model: &WeierstrassModel,
    lambda: BigRational,
    nu: BigRational,
    x1: &BigRational,
    x2: &BigRational,
) -> CurvePoint {
    let [a1, a2, a3, _, _] = model.rational_coeffs();
    let x3 = &lambda * &lambda + &a1 * &lambda - a2 - x1 - x2;
    let y3 = -(lambda + a1) * &x3 - nu - a3;
    CurvePoint::Affine { x: x3, y: y3 }
}

/// Chord-and-tangent addition on a long Weierstrass model.
pub fn add_points(model: &WeierstrassModel, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    if x1 == x2 {
        let [a1, _, a3, _, _] = model.rational_coeffs();
        if (y1 + y2 + a1 * x1 + a3).is_zero() {
            return CurvePoint::Infinity;
        }
        return double_point(model, p);
    }
    let dx = x2 - x1;
    let lambda = (y2 - y1) / &dx;
    let nu = (y1 * x2 - y2 * x1) / dx;
    finish(model, lambda, nu, x1, x2)
}

pub fn double_point(model: &WeierstrassModel, p: &CurvePoint) -> CurvePoint {
    let (x, y) = match p {
        CurvePoint::Infinity => return CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => (x, y),
    };
    let [a1, a2, a3, a4, a6] = model.rational_coeffs();
    let denom = BigRational::from_integer(2.into()) * y + &a1 * x + &a3;
    if denom.is_zero() {
        return CurvePoint::Infinity;
    }
    let three = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    let lambda = (three * x * x + &two * &a2 * x + &a4 - &a1 * y) / &denom;
    let nu = (-(x * x * x) + a4 * x + two * a6 - a3 * y) / denom;
    finish(model, lambda, nu, x, x)
}

/// `n·P` by double-and-add; negative `n` uses `−P`.
pub fn scalar_multiply(model: &WeierstrassModel, n: i64, p: &CurvePoint) -> CurvePoint {
    let base = if n < 0 { negate_point(model, p) } else { p.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = CurvePoint::Infinity;
    let mut pow = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_points(model, &acc, &pow);
        }
        k >>= 1;
        if k > 0 {
            pow = double_point(model, &pow);
        }
    }
    acc
}

/// `n·P` for a big multiplier.
pub fn scalar_multiply_big(model: &WeierstrassModel, n: &num_bigint::BigInt, p: &CurvePoint) -> CurvePoint {
    let base = if n.is_negative() { negate_point(model, p) } else { p.clone() };
    let k = n.magnitude();
    let mut acc = CurvePoint::Infinity;
    for i in (0..k.bits()).rev() {
        acc = double_point(model, &acc);
        if k.bit(i) {
            acc = add_points(model, &acc, &base);
        }
    }
    acc
}
