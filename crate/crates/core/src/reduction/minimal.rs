use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factor_integer, int_valuation};
use crate::curve::{apply_model_map, ModelMap, WeierstrassModel};
use crate::Result;

fn v(n: &BigInt, p: &BigInt) -> u32 {
    int_valuation(n, p).unwrap_or(u32::MAX)
}

/// Kraus's local conditions at `p ∈ {2, 3}` for `(c4, c6)` to come from an
/// integral Weierstrass equation; vacuous at other primes.
pub fn kraus_holds_at(c4: &BigInt, c6: &BigInt, p: &BigInt) -> bool {
    if *p == BigInt::from(3) {
        return v(c6, p) != 2;
    }
    if *p == BigInt::from(2) {
        if c6.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
            return true;
        }
        let r = c6.mod_floor(&BigInt::from(32));
        return v(c4, p) >= 4 && (r.is_zero() || r == BigInt::from(8));
    }
    true
}

fn scaled(n: &BigInt, p: &BigInt, e: u32) -> BigInt {
    n / num_traits::pow(p.clone(), e as usize)
}

/// Largest `d` such that the model can be scaled down by `u = p^d`.
fn reduction_exponent(c4: &BigInt, c6: &BigInt, disc: &BigInt, p: &BigInt) -> u32 {
    let mut d = (v(disc, p) / 12).min(v(c4, p) / 4).min(v(c6, p) / 6);
    let small = *p == BigInt::from(2) || *p == BigInt::from(3);
    while d > 0 && small && !kraus_holds_at(&scaled(c4, p, 4 * d), &scaled(c6, p, 6 * d), p) {
        d -= 1;
    }
    d
}

pub fn is_minimal_at(model: &WeierstrassModel, p: &BigInt) -> bool {
    reduction_exponent(model.c4(), model.c6(), model.discriminant(), p) == 0
}

/// The integral model with invariants `(c4, c6)` and `a1, a3 ∈ {0, 1}`,
/// `a2 ∈ {−1, 0, 1}`. The invariants must satisfy Kraus's conditions.
fn reduced_model(c4: &BigInt, c6: &BigInt) -> [BigInt; 5] {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let b4: BigInt = (&b2 * &b2 - c4) / 24;
    let b6: BigInt = (-(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - c6) / 216;
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2 = (&b2 - &a1) / 4;
    let a4 = (&b4 - &a1 * &a3) / 2;
    let a6 = (&b6 - &a3) / 4;
    [a1, a2, a3, a4, a6]
}

/// The coordinate change with scale `u` taking `from` to `to`, when the two
/// share `c4/u⁴` and `c6/u⁶`.
fn connecting_map(from: &[BigInt; 5], to: &[BigInt; 5], u: &BigInt) -> ModelMap {
    let q = |n: &BigInt| BigRational::from_integer(n.clone());
    let uq = q(u);
    let [a1, a2, a3, _, _] = from.clone().map(|c| q(&c));
    let [b1, b2, b3, _, _] = to.clone().map(|c| q(&c));
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let s = (&uq * &b1 - &a1) / &two;
    let r = (&uq * &uq * &b2 - &a2 + &s * &a1 + &s * &s) / three;
    let t = (&uq * &uq * &uq * &b3 - &a3 - &r * &a1) / two;
    ModelMap::new(uq, r, s, t).expect("u is nonzero")
}

/// A global minimal model (Laska–Kraus–Connell) in reduced form, and the
/// map from `model` to it.
pub fn minimalize(model: &WeierstrassModel) -> Result<(WeierstrassModel, ModelMap)> {
    let (c4, c6, disc) = (model.c4(), model.c6(), model.discriminant());
    let mut u = BigInt::one();
    let fac = factor_integer(disc)?;
    let candidates: Vec<BigInt> = fac
        .factors
        .iter()
        .filter(|(_, e)| *e >= 12)
        .map(|(p, _)| p.clone())
        .collect();
    for p in &candidates {
        let d = reduction_exponent(c4, c6, disc, p);
        u *= num_traits::pow(p.clone(), d as usize);
    }
    let u2 = &u * &u;
    let u4 = &u2 * &u2;
    let c4m = c4 / &u4;
    let c6m = c6 / (&u4 * &u2);
    let target = reduced_model(&c4m, &c6m);
    let map = connecting_map(model.coeffs(), &target, &u);
    let (min, map) = apply_model_map(model, &map)?;
    debug_assert_eq!(min.coeffs(), &target);
    Ok((min, map))
}
