use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::PrimeSet;
use crate::{Error, Result};

/// Shorthand for building a `BigInt` from a machine integer.
pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Shorthand for the rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The `p`-adic valuation of a rational number. Zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(q) = v_p(numerator) − v_p(denominator)`.
pub fn p_valuation(q: &BigRational, p: &BigInt) -> Valuation {
    match int_valuation(q.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = int_valuation(q.denom(), p).unwrap_or(0);
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

// Quadratic residues modulo 64, 63, 65 and 11, packed as bit masks.
const SQUARES_MOD_64: u64 = squares_mask(64);
const SQUARES_MOD_63: u64 = squares_mask(63);
const SQUARES_MOD_65: u128 = squares_mask_128(65);
const SQUARES_MOD_11: u64 = squares_mask(11);

const fn squares_mask(m: u64) -> u64 {
    let mut mask = 0u64;
    let mut i = 0;
    while i < m {
        mask |= 1 << ((i * i) % m);
        i += 1;
    }
    mask
}

const fn squares_mask_128(m: u128) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < m {
        mask |= 1 << ((i * i) % m);
        i += 1;
    }
    mask
}

pub(crate) fn passes_square_filter(residue_of: impl Fn(u32) -> u32) -> bool {
    (SQUARES_MOD_64 >> residue_of(64)) & 1 == 1
        && (SQUARES_MOD_63 >> residue_of(63)) & 1 == 1
        && (SQUARES_MOD_65 >> residue_of(65)) & 1 == 1
        && (SQUARES_MOD_11 >> residue_of(11)) & 1 == 1
}

/// Returns the nonnegative square root of `n` when `n` is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let residue = |m: u32| (n % m).to_u32().unwrap_or(0);
    if !passes_square_filter(residue) {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// `i128` counterpart of [`is_perfect_square`] used by the point search.
pub(crate) fn isqrt_exact_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let u = n as u128;
    if !passes_square_filter(|m| (u % m as u128) as u32) {
        return None;
    }
    let r = u.isqrt();
    if r * r == u {
        Some(r as i128)
    } else {
        None
    }
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduction of a `p`-integral rational modulo `p`; `None` when `p` divides
/// the denominator.
pub fn rational_mod_p(q: &BigRational, p: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(q.denom(), p)?;
    Some((q.numer() * inv).mod_floor(p))
}

/// True when the denominator of `q` is supported on `primes`.
pub fn is_s_integer(q: &BigRational, primes: &PrimeSet) -> bool {
    let mut d = q.denom().clone();
    for p in primes.iter() {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    d.is_one()
}

pub(crate) fn require_prime(p: &BigInt) -> Result<()> {
    if p.is_positive() && crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain("expected a prime"))
    }
}
