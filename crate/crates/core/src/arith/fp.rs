//! Dense univariate polynomials over the prime field `F_p`, with just enough
//! machinery for Tate's algorithm: gcds, root counts and quadratic residues.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::mod_inverse;

/// Below this size roots are found by exhaustive evaluation.
const BRUTE_FORCE_LIMIT: u64 = 64;

/// Coefficients in `[0, p)`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl FpPoly {
    /// Builds `Σ coeffs[i]·xⁱ` reduced modulo `p`.
    pub fn new(coeffs: &[BigInt], p: &BigInt) -> Self {
        let mut f = FpPoly {
            p: p.clone(),
            coeffs: coeffs.iter().map(|c| c.mod_floor(p)).collect(),
        };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.p);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        FpPoly::new(&c, &self.p)
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = mod_inverse(lead, &self.p).expect("nonzero mod p");
                let c: Vec<BigInt> = self.coeffs.iter().map(|c| c * &inv).collect();
                FpPoly::new(&c, &self.p)
            }
        }
    }

    fn rem(&self, m: &FpPoly) -> FpPoly {
        let dm = m.degree().expect("division by zero polynomial");
        let inv = mod_inverse(&m.coeffs[dm], &self.p).expect("nonzero mod p");
        let mut r = self.coeffs.clone();
        while r.len() > dm && !r.is_empty() {
            let top = r.len() - 1;
            let q = (&r[top] * &inv).mod_floor(&self.p);
            if !q.is_zero() {
                for i in 0..=dm {
                    let k = top - dm + i;
                    r[k] = (&r[k] - &q * &m.coeffs[i]).mod_floor(&self.p);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        FpPoly::new(&r, &self.p)
    }

    fn mul_mod(&self, other: &FpPoly, m: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(&[], &self.p);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        FpPoly::new(&c, &self.p).rem(m)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct roots in `F_p`.
    pub fn count_roots(&self) -> usize {
        match self.degree() {
            None => return self.p.to_usize().unwrap_or(usize::MAX),
            Some(0) => return 0,
            _ => {}
        }
        if let Some(small) = self.p.to_u64().filter(|&p| p <= BRUTE_FORCE_LIMIT) {
            return (0..small)
                .filter(|&x| self.eval(&BigInt::from(x)).is_zero())
                .count();
        }
        // deg gcd(f, x^p − x)
        let x = FpPoly::new(&[BigInt::zero(), BigInt::one()], &self.p);
        let mut xp = x.pow_mod(&self.p, self);
        let minus_x = FpPoly::new(&[BigInt::zero(), -BigInt::one()], &self.p);
        xp = FpPoly::new(&add(&xp.coeffs, &minus_x.coeffs), &self.p);
        self.gcd(&xp).degree().unwrap_or(0)
    }

    fn pow_mod(&self, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::new(&[BigInt::one()], &self.p).rem(m);
        let mut base = self.rem(m);
        let mut e = e.clone();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                result = result.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e /= &two;
        }
        result
    }

    /// All roots in `F_p` by exhaustive search; only for small `p`.
    pub fn roots_brute_force(&self) -> Vec<BigInt> {
        let p = self.p.to_u64().expect("small prime");
        (0..p)
            .map(BigInt::from)
            .filter(|x| self.eval(x).is_zero())
            .collect()
    }
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Whether `a·x² + b·x + c` has a root in `F_p`.
pub fn quadratic_has_root(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> bool {
    let (a, b, c) = (a.mod_floor(p), b.mod_floor(p), c.mod_floor(p));
    if a.is_zero() {
        return !b.is_zero() || c.is_zero();
    }
    if *p == BigInt::from(2) {
        return c.is_zero() || (&a + &b + &c).mod_floor(p).is_zero();
    }
    legendre(&(&b * &b - BigInt::from(4) * &a * &c), p) >= 0
}
