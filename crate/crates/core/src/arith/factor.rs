use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

const TRIAL_BOUND: u32 = 1_000_000;

/// `sign · ∏ pᵢ^eᵢ` with the primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        n
    }
}

/// Factors a nonzero integer: trial division up to 10⁶, then Brent's
/// variant of Pollard rho, with Miller–Rabin primality checks.
pub fn factor_integer(n: &BigInt) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero"));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();

    let trial = |d: u32, m: &mut BigUint, primes: &mut Vec<BigUint>| {
        while (&*m % d).is_zero() {
            *m /= d;
            primes.push(BigUint::from(d));
        }
    };
    trial(2, &mut m, &mut primes);
    trial(3, &mut m, &mut primes);
    let mut d: u32 = 5;
    let mut step = 2;
    while d <= TRIAL_BOUND {
        if BigUint::from(d) * d > m {
            break;
        }
        trial(d, &mut m, &mut primes);
        d += step;
        step = 6 - step;
    }
    if !m.is_one() {
        split_large(m, &mut primes);
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PrimeFactorization { sign, factors })
}

fn split_large(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime_u(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = perfect_power_root(&n) {
        // n = r^k; factor r and repeat its primes k times.
        let mut k = 0u32;
        let mut m = n.clone();
        while (&m % &r).is_zero() {
            m /= &r;
            k += 1;
        }
        let mut sub = Vec::new();
        split_large(r, &mut sub);
        for _ in 0..k {
            out.extend(sub.iter().cloned());
        }
        return;
    }
    let mut c = 1u32;
    loop {
        if let Some(d) = brent_rho(&n, c) {
            split_large(d.clone(), out);
            split_large(n / d, out);
            return;
        }
        c += 1;
    }
}

fn perfect_power_root(n: &BigUint) -> Option<BigUint> {
    let bits = n.bits();
    for k in 2..=bits.min(64) as u32 {
        let r = n.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some(r);
        }
    }
    None
}

fn brent_rho(n: &BigUint, c: u32) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g;
    let mut x;
    let mut ys;
    const M: u64 = 128;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..M.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += M;
            if k >= r || !g.is_one() {
                break;
            }
        }
        r *= 2;
        if !g.is_one() || r > (1 << 40) {
            break;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || &g == n {
        None
    } else {
        Some(g)
    }
}

const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller–Rabin with the first twenty primes as witnesses (deterministic
/// below 3.3·10²⁴, and far beyond any realistic failure rate above).
pub fn is_prime(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Plus => is_prime_u(n.magnitude()),
        _ => false,
    }
}

fn is_prime_u(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &w in &WITNESSES {
            if small == w as u64 {
                return true;
            }
            if small % w as u64 == 0 {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let a = BigUint::from(w);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
