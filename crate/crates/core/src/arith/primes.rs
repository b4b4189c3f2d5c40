use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::is_prime;
use crate::{Error, Result};

/// A finite set of rational primes, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet(Vec<BigInt>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    /// Builds a set from arbitrary integers, rejecting anything that is not
    /// a positive prime.
    pub fn new<I: IntoIterator<Item = BigInt>>(primes: I) -> Result<Self> {
        let mut v: Vec<BigInt> = primes.into_iter().collect();
        for p in &v {
            if *p < BigInt::from(2) || !is_prime(p) {
                return Err(Error::Domain("prime set contains a non-prime"));
            }
        }
        v.sort();
        v.dedup();
        Ok(PrimeSet(v))
    }

    pub fn from_u64(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| BigInt::from(p)))
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        self.0.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.iter().all(|p| other.contains(p))
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        v.dedup();
        PrimeSet(v)
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    /// All positive `S`-units `s` (products of primes in the set) with
    /// `s ≤ bound`, in increasing order.
    pub fn units_up_to(&self, bound: &BigInt) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::from(1)];
        for p in &self.0 {
            let mut extra = Vec::new();
            for s in &out {
                let mut m = s * p;
                while &m <= bound {
                    extra.push(m.clone());
                    m *= p;
                }
            }
            out.extend(extra);
        }
        out.sort();
        out
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units() {
        let s = PrimeSet::from_u64(&[3, 2, 2]).unwrap();
        assert_eq!(s.len(), 2);
        let u: Vec<i64> = s
            .units_up_to(&BigInt::from(20))
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(u, [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
        assert!(PrimeSet::from_u64(&[4]).is_err());
        assert_eq!(PrimeSet::empty().units_up_to(&BigInt::from(100)).len(), 1);
    }
}
