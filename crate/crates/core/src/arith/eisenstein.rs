use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// An element `a + b·ω` of `Q(ζ₃)`, where `ω² + ω + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Eisenstein {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The primitive cube root of unity `ω`.
    pub fn omega() -> Self {
        Eisenstein {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// The three cube roots of unity `1, ω, ω²`.
    pub fn cube_roots_of_unity() -> [Eisenstein; 3] {
        let w = Self::omega();
        let w2 = &w * &w;
        [Self::one(), w, w2]
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a + b·ω²`.
    pub fn conj(&self) -> Self {
        Eisenstein {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// `N(a + bω) = a² − ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in Q(ζ₃)"));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Eisenstein {
            a: c.a / &n,
            b: c.b / n,
        })
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl<'a> Add<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    // (a + bω)(c + dω) = ac + (ad + bc)ω + bd·ω², with ω² = −1 − ω.
    fn mul(self, o: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &o.b;
        Eisenstein {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a - bd,
        }
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Eisenstein {
            type Output = Eisenstein;
            fn $m(self, o: Eisenstein) -> Eisenstein {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        -&self
    }
}

impl Div for &Eisenstein {
    type Output = Eisenstein;
    /// Panics on division by zero; use [`Eisenstein::inverse`] to handle it.
    fn div(self, o: &Eisenstein) -> Eisenstein {
        self * &o.inverse().expect("division by zero in Q(ζ₃)")
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*w", self.b)
        } else {
            write!(f, "{} + {}*w", self.a, self.b)
        }
    }
}
