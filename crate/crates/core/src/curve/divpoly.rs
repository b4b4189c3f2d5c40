use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::MultiPoly;
use crate::curve::WeierstrassModel;

type Dense = Vec<BigInt>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn cube(a: &Dense) -> Dense {
    mul(&mul(a, a), a)
}

/// A division polynomial in reduced form. For odd `n` the stored polynomial
/// is `ψ_n` itself; for even `n` it is `ψ_n / ψ_2` with
/// `ψ_2 = 2y + a1x + a3`, so that `ψ_n² = F·reduced²` where
/// `F = 4x³ + b2x² + 2b4x + b6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPolynomial {
    pub n: u32,
    reduced: Dense,
    two_torsion: Dense,
}

impl DivisionPolynomial {
    /// Coefficients of the reduced polynomial in `x`, constant term first.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.reduced
    }

    pub fn carries_psi2_factor(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// The reduced polynomial as a polynomial in `x`.
    pub fn reduced(&self) -> MultiPoly<BigRational> {
        to_multipoly(&self.reduced)
    }

    /// `ψ_n²` as a polynomial in `x` alone.
    pub fn psi_squared(&self) -> MultiPoly<BigRational> {
        let sq = mul(&self.reduced, &self.reduced);
        if self.carries_psi2_factor() {
            to_multipoly(&mul(&sq, &self.two_torsion))
        } else {
            to_multipoly(&sq)
        }
    }

    pub fn eval_reduced(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.reduced.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

fn to_multipoly(p: &[BigInt]) -> MultiPoly<BigRational> {
    let terms = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (vec![i as u32], BigRational::from_integer(c.clone())));
    MultiPoly::from_terms(&["x"], terms)
}

struct Recurrence {
    f_squared: Dense,
    memo: BTreeMap<u32, Dense>,
}

impl Recurrence {
    fn get(&mut self, n: u32) -> Dense {
        if let Some(p) = self.memo.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let p = if n % 2 == 1 {
            let a = mul(&self.get(m + 2), &cube(&self.get(m)));
            let b = mul(&self.get(m - 1), &cube(&self.get(m + 1)));
            if m.is_multiple_of(2) {
                sub(&mul(&self.f_squared, &a), &b)
            } else {
                sub(&a, &mul(&self.f_squared, &b))
            }
        } else {
            let gm1 = self.get(m - 1);
            let gp1 = self.get(m + 1);
            let left = mul(&self.get(m + 2), &mul(&gm1, &gm1));
            let right = mul(&self.get(m - 2), &mul(&gp1, &gp1));
            mul(&self.get(m), &sub(&left, &right))
        };
        self.memo.insert(n, p.clone());
        p
    }
}

/// The `n`-th division polynomial of `model` (`n ≥ 1`; `n = 0` gives zero).
pub fn division_polynomial(model: &WeierstrassModel, n: u32) -> DivisionPolynomial {
    let (b2, b4, b6, b8) = (model.b2(), model.b4(), model.b6(), model.b8());
    let k = |v: i64| BigInt::from(v);
    let f = trim(vec![b6.clone(), k(2) * b4, b2.clone(), k(4)]);
    let g3 = trim(vec![b8.clone(), k(3) * b6, k(3) * b4, b2.clone(), k(3)]);
    let g4 = trim(vec![
        b4 * b8 - b6 * b6,
        b2 * b8 - b4 * b6,
        k(10) * b8,
        k(10) * b6,
        k(5) * b4,
        b2.clone(),
        k(2),
    ]);
    let mut memo = BTreeMap::new();
    memo.insert(0, Vec::new());
    memo.insert(1, vec![k(1)]);
    memo.insert(2, vec![k(1)]);
    memo.insert(3, g3);
    memo.insert(4, g4);
    let mut rec = Recurrence {
        f_squared: mul(&f, &f),
        memo,
    };
    DivisionPolynomial {
        n,
        reduced: rec.get(n),
        two_torsion: f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::curve::{scalar_multiply, CurvePoint};

    #[test]
    fn small_cases() {
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 4]).unwrap();
        let one = division_polynomial(&e, 1);
        assert_eq!(one.coefficients(), &[int(1)]);
        let two = division_polynomial(&e, 2);
        let expected = MultiPoly::from_terms(
            &["x"],
            [(vec![3], rat(4, 1)), (vec![0], rat(16, 1))],
        );
        assert_eq!(two.psi_squared(), expected);
        let three = division_polynomial(&e, 3);
        assert_eq!(three.coefficients(), &[int(0), int(48), int(0), int(0), int(3)]);
        assert!(three.eval_reduced(&rat(0, 1)).is_zero());
        assert_eq!(
            scalar_multiply(&e, 3, &CurvePoint::from_ints(0, 2)),
            CurvePoint::Infinity
        );
    }

    #[test]
    fn roots_match_torsion() {
        // (0,0) on y² + y = x³ − x² has order 5; x = 0 must be a root of ψ5 only.
        let e = WeierstrassModel::from_i64([0, -1, 1, 0, 0]).unwrap();
        let zero = rat(0, 1);
        for n in 1..=12u32 {
            let dp = division_polynomial(&e, n);
            let vanishes = dp.eval_reduced(&zero).is_zero();
            assert_eq!(vanishes, n % 5 == 0, "n = {n}");
        }
        // y² = x³ + 1: (2,3) has order 6, (0,1) order 3, (−1,0) order 2.
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 1]).unwrap();
        for n in 1..=12u32 {
            let dp = division_polynomial(&e, n);
            let psi2 = dp.psi_squared();
            assert_eq!(psi2.evaluate(&[rat(2, 1)]).is_zero(), n % 6 == 0);
            assert_eq!(psi2.evaluate(&[rat(0, 1)]).is_zero(), n % 3 == 0);
            assert_eq!(psi2.evaluate(&[rat(-1, 1)]).is_zero(), n % 2 == 0);
        }
    }

    #[test]
    fn degrees() {
        let e = WeierstrassModel::from_i64([1, 2, 3, 4, 5]).unwrap();
        for n in 1..=10u32 {
            let dp = division_polynomial(&e, n);
            let expected = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 };
            assert_eq!(dp.coefficients().len() as u32 - 1, expected);
            assert_eq!(*dp.coefficients().last().unwrap(), if n % 2 == 1 { int(n as i64) } else { int(n as i64 / 2) });
        }
    }
}
