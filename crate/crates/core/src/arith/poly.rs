use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Eisenstein;

/// Coefficient ring for [`MultiPoly`].
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Coefficient for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Coefficient for Eisenstein {
    fn from_i64(n: i64) -> Self {
        Eisenstein::from_int(n)
    }
}

/// Exponent vector. Ordered graded-lexicographically: first by total degree,
/// then lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every monomial in `nvars` variables of total degree at most `max_degree`,
    /// in increasing graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut current = vec![0u32; nvars];
            of_degree(nvars, 0, d, &mut current, &mut out);
        }
        out.sort();
        out
    }
}

fn of_degree(nvars: usize, idx: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if idx == nvars - 1 {
        cur[idx] = remaining;
        out.push(Monomial(cur.clone()));
        cur[idx] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[idx] = e;
        of_degree(nvars, idx + 1, remaining - e, cur, out);
    }
    cur[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in named variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_with(vars.iter().map(|v| v.to_string()).collect())
    }

    pub fn zero_with(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn constant_with(vars: Vec<String>, c: C) -> Self {
        let n = vars.len();
        let mut p = Self::zero_with(vars);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The polynomial consisting of variable `idx` alone.
    pub fn var(vars: &[&str], idx: usize) -> Self {
        Self::var_with(vars.iter().map(|v| v.to_string()).collect(), idx)
    }

    pub fn var_with(vars: Vec<String>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero_with(vars);
        p.add_term(Monomial(e), C::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(vars: &[&str], terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn from_terms_with<I: IntoIterator<Item = (Monomial, C)>>(vars: Vec<String>, terms: I) -> Self {
        let mut p = Self::zero_with(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero_with(self.vars.clone());
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant_with(self.vars.clone(), C::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len(), "evaluation point dimension");
        // Power tables per variable keep this linear in the number of terms.
        let mut powers: Vec<Vec<C>> = Vec::with_capacity(point.len());
        for (i, x) in point.iter().enumerate() {
            let max = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = Vec::with_capacity(max + 1);
            row.push(C::one());
            for k in 1..=max {
                let next = row[k - 1].clone() * x.clone();
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * powers[i][e as usize].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Self {
        let mut p = Self::zero_with(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            p.add_term(m2, c.clone() * C::from_i64(e as i64));
        }
        p
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable list, which becomes the variable list of the result.
    pub fn compose(&self, images: &[MultiPoly<C>]) -> MultiPoly<C> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let mut powers: Vec<Vec<MultiPoly<C>>> = Vec::new();
        for (i, img) in images.iter().enumerate() {
            img.check_vars(&images[0]);
            let max = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = vec![MultiPoly::constant_with(target.clone(), C::one())];
            for k in 1..=max {
                let next = &row[k - 1] * img;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = MultiPoly::zero_with(target.clone());
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant_with(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Fixes the variables with `Some` value, keeping the variable list.
    /// The result no longer depends on the fixed variables.
    pub fn specialize(&self, values: &[Option<C>]) -> Self {
        assert_eq!(values.len(), self.vars.len());
        let mut p = Self::zero_with(self.vars.clone());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..m.0[i] {
                        coeff = coeff * v.clone();
                    }
                    m2.0[i] = 0;
                }
            }
            p.add_term(m2, coeff);
        }
        p
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut p = MultiPoly::zero_with(self.vars.clone());
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }
}

impl<'a, C: Coefficient> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(o);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a, C: Coefficient> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(o);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<'a, C: Coefficient> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.check_vars(o);
        let mut p = MultiPoly::zero_with(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<C: Coefficient> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(alloc::format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "({c})*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    type P = MultiPoly<BigRational>;
    const V: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn graded_lex_order() {
        let ms = Monomial::all_up_to(2, 2);
        let v: Vec<Vec<u32>> = ms.into_iter().map(|m| m.0).collect();
        assert_eq!(
            v,
            [
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        assert_eq!(Monomial::all_up_to(4, 6).len(), 210);
    }

    #[test]
    fn arithmetic_and_calculus() {
        let x = P::var(&V, 0);
        let y = P::var(&V, 1);
        let p = &(&x * &x) - &y; // x² − y
        assert_eq!(p.partial(0), &x + &x);
        assert_eq!(p.partial(1), P::constant(&V, rat(-1, 1)));
        assert_eq!(p.evaluate(&[rat(3, 1), rat(2, 1), rat(0, 1)]), rat(7, 1));
        assert!((&p - &p).is_zero());
        assert_eq!(p.total_degree(), Some(2));
        // (x² − y)∘(y, x, z) = y² − x
        let q = p.compose(&[y.clone(), x.clone(), P::var(&V, 2)]);
        assert_eq!(q, &(&y * &y) - &x);
        let s = p.specialize(&[Some(rat(2, 1)), None, None]);
        assert_eq!(s, &P::constant(&V, rat(4, 1)) - &y);
        assert_eq!(alloc::format!("{p}"), "x^2 + (-1)*y");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -9i64..9), 0..6).prop_map(|ts| {
            P::from_terms(&V, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], rat(k, 1))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn product_evaluates_to_product(p in arb_poly(), q in arb_poly(),
                                        pt in proptest::collection::vec((-20i64..20, 1i64..5), 3)) {
            let pt: Vec<BigRational> = pt.into_iter().map(|(n, d)| rat(n, d)).collect();
            prop_assert_eq!((&p * &q).evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
            prop_assert_eq!((&p + &q).evaluate(&pt), p.evaluate(&pt) + q.evaluate(&pt));
        }
    }
}
