//! The quadratic-twist family `E_t : t·y² = f(x)` of a cubic
//! `f = x³ + Ax + B`, and the Kummer map to `K_t : t²z² = f(x₁)f(x₂)`.
//!
//! Each `E_t` is handled through the integral model
//! `y² = x³ + At²x + Bt³`, reached by `(x, y) ↦ (tx, t²y)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factor_integer, is_s_integer, PrimeSet};
use crate::curve::{search_s_integral_points, CurvePoint, WeierstrassModel};
use crate::{Error, Result};

/// `f(x) = x³ + Ax + B` with coprime `A`, `B` and nonzero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortCubic {
    pub a: BigInt,
    pub b: BigInt,
}

impl ShortCubic {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if !a.gcd(&b).is_one() {
            return Err(Error::Domain("A and B must be coprime"));
        }
        let disc: BigInt = 4 * &a * &a * &a + 27 * &b * &b;
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(ShortCubic { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let q = |n: &BigInt| BigRational::from_integer(n.clone());
        x * x * x + q(&self.a) * x + q(&self.b)
    }
}

pub fn is_squarefree(t: &BigInt) -> Result<bool> {
    Ok(factor_integer(t)?.factors.iter().all(|(_, e)| *e == 1))
}

/// A finite slice of the twist family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistFamily {
    pub f: ShortCubic,
    pub ts: Vec<BigInt>,
}

impl TwistFamily {
    /// Rejects zero or non-squarefree parameters.
    pub fn new(f: ShortCubic, ts: Vec<BigInt>) -> Result<Self> {
        for t in &ts {
            if t.is_zero() || !is_squarefree(t)? {
                return Err(Error::Domain("twist parameters must be squarefree and nonzero"));
            }
        }
        Ok(TwistFamily { f, ts })
    }

    /// The squarefree integers in `[lo, hi]` other than zero.
    pub fn squarefree_range(f: ShortCubic, lo: i64, hi: i64) -> Result<Self> {
        let mut ts = Vec::new();
        for t in lo..=hi {
            let t = BigInt::from(t);
            if !t.is_zero() && is_squarefree(&t)? {
                ts.push(t);
            }
        }
        Ok(TwistFamily { f, ts })
    }
}

/// `E_t` with its integral model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCurve {
    pub f: ShortCubic,
    pub t: BigInt,
    pub model: WeierstrassModel,
}

impl TwistedCurve {
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => BigRational::from_integer(self.t.clone()) * y * y == self.f.eval(x),
        }
    }

    /// `(x, y) ↦ (tx, t²y)`.
    pub fn to_model(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let t = BigRational::from_integer(self.t.clone());
                CurvePoint::affine(&t * x, &t * &t * y)
            }
        }
    }

    pub fn from_model(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let t = BigRational::from_integer(self.t.clone());
                CurvePoint::affine(x / &t, y / (&t * &t))
            }
        }
    }
}

pub fn twist_curve(f: &ShortCubic, t: &BigInt) -> Result<TwistedCurve> {
    if t.is_zero() {
        return Err(Error::Domain("twist by zero"));
    }
    if !is_squarefree(t)? {
        return Err(Error::Domain("twist parameter must be squarefree"));
    }
    let model = WeierstrassModel::short(&f.a * t * t, &f.b * t * t * t)?;
    Ok(TwistedCurve {
        f: f.clone(),
        t: t.clone(),
        model,
    })
}

/// A point `(x₁, x₂, z)` of `K₁ : z² = f(x₁)f(x₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KummerPoint {
    pub x1: BigRational,
    pub x2: BigRational,
    pub z: BigRational,
}

impl KummerPoint {
    pub fn satisfies(&self, f: &ShortCubic) -> bool {
        &self.z * &self.z == f.eval(&self.x1) * f.eval(&self.x2)
    }

    pub fn is_s_integral(&self, s: &PrimeSet) -> bool {
        [&self.x1, &self.x2, &self.z].iter().all(|c| is_s_integer(c, s))
    }
}

/// `(P₁, P₂) ↦ (x₁, x₂, t·y₁·y₂)`: the pair on `K_t` is `(x₁, x₂, y₁y₂)` and
/// `(x₁, x₂, z) ↦ (x₁, x₂, tz)` identifies `K_t` with `K₁`.
pub fn kummer_map(f: &ShortCubic, t: &BigInt, p1: &CurvePoint, p2: &CurvePoint) -> Result<KummerPoint> {
    let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) = (p1, p2) else {
        return Err(Error::Domain("the Kummer map is defined on affine points"));
    };
    let tq = BigRational::from_integer(t.clone());
    for (x, y) in [(x1, y1), (x2, y2)] {
        if &tq * y * y != f.eval(x) {
            return Err(Error::NotOnCurve);
        }
    }
    Ok(KummerPoint {
        x1: x1.clone(),
        x2: x2.clone(),
        z: tq * y1 * y2,
    })
}

/// The `S`-integral points of one twist and the Kummer images of all ordered
/// pairs of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistScanEntry {
    pub t: BigInt,
    pub model: WeierstrassModel,
    /// Affine points of `t·y² = f(x)`, sorted.
    pub points: Vec<CurvePoint>,
    pub kummer: Vec<KummerPoint>,
}

pub fn twist_scan_one(f: &ShortCubic, t: &BigInt, s: &PrimeSet, bound: u64) -> Result<TwistScanEntry> {
    let curve = twist_curve(f, t)?;
    let mut points: Vec<CurvePoint> = search_s_integral_points(&curve.model, s, bound)
        .iter()
        .map(|p| curve.from_model(p))
        .filter(|p| p.x().is_some_and(|x| is_s_integer(x, s)) && p.y().is_some_and(|y| is_s_integer(y, s)))
        .collect();
    points.sort();
    let mut kummer = Vec::with_capacity(points.len() * points.len());
    for p1 in &points {
        for p2 in &points {
            kummer.push(kummer_map(f, t, p1, p2)?);
        }
    }
    Ok(TwistScanEntry {
        t: t.clone(),
        model: curve.model,
        points,
        kummer,
    })
}

pub fn twist_scan(family: &TwistFamily, s: &PrimeSet, bound: u64) -> Result<Vec<TwistScanEntry>> {
    family
        .ts
        .iter()
        .map(|t| twist_scan_one(&family.f, t, s, bound))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::curve::negate_point;
    use proptest::prelude::*;

    #[test]
    fn twists() {
        let f = ShortCubic::from_i64(0, 1).unwrap();
        assert_eq!(twist_curve(&f, &int(1)).unwrap().model, WeierstrassModel::from_i64([0, 0, 0, 0, 1]).unwrap());
        assert_eq!(twist_curve(&f, &int(2)).unwrap().model, WeierstrassModel::from_i64([0, 0, 0, 0, 8]).unwrap());
        let g = ShortCubic::from_i64(-1, 0).unwrap();
        assert_eq!(twist_curve(&g, &int(-1)).unwrap().model, WeierstrassModel::from_i64([0, 0, 0, -1, 0]).unwrap());
        assert!(twist_curve(&f, &int(0)).is_err());
        assert!(twist_curve(&f, &int(12)).is_err());
        assert!(ShortCubic::from_i64(2, 4).is_err());
        assert!(ShortCubic::from_i64(-3, 2).is_err());
        let c = twist_curve(&f, &int(2)).unwrap();
        let p = CurvePoint::from_ints(1, 1);
        assert!(c.contains(&p));
        assert!(c.model.contains(&c.to_model(&p)));
        assert_eq!(c.from_model(&c.to_model(&p)), p);
    }

    #[test]
    fn kummer_examples() {
        let f = ShortCubic::from_i64(0, 1).unwrap();
        let p = CurvePoint::from_ints(1, 1);
        let k = kummer_map(&f, &int(2), &p, &p).unwrap();
        assert_eq!(k, KummerPoint { x1: rat(1, 1), x2: rat(1, 1), z: rat(2, 1) });
        assert!(k.satisfies(&f));
        let k = kummer_map(&f, &int(2), &p, &CurvePoint::from_ints(1, -1)).unwrap();
        assert_eq!(k.z, rat(-2, 1));
        let q = CurvePoint::from_ints(2, 3);
        let k = kummer_map(&f, &int(1), &q, &q).unwrap();
        assert_eq!(k.z, rat(9, 1));
        assert!(kummer_map(&f, &int(2), &CurvePoint::Infinity, &p).is_err());
        assert_eq!(kummer_map(&f, &int(3), &p, &p), Err(Error::NotOnCurve));
    }

    #[test]
    fn scan() {
        let f = ShortCubic::from_i64(0, 1).unwrap();
        let s = PrimeSet::from_u64(&[2, 3]).unwrap();
        let fam = TwistFamily::squarefree_range(f.clone(), 1, 50).unwrap();
        assert!(fam.ts.iter().all(|t| is_squarefree(t).unwrap()));
        assert_eq!(fam.ts.len(), 31);
        let out = twist_scan(&fam, &s, 300).unwrap();
        assert_eq!(out.len(), fam.ts.len());
        let mut total = 0;
        for entry in &out {
            let curve = twist_curve(&f, &entry.t).unwrap();
            for p in &entry.points {
                assert!(curve.contains(p));
            }
            assert_eq!(entry.kummer.len(), entry.points.len().pow(2));
            for k in &entry.kummer {
                assert!(k.satisfies(&f));
                assert!(k.is_s_integral(&s));
            }
            total += entry.points.len();
        }
        assert!(total > 0);
        let empty = TwistFamily::new(f, Vec::new()).unwrap();
        assert!(twist_scan(&empty, &s, 100).unwrap().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn kummer_symmetries(a in -6i64..6, b in -6i64..6, t in -10i64..10) {
            let Ok(f) = ShortCubic::from_i64(a, b) else { return Ok(()) };
            let t = int(t);
            let Ok(curve) = twist_curve(&f, &t) else { return Ok(()) };
            let pts: Vec<CurvePoint> = search_s_integral_points(&curve.model, &PrimeSet::empty(), 200)
                .iter()
                .map(|p| curve.from_model(p))
                .collect();
            for p1 in pts.iter().take(4) {
                for p2 in pts.iter().take(4) {
                    let k = kummer_map(&f, &t, p1, p2).unwrap();
                    prop_assert!(k.satisfies(&f));
                    let swapped = kummer_map(&f, &t, p2, p1).unwrap();
                    prop_assert_eq!((&k.x1, &k.x2, &k.z), (&swapped.x2, &swapped.x1, &swapped.z));
                    let n1 = curve.from_model(&negate_point(&curve.model, &curve.to_model(p1)));
                    let n2 = curve.from_model(&negate_point(&curve.model, &curve.to_model(p2)));
                    let neg = kummer_map(&f, &t, &n1, &n2).unwrap();
                    prop_assert_eq!(&neg, &k);
                }
            }
        }
    }
}
