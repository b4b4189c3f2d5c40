use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curve::{CurvePoint, WeierstrassModel};
use crate::{Error, Result};

/// The coordinate change `x = u²x′ + r`, `y = u³y′ + s·u²x′ + t`, taking a
/// model `E` to a model `E′` with `u⁴c4′ = c4`, `u⁶c6′ = c6`, `u¹²Δ′ = Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelMap {
    pub u: BigRational,
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
}

impl ModelMap {
    pub fn new(u: BigRational, r: BigRational, s: BigRational, t: BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::Domain("model map with u = 0"));
        }
        Ok(ModelMap { u, r, s, t })
    }

    pub fn identity() -> Self {
        ModelMap {
            u: BigRational::one(),
            r: BigRational::zero(),
            s: BigRational::zero(),
            t: BigRational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// The rescaling `x₁ = c²x`, `y₁ = c³y` (that is, `u = 1/c`), which sends
    /// `y² = x³ + Ax + B` to `y₁² = x₁³ + c⁴A·x₁ + c⁶B`.
    pub fn rescale(c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("rescale by zero"));
        }
        Ok(ModelMap {
            u: BigRational::new(BigInt::one(), c.clone()),
            ..Self::identity()
        })
    }

    /// Translation only (`u = 1`).
    pub fn translation(r: BigRational, s: BigRational, t: BigRational) -> Self {
        ModelMap {
            u: BigRational::one(),
            r,
            s,
            t,
        }
    }

    /// The map `E → E″` obtained by applying `self: E → E′` and then
    /// `next: E′ → E″`.
    pub fn then(&self, next: &ModelMap) -> ModelMap {
        let u2 = &self.u * &self.u;
        ModelMap {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.u * &next.t + &self.s * &u2 * &next.r,
        }
    }

    pub fn inverse(&self) -> ModelMap {
        let u_inv = BigRational::one() / &self.u;
        let u2 = &u_inv * &u_inv;
        ModelMap {
            r: -&self.r * &u2,
            s: -&self.s * &u_inv,
            t: (&self.r * &self.s - &self.t) * &u2 * &u_inv,
            u: u_inv,
        }
    }

    /// Coefficients of the transformed equation.
    pub fn transform_coeffs(&self, a: &[BigRational; 5]) -> [BigRational; 5] {
        let [a1, a2, a3, a4, a6] = a;
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let k = |n: i64| BigRational::from_integer(BigInt::from(n));
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let na1 = (a1 + k(2) * s) / u;
        let na2 = (a2 - s * a1 + k(3) * r - s * s) / &u2;
        let na3 = (a3 + r * a1 + k(2) * t) / &u3;
        let na4 = (a4 - s * a3 + k(2) * r * a2 - (t + r * s) * a1 + k(3) * r * r - k(2) * s * t) / &u4;
        let na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / &u6;
        [na1, na2, na3, na4, na6]
    }

    /// Image of a point of `E` on `E′`.
    pub fn map_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                let dx = x - &self.r;
                let ny = (y - &self.s * &dx - &self.t) / u3;
                CurvePoint::Affine { x: dx / u2, y: ny }
            }
        }
    }

    /// Preimage on `E` of a point of `E′`.
    pub fn pull_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                CurvePoint::Affine {
                    x: &u2 * x + &self.r,
                    y: u3 * y + &self.s * &u2 * x + &self.t,
                }
            }
        }
    }
}

/// Applies `map` to an integral model. The returned map is the point
/// transformer (`map.map_point`). Fails when the new coefficients are not
/// integers.
pub fn apply_model_map(model: &WeierstrassModel, map: &ModelMap) -> Result<(WeierstrassModel, ModelMap)> {
    let a = map.transform_coeffs(&model.rational_coeffs());
    let m = WeierstrassModel::from_rational(&a)?;
    Ok((m, map.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::curve::rational_invariants;
    use proptest::prelude::*;

    #[test]
    fn rescale_examples() {
        let e = WeierstrassModel::from_i64([0, 0, 0, 1, 1]).unwrap();
        let (e2, m) = apply_model_map(&e, &ModelMap::rescale(&int(2)).unwrap()).unwrap();
        assert_eq!(e2, WeierstrassModel::from_i64([0, 0, 0, 16, 64]).unwrap());
        assert_eq!(
            m.map_point(&CurvePoint::from_ints(0, 1)),
            CurvePoint::from_ints(0, 8)
        );
        assert_eq!(
            m.map_point(&CurvePoint::from_ints(3, 5)),
            CurvePoint::from_ints(12, 40)
        );

        let (same, _) = apply_model_map(&e, &ModelMap::identity()).unwrap();
        assert_eq!(same, e);

        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 1]).unwrap();
        let (e5, m) = apply_model_map(&e, &ModelMap::rescale(&int(5)).unwrap()).unwrap();
        assert_eq!(e5, WeierstrassModel::from_i64([0, 0, 0, 0, 15625]).unwrap());
        let p = m.map_point(&CurvePoint::from_ints(2, 3));
        assert_eq!(p, CurvePoint::from_ints(50, 375));
        assert!(e5.contains(&p));
        assert!(ModelMap::rescale(&int(0)).is_err());
        assert!(ModelMap::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn non_integral_result_is_rejected() {
        let e = WeierstrassModel::from_i64([0, 0, 0, 1, 1]).unwrap();
        let m = ModelMap::new(rat(2, 1), rat(0, 1), rat(0, 1), rat(0, 1)).unwrap();
        assert_eq!(apply_model_map(&e, &m), Err(Error::NonIntegralModel));
    }

    fn arb_map() -> impl Strategy<Value = ModelMap> {
        (
            (1i64..6, 1i64..4, any::<bool>()),
            (-9i64..9, 1i64..4),
            (-9i64..9, 1i64..4),
            (-9i64..9, 1i64..4),
        )
            .prop_map(|((un, ud, neg), (r, rd), (s, sd), (t, td))| {
                let u = if neg { rat(-un, ud) } else { rat(un, ud) };
                ModelMap::new(u, rat(r, rd), rat(s, sd), rat(t, td)).unwrap()
            })
    }

    fn arb_coeffs() -> impl Strategy<Value = [BigRational; 5]> {
        proptest::array::uniform5(-20i64..20).prop_map(|a| a.map(|x| rat(x, 1)))
    }

    proptest! {
        #[test]
        fn composition_and_inverse(a in arb_coeffs(), m1 in arb_map(), m2 in arb_map()) {
            let two_steps = m2.transform_coeffs(&m1.transform_coeffs(&a));
            prop_assert_eq!(&two_steps, &m1.then(&m2).transform_coeffs(&a));
            prop_assert_eq!(m1.inverse().transform_coeffs(&m1.transform_coeffs(&a)), a.clone());
            prop_assert!(m1.then(&m1.inverse()).is_identity());
        }

        #[test]
        fn invariants_transform_covariantly(a in arb_coeffs(), m in arb_map()) {
            let before = rational_invariants(&a);
            let after = rational_invariants(&m.transform_coeffs(&a));
            let u2 = &m.u * &m.u;
            let u4 = &u2 * &u2;
            let u6 = &u4 * &u2;
            prop_assert_eq!(&u4 * &after.c4, before.c4);
            prop_assert_eq!(&u6 * &after.c6, before.c6);
            prop_assert_eq!(&u6 * &u6 * &after.disc, before.disc);
        }
    }
}
