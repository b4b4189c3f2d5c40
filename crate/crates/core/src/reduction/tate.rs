use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::fp::{quadratic_has_root, FpPoly};
use crate::arith::{int_valuation, mod_inverse, require_prime};
use crate::curve::WeierstrassModel;
use crate::reduction::{Kodaira, LocalReduction, ReductionClass};
use crate::{Error, Result};

type Coeffs = [BigInt; 5];

/// `(u, r, s, t) = (1, r, s, t)` applied to integer coefficients.
fn rst(a: &Coeffs, r: &BigInt, s: &BigInt, t: &BigInt) -> Coeffs {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

struct Local<'a> {
    p: &'a BigInt,
}

impl Local<'_> {
    fn val(&self, n: &BigInt) -> u32 {
        int_valuation(n, self.p).unwrap_or(u32::MAX)
    }

    fn divides(&self, n: &BigInt) -> bool {
        n.mod_floor(self.p).is_zero()
    }

    fn red(&self, n: &BigInt) -> BigInt {
        n.mod_floor(self.p)
    }

    fn inv(&self, n: &BigInt) -> BigInt {
        mod_inverse(n, self.p).expect("unit modulo p")
    }

    fn pow(&self, k: usize) -> BigInt {
        num_traits::pow(self.p.clone(), k)
    }

    fn is(&self, q: u32) -> bool {
        *self.p == BigInt::from(q)
    }

    fn has_root(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
        quadratic_has_root(a, b, c, self.p)
    }
}

fn b8_of(a: &Coeffs) -> BigInt {
    let [a1, a2, a3, a4, a6] = a;
    a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
}

/// The unique singular point of the reduction of `model` modulo `p`, with
/// coordinates in `[0, p)`; `None` when the reduction is smooth.
pub fn singular_point_mod_p(model: &WeierstrassModel, p: &BigInt) -> Option<(BigInt, BigInt)> {
    let l = Local { p };
    if !l.divides(model.discriminant()) {
        return None;
    }
    let [a1, a2, a3, a4, a6] = model.coeffs();
    if l.is(2) || l.is(3) {
        let q = p.to_u32().expect("small prime");
        for x in 0..q {
            for y in 0..q {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                let f = &y * &y + a1 * &x * &y + a3 * &y - &x * &x * &x - a2 * &x * &x - a4 * &x - a6;
                let fx = a1 * &y - 3 * &x * &x - 2 * a2 * &x - a4;
                let fy = 2 * &y + a1 * &x + a3;
                if l.divides(&f) && l.divides(&fx) && l.divides(&fy) {
                    return Some((x, y));
                }
            }
        }
        return None;
    }
    let cubic = FpPoly::new(
        &[model.b6().clone(), 2 * model.b4(), model.b2().clone(), BigInt::from(4)],
        p,
    );
    let g = cubic.gcd(&cubic.derivative());
    let x0 = match g.degree()? {
        1 => l.red(&-g.coeff(0)),
        2 => l.red(&(-g.coeff(1) * l.inv(&BigInt::from(2)))),
        _ => return None,
    };
    let y0 = l.red(&(-(a1 * &x0 + a3) * l.inv(&BigInt::from(2))));
    Some((x0, y0))
}

/// Tate's algorithm at `p` on a model that is minimal at `p`.
pub fn tate_local(model: &WeierstrassModel, p: &BigInt) -> Result<LocalReduction> {
    require_prime(p)?;
    let l = Local { p };
    let vd = l.val(model.discriminant());
    let v_c4 = int_valuation(model.c4(), p);
    let singular_point = singular_point_mod_p(model, p);
    let done = |kodaira: Kodaira, class: ReductionClass, tamagawa: u32, f: u32| LocalReduction {
        p: p.clone(),
        kodaira,
        class,
        v_delta: vd,
        v_c4,
        tamagawa,
        conductor_exponent: f,
        singular_point: singular_point.clone(),
    };
    if vd == 0 {
        return Ok(done(Kodaira::I0, ReductionClass::Good, 1, 0));
    }
    let (x0, y0) = singular_point.clone().ok_or(Error::Domain("no singular point at a bad prime"))?;
    let zero = BigInt::zero();
    let one = BigInt::from(1);
    let mut a = rst(model.coeffs(), &x0, &zero, &y0);

    let b2 = &a[0] * &a[0] + 4 * &a[1];
    if !l.divides(&b2) {
        let split = l.has_root(&one, &a[0], &-&a[1]);
        let (class, tamagawa) = if split {
            (ReductionClass::SplitMultiplicative, vd)
        } else if vd.is_multiple_of(2) {
            (ReductionClass::NonSplitMultiplicative, 2)
        } else {
            (ReductionClass::NonSplitMultiplicative, 1)
        };
        return Ok(done(Kodaira::In(vd), class, tamagawa, 1));
    }

    let additive = |kodaira: Kodaira, tamagawa: u32| {
        Ok(done(kodaira, ReductionClass::Additive, tamagawa, vd + 1 - kodaira.components()))
    };
    if l.val(&a[4]) < 2 {
        return additive(Kodaira::II, 1);
    }
    if l.val(&b8_of(&a)) < 3 {
        return additive(Kodaira::III, 2);
    }
    let b6 = &a[2] * &a[2] + 4 * &a[4];
    if l.val(&b6) < 3 {
        let a3t = &a[2] / p;
        let a6t = &a[4] / l.pow(2);
        let c = if l.has_root(&one, &a3t, &-a6t) { 3 } else { 1 };
        return additive(Kodaira::IV, c);
    }

    let half = if l.is(2) { zero.clone() } else { l.inv(&BigInt::from(2)) };
    let (s, t) = if l.is(2) {
        (l.red(&a[1]), p * l.red(&(&a[4] / l.pow(2))))
    } else if l.is(3) {
        (a[0].clone(), a[2].clone())
    } else {
        // p | a3 already; t ≡ −a3/2 must hold modulo p², so t stays unreduced.
        (l.red(&(-&a[0] * &half)), -&a[2] * &half)
    };
    a = rst(&a, &zero, &s, &t);

    let b = l.red(&(&a[1] / p));
    let c = l.red(&(&a[3] / l.pow(2)));
    let d = l.red(&(&a[4] / l.pow(3)));
    let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d + 4 * &c * &c * &c;
    let x = 3 * &c - &b * &b;

    if !l.divides(&w) {
        let cubic = FpPoly::new(&[d, c, b, one.clone()], p);
        return additive(Kodaira::I0Star, 1 + cubic.count_roots() as u32);
    }

    if !l.divides(&x) {
        let r = if l.is(2) {
            c.clone()
        } else if l.is(3) {
            l.red(&(&b * &c))
        } else {
            l.red(&((&b * &c - 9 * &d) * l.inv(&(2 * &x))))
        };
        a = rst(&a, &(p * r), &zero, &zero);
        let mut m = 1u32;
        let mut mx = l.pow(2);
        let mut my = l.pow(2);
        loop {
            let xa3 = &a[2] / &my;
            let xa6 = &a[4] / (&mx * &my);
            if !l.divides(&(&xa3 * &xa3 + 4 * &xa6)) {
                let c = if l.has_root(&one, &xa3, &-&xa6) { 4 } else { 2 };
                return additive(Kodaira::InStar(m), c);
            }
            let t = if l.is(2) { &my * &xa6 } else { &my * l.red(&(-&xa3 * &half)) };
            a = rst(&a, &zero, &zero, &t);
            my *= p;
            m += 1;
            let xa2 = &a[1] / p;
            let xa4 = &a[3] / (p * &mx);
            let xa6 = &a[4] / (&mx * &my);
            if !l.divides(&(&xa4 * &xa4 - 4 * &xa2 * &xa6)) {
                let c = if l.has_root(&xa2, &xa4, &xa6) { 4 } else { 2 };
                return additive(Kodaira::InStar(m), c);
            }
            let r = if l.is(2) {
                &mx * l.red(&(&xa6 * &xa2))
            } else {
                &mx * l.red(&(-&xa4 * l.inv(&(2 * &xa2))))
            };
            a = rst(&a, &r, &zero, &zero);
            mx *= p;
            m += 1;
        }
    }

    let r = if l.is(2) {
        b.clone()
    } else if l.is(3) {
        l.red(&-&d)
    } else {
        l.red(&(-&b * l.inv(&BigInt::from(3))))
    };
    a = rst(&a, &(p * r), &zero, &zero);
    let x3t = l.red(&(&a[2] / l.pow(2)));
    let x6t = l.red(&(&a[4] / l.pow(4)));
    if !l.divides(&(&x3t * &x3t + 4 * &x6t)) {
        let c = if l.has_root(&one, &x3t, &-&x6t) { 3 } else { 1 };
        return additive(Kodaira::IVStar, c);
    }
    let t = if l.is(2) {
        l.pow(2) * &x6t
    } else {
        l.pow(2) * l.red(&(-&x3t * &half))
    };
    a = rst(&a, &zero, &zero, &t);
    if l.val(&a[3]) < 4 {
        return additive(Kodaira::IIIStar, 2);
    }
    if l.val(&a[4]) < 6 {
        return additive(Kodaira::IIStar, 1);
    }
    Err(Error::NotMinimal { p: p.clone() })
}
