//! Rational torsion, and the integrality thresholds for torsion points.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factor_integer, is_s_integer, PrimeSet};
use crate::curve::{add_points, CurvePoint, ModelMap, WeierstrassModel};
use crate::reduction::global_reduction;
use crate::stable::{classify_on_minimal, PrimeEvidence};
use crate::{Error, Result};

/// No rational torsion point has order above 12.
pub const ORDER_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionStructure {
    /// `Z/n`.
    Cyclic(u32),
    /// `Z/m × Z/n` with `m | n`.
    Product(u32, u32),
}

impl TorsionStructure {
    pub fn order(self) -> u32 {
        match self {
            TorsionStructure::Cyclic(n) => n,
            TorsionStructure::Product(m, n) => m * n,
        }
    }
}

impl core::fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TorsionStructure::Cyclic(1) => f.write_str("trivial"),
            TorsionStructure::Cyclic(n) => write!(f, "Z/{n}"),
            TorsionStructure::Product(m, n) => write!(f, "Z/{m} x Z/{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPoint {
    pub point: CurvePoint,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGroup {
    /// The model the points live on (the global minimal model).
    pub model: WeierstrassModel,
    pub map_to_minimal: ModelMap,
    pub structure: TorsionStructure,
    /// Every torsion point including `O`, sorted by point.
    pub points: Vec<TorsionPoint>,
    pub order_cap: u32,
}

impl TorsionGroup {
    pub fn order(&self) -> u32 {
        self.points.len() as u32
    }
}

/// The order of `p` if it is at most `cap`.
pub fn point_order(model: &WeierstrassModel, p: &CurvePoint, cap: u32) -> Option<u32> {
    let mut acc = p.clone();
    for n in 1..=cap {
        if acc.is_infinity() {
            return Some(n);
        }
        acc = add_points(model, &acc, p);
    }
    None
}

/// Integer roots of the monic cubic `x³ + a·x + b`.
fn integer_roots_of_depressed_cubic(a: &BigInt, b: &BigInt) -> Vec<BigInt> {
    let g = |x: &BigInt| x * x * x + a * x + b;
    let bound = BigInt::one() + a.abs().max(b.abs());
    // Monotone pieces split at ±m with m = ⌊√(−a/3)⌋.
    let m = if a.is_negative() { Roots::sqrt(&(-a / BigInt::from(3))) } else { BigInt::from(-1) };
    let pieces = if m.is_negative() {
        alloc::vec![(-&bound, bound.clone(), true)]
    } else {
        alloc::vec![
            (-&bound, -&m - 1, true),
            (-&m, m.clone(), false),
            (&m + 1, bound.clone(), true),
        ]
    };
    let mut roots = Vec::new();
    for (lo, hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        let (mut l, mut h) = (lo, hi);
        // Invariant: a root in the piece lies in [l, h].
        while l < h {
            let mid = (&l + &h).div_floor(&BigInt::from(2));
            let v = g(&mid);
            let go_right = if increasing { v.is_negative() } else { v.is_positive() };
            if go_right {
                l = mid + 1;
            } else {
                h = mid;
            }
        }
        if g(&l).is_zero() {
            roots.push(l);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Positive integers `y` with `y² | n`, from a factorization of `n`.
fn square_divisor_roots(fac: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut out = alloc::vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=(e / 2) {
                next.push(m.clone());
                m *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The rational torsion subgroup, by Lutz–Nagell on the integral short model
/// `Y² = X³ − 27c4·X − 54c6` of the minimal model, where every torsion point
/// has integral coordinates with `Y = 0` or `Y² | 4A³ + 27B²`. Orders are
/// certified on the minimal model by repeated addition.
pub fn torsion_subgroup(model: &WeierstrassModel) -> Result<TorsionGroup> {
    let global = global_reduction(model)?;
    let min = global.minimal_model.clone();
    let a = BigInt::from(-27) * min.c4();
    let b = BigInt::from(-54) * min.c6();
    // 4A³ + 27B² = −2⁸·3¹²·Δ.
    let mut fac = factor_integer(min.discriminant())?.factors;
    for (q, e) in [(2u32, 8u32), (3, 12)] {
        let q = BigInt::from(q);
        match fac.iter_mut().find(|(p, _)| *p == q) {
            Some(entry) => entry.1 += e,
            None => fac.push((q, e)),
        }
    }
    fac.sort();
    let q = |n: &BigInt| BigRational::from_integer(n.clone());
    let back = |x_short: &BigInt, y_short: &BigInt| -> Option<CurvePoint> {
        let x = (q(x_short) - q(&(3 * min.b2()))) / q(&BigInt::from(36));
        let y = (q(y_short) / q(&BigInt::from(108)) - q(min.a1()) * &x - q(min.a3())) / q(&BigInt::from(2));
        let p = CurvePoint::affine(x, y);
        min.contains(&p).then_some(p)
    };
    let mut points = alloc::vec![TorsionPoint {
        point: CurvePoint::Infinity,
        order: 1,
    }];
    let mut consider = |p: CurvePoint| {
        if let Some(order) = point_order(&min, &p, ORDER_CAP) {
            points.push(TorsionPoint { point: p, order });
        }
    };
    for x in integer_roots_of_depressed_cubic(&a, &b) {
        if let Some(p) = back(&x, &BigInt::zero()) {
            consider(p);
        }
    }
    for y in square_divisor_roots(&fac) {
        for x in integer_roots_of_depressed_cubic(&a, &(&b - &y * &y)) {
            for ys in [y.clone(), -&y] {
                if let Some(p) = back(&x, &ys) {
                    consider(p);
                }
            }
        }
    }
    points.sort_by(|u, v| u.point.cmp(&v.point));
    points.dedup();
    let n = points.len() as u32;
    let two_torsion = points.iter().filter(|p| p.order == 2).count();
    let structure = if two_torsion == 3 {
        TorsionStructure::Product(2, n / 2)
    } else {
        TorsionStructure::Cyclic(n)
    };
    Ok(TorsionGroup {
        model: min,
        map_to_minimal: global.map_to_minimal,
        structure,
        points,
        order_cap: ORDER_CAP,
    })
}

/// `|Sp_{2g}(F_q)| = q^{g²} · Π_{i=1..g} (q^{2i} − 1)`.
pub fn symplectic_order_formula(g: u32, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let mut n = num_traits::pow(q.clone(), (g * g) as usize);
    for i in 1..=g {
        n *= num_traits::pow(q.clone(), 2 * i as usize) - 1;
    }
    n
}

/// `|SL₂(F_q)|` by enumerating all 2×2 matrices.
pub fn sl2_order_brute_force(q: u64) -> u64 {
    let mut count = 0;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + q * q - b * c) % q == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// The constant `C = |Sp_g(Z/5Z)|`, read as the symplectic group of
/// `2g × 2g` matrices. For `g = 1` it is counted directly.
pub fn symplectic_group_order(g: u32) -> Result<BigInt> {
    match g {
        0 => Err(Error::Domain("g must be at least 1")),
        1 => Ok(BigInt::from(sl2_order_brute_force(5))),
        _ => Ok(symplectic_order_formula(g, 5)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdVerdict {
    pub n: u64,
    pub d: u64,
    pub g: u32,
    pub c: BigInt,
    /// `(p, k)` when `n = p^k`.
    pub prime_power: Option<(u64, u32)>,
    pub satisfied: bool,
}

/// Whether `n` is not a prime power, or `n = p^k` with `p^k − p^{k−1} > C·d`.
pub fn stable_integrality_threshold(n: u64, d: u64, g: u32) -> Result<ThresholdVerdict> {
    if n < 2 || d < 1 {
        return Err(Error::Domain("need n ≥ 2 and d ≥ 1"));
    }
    let c = symplectic_group_order(g)?;
    let fac = factor_integer(&BigInt::from(n))?;
    let prime_power = match fac.factors.as_slice() {
        [(p, k)] => Some((p.to_u64().expect("fits"), *k)),
        _ => None,
    };
    let satisfied = match prime_power {
        None => true,
        Some((p, k)) => {
            let totient = BigInt::from(p).pow(k) - BigInt::from(p).pow(k - 1);
            totient > &c * d
        }
    };
    Ok(ThresholdVerdict {
        n,
        d,
        g,
        c,
        prime_power,
        satisfied,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryBound {
    pub c: BigInt,
    /// `⌈C·d/2⌉`.
    pub exponent: u64,
    /// `(1 + p^{⌈Cd/2⌉})^{2g}`.
    pub weil_factor: BigInt,
    /// `(2Cd)^{2g}`.
    pub kernel_factor: BigInt,
    pub total: BigInt,
}

/// `N = (1 + p^{⌈Cd/2⌉})^{2g} · (2Cd)^{2g}`. The second factor bounds the
/// kernel of reduction: a torsion order `p^k` there satisfies
/// `p^k − p^{k−1} ≤ v(p) ≤ Cd`, hence `p^k ≤ Cd·p/(p − 1) ≤ 2Cd`.
pub fn corollary_bound(d: u64, g: u32, p: u64) -> Result<CorollaryBound> {
    if d < 1 || !crate::arith::is_prime(&BigInt::from(p)) {
        return Err(Error::Domain("need d ≥ 1 and p prime"));
    }
    let c = symplectic_group_order(g)?;
    let cd = &c * d;
    let exponent = cd.div_ceil(&BigInt::from(2)).to_u64().ok_or(Error::Overflow("exponent"))?;
    let base = BigInt::one() + BigInt::from(p).pow(exponent as u32);
    let weil_factor = num_traits::pow(base, 2 * g as usize);
    let kernel_factor = num_traits::pow(2 * &cd, 2 * g as usize);
    let total = &weil_factor * &kernel_factor;
    Ok(CorollaryBound {
        c,
        exponent,
        weil_factor,
        kernel_factor,
        total,
    })
}

/// Audit record of one torsion point of order at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAudit {
    pub point: CurvePoint,
    pub order: u32,
    /// Integral coordinates on the minimal model.
    pub integral: bool,
    /// Stably `S`-integral, ignoring primes that divide the order.
    pub stable: bool,
    pub evidence: Vec<PrimeEvidence>,
    /// Odd order but not stable in the above sense.
    pub anomaly: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveAudit {
    pub model: WeierstrassModel,
    pub structure: TorsionStructure,
    pub points: Vec<PointAudit>,
}

impl CurveAudit {
    pub fn anomalies(&self) -> usize {
        self.points.iter().filter(|p| p.anomaly).count()
    }
}

pub fn audit_curve(model: &WeierstrassModel, s: &PrimeSet) -> Result<CurveAudit> {
    let tors = torsion_subgroup(model)?;
    let global = global_reduction(&tors.model)?;
    let mut points = Vec::new();
    for tp in tors.points.iter().filter(|tp| tp.order >= 3) {
        let none = PrimeSet::empty();
        let integral = tp.point.x().is_some_and(|x| is_s_integer(x, &none))
            && tp.point.y().is_some_and(|y| is_s_integer(y, &none));
        let (_, evidence) = classify_on_minimal(&global, &tp.point, s)?;
        let order = BigInt::from(tp.order);
        let stable = evidence
            .iter()
            .filter(|e| !order.is_multiple_of(&e.p))
            .all(|e| !e.status.is_obstruction());
        points.push(PointAudit {
            point: tp.point.clone(),
            order: tp.order,
            integral,
            stable,
            evidence,
            anomaly: tp.order % 2 == 1 && !stable,
        });
    }
    Ok(CurveAudit {
        model: tors.model,
        structure: tors.structure,
        points,
    })
}

/// A curve on which `(0, 0)` has the given order (3 to 10, or 12), taken
/// from Tate's normal form `y² + (1 − c)xy − by = x³ − bx²` at the
/// parameter `t` (for order 3, `y² + xy + t·y = x³`) and scaled to an
/// integral model; `(0, 0)` is fixed by the scaling. The order is
/// re-certified, not assumed.
pub fn tate_normal_form(order: u32, t: &BigRational) -> Result<(WeierstrassModel, CurvePoint)> {
    let one = BigRational::one();
    let k = |n: i64| BigRational::from_integer(BigInt::from(n));
    let pole = match order {
        8 => t.is_zero(),
        12 => t.is_one(),
        _ => false,
    };
    if pole {
        return Err(Error::Domain("the family has a pole at this parameter"));
    }
    let coeffs: [BigRational; 5] = if order == 3 {
        [one.clone(), k(0), t.clone(), k(0), k(0)]
    } else {
        let (b, c) = match order {
            4 => (t.clone(), k(0)),
            5 => (t.clone(), t.clone()),
            6 => (t + t * t, t.clone()),
            7 => (t * t * t - t * t, t * t - t),
            8 => {
                let b = (k(2) * t - &one) * (t - &one);
                let c = &b / t;
                (b, c)
            }
            9 => {
                let c = t * t * (t - &one);
                (&c * (t * t - t + &one), c)
            }
            10 => {
                let den = t * t - k(3) * t + &one;
                let b = t * t * t * (t - &one) * (k(2) * t - &one) / (&den * &den);
                let c = -(t * (t - &one) * (k(2) * t - &one)) / den;
                (b, c)
            }
            12 => {
                let m = (k(3) * t - k(3) * t * t - &one) / (t - &one);
                let f = m.clone() / (&one - t);
                let d = &m + t;
                let c = &f * (&d - &one);
                let b = &c * &d;
                (b, c)
            }
            _ => return Err(Error::Domain("supported orders are 3 to 10 and 12")),
        };
        [&one - &c, -b.clone(), -b, k(0), k(0)]
    };
    let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = ModelMap::rescale(&den)?.transform_coeffs(&coeffs);
    let model = WeierstrassModel::from_rational(&scaled)?;
    let p = CurvePoint::affine(BigRational::zero(), BigRational::zero());
    match point_order(&model, &p, ORDER_CAP) {
        Some(n) if n == order => Ok((model, p)),
        _ => Err(Error::Precondition(
            "parameter does not give a point of the requested order".to_string(),
        )),
    }
}
