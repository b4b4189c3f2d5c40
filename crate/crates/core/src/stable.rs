//! Stably `S`-integral points.
//!
//! Let `E₀` be the Néron model of `E` over `Z` with the zero section removed
//! and, at every prime of additive reduction, the identity component of the
//! special fiber removed as well (the *stably minimal model*). A rational
//! point is stably `S`-integral when it is an `S`-integral point of `E₀`;
//! equivalently it stays integral on a semistable model after a finite
//! extension. On the global minimal Weierstrass model the identity component
//! at a bad prime is the smooth locus of the reduced equation, so the test
//! comes down to valuations and a smooth-point check.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::arith::{p_valuation, PrimeSet, Valuation};
use crate::curve::{search_s_integral_points, CurvePoint, ModelMap, WeierstrassModel};
use crate::reduction::{
    global_reduction, minimalize, on_identity_component, GlobalReduction, Kodaira, ReductionClass,
};
use crate::{Error, Result};

/// What happens to a point at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeStatus {
    InS,
    GoodIntegral,
    MultIntegral,
    AdditiveNonidentity,
    MeetsZeroSection,
    AdditiveIdentityComponent,
}

impl PrimeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimeStatus::InS => "in_S",
            PrimeStatus::GoodIntegral => "good_integral",
            PrimeStatus::MultIntegral => "mult_integral",
            PrimeStatus::AdditiveNonidentity => "additive_nonidentity",
            PrimeStatus::MeetsZeroSection => "meets_zero_section",
            PrimeStatus::AdditiveIdentityComponent => "additive_identity_component",
        }
    }

    /// Whether this status, at a prime outside `S`, rules the point out.
    pub fn is_obstruction(self) -> bool {
        matches!(
            self,
            PrimeStatus::MeetsZeroSection | PrimeStatus::AdditiveIdentityComponent
        )
    }
}

impl fmt::Display for PrimeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrimeStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "in_S" => PrimeStatus::InS,
            "good_integral" => PrimeStatus::GoodIntegral,
            "mult_integral" => PrimeStatus::MultIntegral,
            "additive_nonidentity" => PrimeStatus::AdditiveNonidentity,
            "meets_zero_section" => PrimeStatus::MeetsZeroSection,
            "additive_identity_component" => PrimeStatus::AdditiveIdentityComponent,
            _ => return Err(Error::Domain("unknown prime status")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEvidence {
    pub p: BigInt,
    pub status: PrimeStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableReport {
    /// The global minimal model the verdict is computed on.
    pub curve: WeierstrassModel,
    /// The point as supplied.
    pub point: CurvePoint,
    /// The same point on `curve`.
    pub minimal_point: CurvePoint,
    pub s: PrimeSet,
    pub verdict: bool,
    /// One entry per prime that is bad for `curve` or where `x` has negative
    /// valuation, sorted by prime.
    pub evidence: Vec<PrimeEvidence>,
}

impl StableReport {
    pub fn status_at(&self, p: &BigInt) -> Option<PrimeStatus> {
        self.evidence.iter().find(|e| &e.p == p).map(|e| e.status)
    }
}

/// The data cut out of the Néron model to form the stably minimal model: the
/// zero section (implicit: the point at infinity of `minimal_model`) and the
/// identity components at additive primes, recorded by the singular point of
/// the reduced equation at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablyMinimalDescriptor {
    pub minimal_model: WeierstrassModel,
    pub map_to_minimal: ModelMap,
    pub additive_primes: PrimeSet,
    pub singular_points: Vec<(BigInt, (BigInt, BigInt))>,
}

pub fn stably_minimal_descriptor(model: &WeierstrassModel) -> Result<StablyMinimalDescriptor> {
    let g = global_reduction(model)?;
    let singular_points = g
        .locals
        .iter()
        .filter(|l| l.class == ReductionClass::Additive)
        .map(|l| {
            let pt = l.singular_point.clone().expect("additive prime has a singular point");
            (l.p.clone(), pt)
        })
        .collect();
    Ok(StablyMinimalDescriptor {
        minimal_model: g.minimal_model,
        map_to_minimal: g.map_to_minimal,
        additive_primes: g.additive_primes,
        singular_points,
    })
}

fn require_s(s: &PrimeSet) -> Result<()> {
    if s.contains(&BigInt::from(2)) && s.contains(&BigInt::from(3)) {
        Ok(())
    } else {
        Err(Error::Precondition(
            "the prime set S must contain 2 and 3".to_string(),
        ))
    }
}

fn negative(q: &num_rational::BigRational, p: &BigInt) -> bool {
    matches!(p_valuation(q, p), Valuation::Finite(v) if v < 0)
}

/// Status of a point of the minimal model at a prime outside `S`.
pub fn status_at(global: &GlobalReduction, point: &CurvePoint, p: &BigInt) -> Result<PrimeStatus> {
    let x = point.x().ok_or(Error::Domain("the point at infinity has no status"))?;
    if negative(x, p) {
        return Ok(PrimeStatus::MeetsZeroSection);
    }
    let Some(local) = global.local_at(p) else {
        return Ok(PrimeStatus::GoodIntegral);
    };
    Ok(match local.class {
        ReductionClass::Good => PrimeStatus::GoodIntegral,
        ReductionClass::SplitMultiplicative | ReductionClass::NonSplitMultiplicative => {
            PrimeStatus::MultIntegral
        }
        ReductionClass::Additive => {
            if on_identity_component(&global.minimal_model, point, p)? {
                PrimeStatus::AdditiveIdentityComponent
            } else {
                PrimeStatus::AdditiveNonidentity
            }
        }
    })
}

/// Classifies a point given on `global.minimal_model`.
pub fn classify_on_minimal(
    global: &GlobalReduction,
    point: &CurvePoint,
    s: &PrimeSet,
) -> Result<(bool, Vec<PrimeEvidence>)> {
    require_s(s)?;
    let (x, y) = match point {
        CurvePoint::Infinity => return Err(Error::Domain("the point at infinity is never integral")),
        CurvePoint::Affine { x, y } => (x, y),
    };
    if !global.minimal_model.contains(point) {
        return Err(Error::NotOnCurve);
    }
    let mut primes: Vec<BigInt> = global.bad_primes().cloned().collect();
    for den in [x.denom(), y.denom()] {
        if *den != BigInt::from(1) {
            let fac = crate::arith::factor_integer(den)?;
            primes.extend(fac.primes().cloned());
        }
    }
    primes.sort();
    primes.dedup();
    let mut evidence = Vec::with_capacity(primes.len());
    let mut verdict = true;
    for p in primes {
        let status = if s.contains(&p) {
            PrimeStatus::InS
        } else {
            status_at(global, point, &p)?
        };
        if status.is_obstruction() {
            verdict = false;
        }
        evidence.push(PrimeEvidence { p, status });
    }
    Ok((verdict, evidence))
}

/// Whether `point` is stably `S`-integral on the curve given by `model`.
/// `S` must contain 2 and 3.
pub fn is_stably_integral(model: &WeierstrassModel, point: &CurvePoint, s: &PrimeSet) -> Result<StableReport> {
    require_s(s)?;
    if point.is_infinity() {
        return Err(Error::Domain("the point at infinity is never integral"));
    }
    if !model.contains(point) {
        return Err(Error::NotOnCurve);
    }
    let global = global_reduction(model)?;
    let minimal_point = global.map_to_minimal.map_point(point);
    let (verdict, evidence) = classify_on_minimal(&global, &minimal_point, s)?;
    Ok(StableReport {
        curve: global.minimal_model,
        point: point.clone(),
        minimal_point,
        s: s.clone(),
        verdict,
        evidence,
    })
}

/// The stably `S`-integral points among the `S`-integral points of height
/// at most `bound` on the minimal model, sorted by `(x, y)`. Points are
/// returned on the minimal model.
pub fn enumerate_stably_integral(model: &WeierstrassModel, s: &PrimeSet, bound: u64) -> Result<Vec<CurvePoint>> {
    require_s(s)?;
    let global = global_reduction(model)?;
    let mut out = Vec::new();
    for p in search_s_integral_points(&global.minimal_model, s, bound) {
        if classify_on_minimal(&global, &p, s)?.0 {
            out.push(p);
        }
    }
    Ok(out)
}

/// Outcome of checking the classifier against a semistabilizing twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistCheck {
    /// The reduction type at `p` is not made semistable by the quadratic
    /// twist by `p` (or `p ∈ {2, 3}`).
    Inapplicable { kodaira: Option<Kodaira> },
    Checked {
        classifier_status: PrimeStatus,
        twisted_model: WeierstrassModel,
        twisted_x: num_rational::BigRational,
        twisted_integral: bool,
        agreement: bool,
    },
}

impl TwistCheck {
    pub fn agreement(&self) -> Option<bool> {
        match self {
            TwistCheck::Inapplicable { .. } => None,
            TwistCheck::Checked { agreement, .. } => Some(*agreement),
        }
    }
}

/// At a prime `p ≥ 5` of type `I0*` or `In*`, the quadratic twist by `p` has
/// semistable reduction. Over `Q(√p)` the point `(X, Y)` of the short model
/// `Y² = X³ − 27c4·X − 54c6` maps to `(pX, p^{3/2}Y)` on the twist, whose
/// `x`-coordinate is rational; integrality there is compared with the
/// classifier's verdict at `p`.
pub fn twist_cross_check(model: &WeierstrassModel, point: &CurvePoint, p: &BigInt) -> Result<TwistCheck> {
    crate::arith::require_prime(p)?;
    if *p < BigInt::from(5) {
        return Ok(TwistCheck::Inapplicable { kodaira: None });
    }
    if !model.contains(point) {
        return Err(Error::NotOnCurve);
    }
    let global = global_reduction(model)?;
    let kodaira = global.local_at(p).map(|l| l.kodaira).unwrap_or(Kodaira::I0);
    if !matches!(kodaira, Kodaira::I0Star | Kodaira::InStar(_)) {
        return Ok(TwistCheck::Inapplicable { kodaira: Some(kodaira) });
    }
    let min = &global.minimal_model;
    let pt = global.map_to_minimal.map_point(point);
    let x = pt.x().ok_or(Error::Domain("the point at infinity has no status"))?;
    let classifier_status = status_at(&global, &pt, p)?;

    let q = |n: &BigInt| num_rational::BigRational::from_integer(n.clone());
    let big_x = q(&BigInt::from(36)) * x + q(&(3 * min.b2()));
    let a = BigInt::from(-27) * min.c4() * p * p;
    let b = BigInt::from(-54) * min.c6() * p * p * p;
    let twist = WeierstrassModel::short(a, b)?;
    let (twisted_model, to_min) = minimalize(&twist)?;
    let twisted_x = (q(p) * big_x - &to_min.r) / (&to_min.u * &to_min.u);
    let twisted_integral = !negative(&twisted_x, p);
    let stable_at_p = classifier_status == PrimeStatus::AdditiveNonidentity;
    Ok(TwistCheck::Checked {
        classifier_status,
        twisted_model,
        twisted_x,
        twisted_integral,
        agreement: twisted_integral == stable_at_p,
    })
}
