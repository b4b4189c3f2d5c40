//! Global minimal models and Tate's algorithm.

mod minimal;
mod tate;

pub use minimal::{is_minimal_at, kraus_holds_at, minimalize};
pub use tate::{singular_point_mod_p, tate_local};

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::arith::{factor_integer, mod_floor, p_valuation, PrimeSet, Valuation};
use crate::curve::{CurvePoint, ModelMap, WeierstrassModel};
use crate::{Error, Result};

/// Kodaira symbol of the special fiber of the Néron model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fiber over `F̄_p`.
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I0 | Kodaira::II => 1,
            Kodaira::In(n) => n,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::I0Star => 5,
            Kodaira::InStar(n) => 5 + n,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => f.write_str("I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::I0Star => f.write_str("I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = match s {
            "I0" => Kodaira::I0,
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "I0*" => Kodaira::I0Star,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let body = s.strip_prefix('I').ok_or(Error::Domain("unknown Kodaira symbol"))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let n: u32 = digits.parse().map_err(|_| Error::Domain("unknown Kodaira symbol"))?;
                if n == 0 {
                    return Err(Error::Domain("unknown Kodaira symbol"));
                }
                if star {
                    Kodaira::InStar(n)
                } else {
                    Kodaira::In(n)
                }
            }
        };
        Ok(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionClass {
    Good,
    SplitMultiplicative,
    NonSplitMultiplicative,
    Additive,
}

impl ReductionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionClass::Good => "good",
            ReductionClass::SplitMultiplicative => "multiplicative-split",
            ReductionClass::NonSplitMultiplicative => "multiplicative-nonsplit",
            ReductionClass::Additive => "additive",
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(
            self,
            ReductionClass::SplitMultiplicative | ReductionClass::NonSplitMultiplicative
        )
    }
}

impl fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good" => Ok(ReductionClass::Good),
            "multiplicative-split" => Ok(ReductionClass::SplitMultiplicative),
            "multiplicative-nonsplit" => Ok(ReductionClass::NonSplitMultiplicative),
            "additive" => Ok(ReductionClass::Additive),
            _ => Err(Error::Domain("unknown reduction class")),
        }
    }
}

/// Local data at one prime, computed on a model that is minimal there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReduction {
    pub p: BigInt,
    pub kodaira: Kodaira,
    pub class: ReductionClass,
    pub v_delta: u32,
    /// `None` when `c4 = 0`.
    pub v_c4: Option<u32>,
    pub tamagawa: u32,
    pub conductor_exponent: u32,
    /// The singular point of the reduced equation, coordinates in `[0, p)`.
    pub singular_point: Option<(BigInt, BigInt)>,
}

/// The global minimal model together with local data at every bad prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalReduction {
    pub minimal_model: WeierstrassModel,
    pub map_to_minimal: ModelMap,
    pub locals: Vec<LocalReduction>,
    pub additive_primes: PrimeSet,
}

impl GlobalReduction {
    pub fn local_at(&self, p: &BigInt) -> Option<&LocalReduction> {
        self.locals.iter().find(|l| &l.p == p)
    }

    pub fn bad_primes(&self) -> impl Iterator<Item = &BigInt> {
        self.locals.iter().map(|l| &l.p)
    }

    pub fn conductor(&self) -> BigInt {
        self.locals
            .iter()
            .map(|l| num_traits::pow(l.p.clone(), l.conductor_exponent as usize))
            .product()
    }
}

/// Minimalizes `model` and runs Tate's algorithm at every prime dividing the
/// minimal discriminant.
pub fn global_reduction(model: &WeierstrassModel) -> Result<GlobalReduction> {
    let (minimal_model, map_to_minimal) = minimalize(model)?;
    let fac = factor_integer(minimal_model.discriminant())?;
    let mut locals = Vec::new();
    for p in fac.primes() {
        locals.push(tate_local(&minimal_model, p)?);
    }
    let additive_primes = PrimeSet::new(
        locals
            .iter()
            .filter(|l| l.class == ReductionClass::Additive)
            .map(|l| l.p.clone()),
    )?;
    Ok(GlobalReduction {
        minimal_model,
        map_to_minimal,
        locals,
        additive_primes,
    })
}

/// A point of the reduced curve over `F_p` (or the point at infinity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialFiberPoint {
    Infinity,
    Affine(BigInt, BigInt),
}

impl fmt::Display for SpecialFiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialFiberPoint::Infinity => f.write_str("O"),
            SpecialFiberPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Reduction of a rational point modulo `p`. Points with a coordinate of
/// negative valuation reduce to the point at infinity.
pub fn reduce_point_mod_p(_model: &WeierstrassModel, point: &CurvePoint, p: &BigInt) -> Result<SpecialFiberPoint> {
    crate::arith::require_prime(p)?;
    match point {
        CurvePoint::Infinity => Ok(SpecialFiberPoint::Infinity),
        CurvePoint::Affine { x, y } => {
            let neg = |q| matches!(p_valuation(q, p), Valuation::Finite(v) if v < 0);
            if neg(x) || neg(y) {
                return Ok(SpecialFiberPoint::Infinity);
            }
            let red = |q: &num_rational::BigRational| {
                let inv = crate::arith::mod_inverse(q.denom(), p).expect("unit denominator");
                mod_floor(&(q.numer() * inv), p)
            };
            Ok(SpecialFiberPoint::Affine(red(x), red(y)))
        }
    }
}

/// Whether `point` reduces into the smooth locus of the reduced equation of
/// a model minimal at `p`, that is, onto the identity component of the Néron
/// special fiber. Fails at primes of good reduction.
pub fn on_identity_component(model: &WeierstrassModel, point: &CurvePoint, p: &BigInt) -> Result<bool> {
    crate::arith::require_prime(p)?;
    let Some(sing) = singular_point_mod_p(model, p) else {
        return Err(Error::GoodReduction { p: p.clone() });
    };
    match reduce_point_mod_p(model, point, p)? {
        SpecialFiberPoint::Infinity => Ok(true),
        SpecialFiberPoint::Affine(x, y) => Ok((x, y) != sing),
    }
}
