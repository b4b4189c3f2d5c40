//! The Hesse pencil `λ(X³ + Y³ + Z³) − 3μXYZ = 0` of plane cubics over
//! `Q(ζ₃)`, with the flex `[1 : −1 : 0]` as origin.
//!
//! The pencil is parametrized by `t = λ/μ ∈ P¹`. Its singular members sit
//! over `t ∈ {0, 1, ω, ω²}`; each is a triangle of lines with three nodes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{Eisenstein, MultiPoly};
use crate::curve::{apply_model_map, CurvePoint, ModelMap, WeierstrassModel};
use crate::reduction::minimalize;
use crate::{Error, Result};

const XYZ: [&str; 3] = ["X", "Y", "Z"];

/// A point of `P²(Q(ζ₃))`, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    coords: [Eisenstein; 3],
}

impl PlanePoint {
    pub fn new(x: Eisenstein, y: Eisenstein, z: Eisenstein) -> Result<Self> {
        let coords = [x, y, z];
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::Domain("[0:0:0] is not a point"))?
            .inverse()?;
        Ok(PlanePoint {
            coords: coords.map(|c| &c * &lead),
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(Eisenstein::from_int(x), Eisenstein::from_int(y), Eisenstein::from_int(z))
    }

    pub fn coords(&self) -> &[Eisenstein; 3] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(Eisenstein::is_rational)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x} : {y} : {z}]")
    }
}

/// Normalizes `[λ : μ]` to `[t : 1]` or `[1 : 0]`.
fn normalize_pair(lambda: &Eisenstein, mu: &Eisenstein) -> Result<(Eisenstein, Eisenstein)> {
    if mu.is_zero() {
        if lambda.is_zero() {
            return Err(Error::Domain("[0:0] is not a parameter"));
        }
        return Ok((Eisenstein::one(), Eisenstein::zero()));
    }
    Ok((lambda * &mu.inverse()?, Eisenstein::one()))
}

/// The member of the pencil over `[λ : μ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HesseFiber {
    pub lambda: Eisenstein,
    pub mu: Eisenstein,
    pub cubic: MultiPoly<Eisenstein>,
}

pub fn fiber_at(lambda: Eisenstein, mu: Eisenstein) -> Result<HesseFiber> {
    if lambda.is_zero() && mu.is_zero() {
        return Err(Error::Domain("[0:0] is not a parameter"));
    }
    let c = |e: [u32; 3], k: Eisenstein| (e.to_vec(), k);
    let cubic = MultiPoly::from_terms(
        &XYZ,
        [
            c([3, 0, 0], lambda.clone()),
            c([0, 3, 0], lambda.clone()),
            c([0, 0, 3], lambda.clone()),
            c([1, 1, 1], &Eisenstein::from_int(-3) * &mu),
        ],
    );
    Ok(HesseFiber { lambda, mu, cubic })
}

impl HesseFiber {
    /// `[λ : μ]` scaled to `[t : 1]` or `[1 : 0]`.
    pub fn parameter(&self) -> (Eisenstein, Eisenstein) {
        normalize_pair(&self.lambda, &self.mu).expect("validated at construction")
    }

    /// `t = λ/μ`, or `None` at `t = ∞`.
    pub fn t(&self) -> Option<Eisenstein> {
        let (t, mu) = self.parameter();
        (!mu.is_zero()).then_some(t)
    }

    pub fn same_fiber(&self, other: &HesseFiber) -> bool {
        self.parameter() == other.parameter()
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.cubic.evaluate(p.coords()).is_zero()
    }

    pub fn gradient(&self) -> [MultiPoly<Eisenstein>; 3] {
        [self.cubic.partial(0), self.cubic.partial(1), self.cubic.partial(2)]
    }

    pub fn is_singular_at(&self, p: &PlanePoint) -> bool {
        self.contains(p) && self.gradient().iter().all(|g| g.evaluate(p.coords()).is_zero())
    }

    pub fn is_singular(&self) -> bool {
        singular_points(&self.lambda, &self.mu).is_some()
    }

    /// Determinant of the 3×3 matrix of second partials at `p`. On a smooth
    /// cubic it vanishes exactly at the flexes.
    pub fn hessian_at(&self, p: &PlanePoint) -> Eisenstein {
        let g = self.gradient();
        let h: Vec<Vec<Eisenstein>> = g
            .iter()
            .map(|gi| (0..3).map(|j| gi.partial(j).evaluate(p.coords())).collect())
            .collect();
        det3(&h)
    }
}

fn det3(m: &[Vec<Eisenstein>]) -> Eisenstein {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// Singular points of the member over `[λ : μ]`, or `None` when it is
/// smooth.
///
/// The partials give `λX² = μYZ`, `λY² = μXZ`, `λZ² = μXY`. For `λ = 0`
/// they force two coordinates to vanish. For `λ ≠ 0`, a zero coordinate
/// forces all three to vanish, so `XYZ ≠ 0`; multiplying the equations gives
/// `λ³ = μ³`, and with `Z = 1`, `X³ = 1` and `Y = X²·λ/μ`.
fn singular_points(lambda: &Eisenstein, mu: &Eisenstein) -> Option<Vec<PlanePoint>> {
    let (t, m) = normalize_pair(lambda, mu).ok()?;
    if m.is_zero() {
        return None;
    }
    if t.is_zero() {
        return Some(vec![
            PlanePoint::from_ints(1, 0, 0).ok()?,
            PlanePoint::from_ints(0, 1, 0).ok()?,
            PlanePoint::from_ints(0, 0, 1).ok()?,
        ]);
    }
    if !(&(&t * &t) * &t).is_one() {
        return None;
    }
    let mut out: Vec<PlanePoint> = Eisenstein::cube_roots_of_unity()
        .into_iter()
        .map(|x| {
            let y = &(&x * &x) * &t;
            PlanePoint::new(x, y, Eisenstein::one()).expect("Z = 1")
        })
        .collect();
    out.sort();
    Some(out)
}

/// The parameters `[λ : μ]` (normalized) of all singular members.
pub fn find_singular_fibers() -> Vec<(Eisenstein, Eisenstein)> {
    // Either λ = 0, or λ³ = μ³ (see `singular_points`).
    let mut out = vec![(Eisenstein::zero(), Eisenstein::one())];
    for z in Eisenstein::cube_roots_of_unity() {
        out.push((z, Eisenstein::one()));
    }
    out.retain(|(l, m)| singular_points(l, m).is_some());
    out
}

/// A singular point with the determinant of the Hessian of the local
/// equation there; a nonzero determinant certifies an ordinary node.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub point: PlanePoint,
    pub local_hessian: Eisenstein,
}

impl Node {
    pub fn is_ordinary(&self) -> bool {
        !self.local_hessian.is_zero()
    }
}

/// All singular points of a singular member, each certified a node.
pub fn fiber_nodes(fiber: &HesseFiber) -> Result<Vec<Node>> {
    let pts = singular_points(&fiber.lambda, &fiber.mu).ok_or(Error::Domain("smooth fiber"))?;
    let mut nodes = Vec::with_capacity(pts.len());
    for p in pts {
        if !fiber.is_singular_at(&p) {
            return Err(Error::Domain("computed point is not singular"));
        }
        let local_hessian = local_hessian(&fiber.cubic, &p);
        nodes.push(Node { point: p, local_hessian });
    }
    Ok(nodes)
}

/// Dehomogenizes at a nonzero coordinate of `p` and returns the 2×2 Hessian
/// determinant of the affine equation at `p`.
fn local_hessian(cubic: &MultiPoly<Eisenstein>, p: &PlanePoint) -> Eisenstein {
    let k = p.coords().iter().position(|c| !c.is_zero()).expect("nonzero point");
    let scale = p.coords()[k].inverse().expect("nonzero");
    let mut fixed: Vec<Option<Eisenstein>> = vec![None; 3];
    fixed[k] = Some(Eisenstein::one());
    let affine = cubic.specialize(&fixed);
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let at: Vec<Eisenstein> = p.coords().iter().map(|c| c * &scale).collect();
    let second = |i: usize, j: usize| affine.partial(free[i]).partial(free[j]).evaluate(&at);
    &(&second(0, 0) * &second(1, 1)) - &(&second(0, 1) * &second(1, 0))
}

/// The nine common zeros of `X³ + Y³ + Z³` and `XYZ`: on the coordinate
/// line where one variable vanishes the other two satisfy `a³ + b³ = 0`,
/// i.e. `b = −ζa` for a cube root of unity `ζ`.
pub fn base_points() -> Vec<PlanePoint> {
    let mut out = Vec::with_capacity(9);
    let one = Eisenstein::one();
    for z in Eisenstein::cube_roots_of_unity() {
        let nz = -&z;
        let zero = Eisenstein::zero();
        out.push(PlanePoint::new(one.clone(), nz.clone(), zero.clone()).expect("nonzero"));
        out.push(PlanePoint::new(zero.clone(), one.clone(), nz.clone()).expect("nonzero"));
        out.push(PlanePoint::new(one.clone(), zero, nz).expect("nonzero"));
    }
    out.sort();
    out
}

/// The origin `[1 : −1 : 0]`.
pub fn origin() -> PlanePoint {
    PlanePoint::from_ints(1, -1, 0).expect("nonzero")
}

/// The change of coordinates from a smooth rational member of the pencil to
/// a Weierstrass model, sending `[1 : −1 : 0]` to the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HesseToWeierstrass {
    /// `[λ : μ]` with rational entries.
    pub lambda: BigRational,
    pub mu: BigRational,
    /// Affine coordinates `(u, v) = (Z/W, Y/W)` with `W = λX + λY + μZ`
    /// satisfy `u = −k·x₀`, `v = k·y₀` on the first (rational) model.
    pub k: BigRational,
    /// From the first model to the returned model.
    pub to_model: ModelMap,
}

impl HesseToWeierstrass {
    pub fn map_point(&self, p: &PlanePoint) -> Result<CurvePoint> {
        let q: Vec<BigRational> = p
            .coords()
            .iter()
            .map(|c| c.as_rational().cloned().ok_or(Error::Domain("point is not rational")))
            .collect::<Result<_>>()?;
        let w = &self.lambda * (&q[0] + &q[1]) + &self.mu * &q[2];
        if w.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let u = &q[2] / &w;
        let v = &q[1] / &w;
        let x0 = -(u / &self.k);
        let y0 = v / &self.k;
        Ok(self.to_model.map_point(&CurvePoint::affine(x0, y0)))
    }
}

/// A Weierstrass model of a smooth member with `λ/μ ∈ Q ∪ {∞}`.
///
/// In the coordinates `u = Z`, `v = Y`, `W = λX + λY + μZ` (the tangent at
/// the flex becomes `W = 0`) the cubic reads
/// `c·u³ + W·(αv² + βuv + γvW + δu² + εuW + ζW²)`; with `u = −(α/c)x`,
/// `v = (α/c)y` and `W = 1` it becomes a long Weierstrass equation, which is
/// then made integral and minimal.
pub fn fiber_to_weierstrass(fiber: &HesseFiber) -> Result<(WeierstrassModel, HesseToWeierstrass)> {
    if fiber.is_singular() {
        return Err(Error::SingularCurve);
    }
    let (t, m) = fiber.parameter();
    let (lambda, mu) = if m.is_zero() {
        (BigRational::one(), BigRational::zero())
    } else {
        let t = t.as_rational().ok_or(Error::Domain("λ/μ is not rational"))?.clone();
        (t, BigRational::one())
    };
    let uvw = ["u", "v", "W"];
    let var = |i| MultiPoly::<BigRational>::var(&uvw, i);
    let x_image = (&(&var(2) - &var(1).scale(&lambda)) - &var(0).scale(&mu)).scale(&(BigRational::one() / &lambda));
    let k3 = BigRational::from_integer(BigInt::from(-3));
    let f = MultiPoly::from_terms(
        &XYZ,
        [
            (vec![3, 0, 0], lambda.clone()),
            (vec![0, 3, 0], lambda.clone()),
            (vec![0, 0, 3], lambda.clone()),
            (vec![1, 1, 1], k3 * &mu),
        ],
    );
    let g = f.compose(&[x_image, var(1), var(0)]);
    let coef = |e: [u32; 3]| g.coefficient(&e);
    let c = coef([3, 0, 0]);
    debug_assert!(g.terms().all(|(mono, _)| mono.0[2] > 0 || mono.0 == vec![3, 0, 0]));
    let alpha = coef([0, 2, 1]);
    if c.is_zero() || alpha.is_zero() {
        return Err(Error::SingularCurve);
    }
    let beta = coef([1, 1, 1]);
    let gamma = coef([0, 1, 2]);
    let delta = coef([2, 0, 1]);
    let eps = coef([1, 0, 2]);
    let zeta = coef([0, 0, 3]);
    let a = [
        -(&beta / &alpha),
        -(&delta / &alpha),
        &gamma * &c / (&alpha * &alpha),
        &eps * &c / (&alpha * &alpha),
        -(&zeta * &c * &c) / (&alpha * &alpha * &alpha),
    ];
    let den = a.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = ModelMap::rescale(&den)?;
    let integral = WeierstrassModel::from_rational(&scale.transform_coeffs(&a))?;
    let (model, to_min) = minimalize(&integral)?;
    let (check, _) = apply_model_map(&integral, &to_min)?;
    debug_assert_eq!(check, model);
    Ok((
        model,
        HesseToWeierstrass {
            lambda,
            mu,
            k: &alpha / &c,
            to_model: scale.then(&to_min),
        },
    ))
}
