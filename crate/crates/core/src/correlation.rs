//! Correlated families of points in fibered powers, tested on finite data.
//!
//! A set of points in a family `X → B` is *n-correlated* when the ordered
//! `n`-tuples of points lying in a common fiber are contained in a proper
//! closed subset of the fibered power `X_B^n`. From finitely many points we
//! can only ask whether some nonzero polynomial of total degree at most `D`
//! (in the base parameter and the tuple coordinates) vanishes on every
//! tuple, and that is what [`find_hypersurface`] decides exactly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::linalg::kernel;
use crate::arith::{Monomial, MultiPoly};
use crate::curve::CurvePoint;
use crate::twist::TwistScanEntry;
use crate::{Error, Result};

pub type Poly = MultiPoly<BigRational>;

/// Points grouped by the base parameter of their fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedPointSet {
    coord_names: Vec<String>,
    fibers: BTreeMap<BigRational, Vec<Vec<BigRational>>>,
}

impl FiberedPointSet {
    /// An empty set of points with `dim` coordinates named `x, y, z` (or
    /// `c1, c2, …` beyond three).
    pub fn new(dim: usize) -> Result<Self> {
        let names = match dim {
            0 => return Err(Error::Domain("points need at least one coordinate")),
            1..=3 => ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect(),
            _ => (1..=dim).map(|i| format!("c{i}")).collect(),
        };
        Self::with_names(names)
    }

    pub fn with_names(coord_names: Vec<String>) -> Result<Self> {
        if coord_names.is_empty() {
            return Err(Error::Domain("points need at least one coordinate"));
        }
        if coord_names.iter().any(|n| n == "t") {
            return Err(Error::Domain("`t` is reserved for the base parameter"));
        }
        Ok(FiberedPointSet {
            coord_names,
            fibers: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.coord_names.len()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    /// Adds a point; repeated points within a fiber are kept once.
    pub fn insert(&mut self, t: BigRational, coords: Vec<BigRational>) -> Result<()> {
        if coords.len() != self.dim() {
            return Err(Error::Precondition(format!(
                "point has {} coordinates, expected {}",
                coords.len(),
                self.dim()
            )));
        }
        let fiber = self.fibers.entry(t).or_default();
        if !fiber.contains(&coords) {
            fiber.push(coords);
        }
        Ok(())
    }

    pub fn fibers(&self) -> impl Iterator<Item = (&BigRational, &[Vec<BigRational>])> {
        self.fibers.iter().map(|(t, v)| (t, v.as_slice()))
    }

    pub fn fiber(&self, t: &BigRational) -> Option<&[Vec<BigRational>]> {
        self.fibers.get(t).map(Vec::as_slice)
    }

    pub fn num_fibers(&self) -> usize {
        self.fibers.len()
    }

    pub fn num_points(&self) -> usize {
        self.fibers.values().map(Vec::len).sum()
    }

    pub fn max_fiber_count(&self) -> usize {
        self.fibers.values().map(Vec::len).max().unwrap_or(0)
    }

    /// The affine points `(x, y)` of each twist, fibered over `t`.
    pub fn from_twist_scan(entries: &[TwistScanEntry]) -> Self {
        let mut set = Self::new(2).expect("dimension 2");
        for e in entries {
            let t = BigRational::from_integer(e.t.clone());
            for p in &e.points {
                if let CurvePoint::Affine { x, y } = p {
                    set.insert(t.clone(), vec![x.clone(), y.clone()]).expect("dimension 2");
                }
            }
        }
        set
    }

    /// The Kummer images `(x1, x2, z)` of each twist, fibered over `t`.
    pub fn kummer_from_twist_scan(entries: &[TwistScanEntry]) -> Self {
        let names = ["x1", "x2", "z"].iter().map(|s| s.to_string()).collect();
        let mut set = Self::with_names(names).expect("valid names");
        for e in entries {
            let t = BigRational::from_integer(e.t.clone());
            for k in &e.kummer {
                set.insert(t.clone(), vec![k.x1.clone(), k.x2.clone(), k.z.clone()])
                    .expect("dimension 3");
            }
        }
        set
    }
}

/// One ordered `n`-tuple of points from a common fiber, flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTuple {
    pub t: BigRational,
    pub coords: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSet {
    pub n: usize,
    /// Variable names: `t` first, then the coordinates slot by slot.
    pub vars: Vec<String>,
    pub tuples: Vec<FiberTuple>,
}

impl TupleSet {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The tuple as a point of affine space, parameter first.
    pub fn point(&self, i: usize) -> Vec<BigRational> {
        let tup = &self.tuples[i];
        let mut v = Vec::with_capacity(self.nvars());
        v.push(tup.t.clone());
        v.extend(tup.coords.iter().cloned());
        v
    }
}

fn slot_names(names: &[String], n: usize) -> Vec<String> {
    let mut vars = vec!["t".to_string()];
    for k in 1..=n {
        for name in names {
            vars.push(match (n, name.chars().count()) {
                (1, _) => name.clone(),
                (_, 1) => format!("{name}{k}"),
                _ => format!("{name}_{k}"),
            });
        }
    }
    vars
}

/// Every ordered `n`-tuple of points lying in a common fiber, fibers in
/// increasing order of the parameter.
pub fn assemble_tuples(points: &FiberedPointSet, n: usize) -> Result<TupleSet> {
    if n == 0 {
        return Err(Error::Domain("tuple arity must be at least 1"));
    }
    let mut tuples = Vec::new();
    for (t, pts) in points.fibers() {
        let m = pts.len();
        let total = m.checked_pow(n as u32).ok_or(Error::Overflow("tuple count"))?;
        for mut idx in 0..total {
            let mut chosen = vec![0; n];
            for slot in (0..n).rev() {
                chosen[slot] = idx % m;
                idx /= m;
            }
            let coords = chosen.iter().flat_map(|&i| pts[i].iter().cloned()).collect();
            tuples.push(FiberTuple { t: t.clone(), coords });
        }
    }
    Ok(TupleSet {
        n,
        vars: slot_names(points.coord_names(), n),
        tuples,
    })
}

/// Evaluations of every monomial of degree at most `degree` at each tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleMatrix {
    pub degree: u32,
    pub vars: Vec<String>,
    /// Column basis, increasing graded-lex with `t` most significant.
    pub monomials: Vec<Monomial>,
    pub rows: Vec<Vec<BigRational>>,
}

impl TupleMatrix {
    pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
        Monomial::all_up_to(nvars, degree)
    }

    /// One row: the monomials evaluated at `point`.
    pub fn row(monomials: &[Monomial], degree: u32, point: &[BigRational]) -> Vec<BigRational> {
        let powers: Vec<Vec<BigRational>> = point
            .iter()
            .map(|v| {
                let mut p = vec![BigRational::one()];
                for k in 0..degree as usize {
                    let next = &p[k] * v;
                    p.push(next);
                }
                p
            })
            .collect();
        monomials
            .iter()
            .map(|m| {
                m.0.iter()
                    .enumerate()
                    .fold(BigRational::one(), |acc, (i, &e)| acc * &powers[i][e as usize])
            })
            .collect()
    }

    pub fn build(tuples: &TupleSet, degree: u32) -> Self {
        let monomials = Self::monomial_basis(tuples.nvars(), degree);
        let rows = (0..tuples.tuples.len())
            .map(|i| Self::row(&monomials, degree, &tuples.point(i)))
            .collect();
        Self::from_rows(tuples.vars.clone(), degree, monomials, rows)
    }

    /// Assembles a matrix from rows computed elsewhere, e.g. in parallel.
    pub fn from_rows(vars: Vec<String>, degree: u32, monomials: Vec<Monomial>, rows: Vec<Vec<BigRational>>) -> Self {
        TupleMatrix {
            degree,
            vars,
            monomials,
            rows,
        }
    }

    pub fn ncols(&self) -> usize {
        self.monomials.len()
    }
}

/// Outcome of fitting hypersurfaces of bounded degree through a tuple set.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceFit {
    pub degree: u32,
    pub num_monomials: usize,
    pub rank: usize,
    /// A basis of the polynomials of degree at most `degree` vanishing on
    /// every tuple, each with coprime integer coefficients.
    pub witnesses: Vec<Poly>,
}

impl HypersurfaceFit {
    pub fn correlated(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// The exact nullspace of a tuple matrix, computed on its distinct rows.
pub fn fit_matrix(matrix: &TupleMatrix) -> HypersurfaceFit {
    let distinct: BTreeSet<&Vec<BigRational>> = matrix.rows.iter().collect();
    let rows: Vec<Vec<BigRational>> = distinct.into_iter().cloned().collect();
    let ncols = matrix.ncols();
    let basis = kernel(&rows, ncols);
    let rank = ncols - basis.len();
    let witnesses = basis
        .iter()
        .map(|v| {
            Poly::from_terms_with(
                matrix.vars.clone(),
                matrix
                    .monomials
                    .iter()
                    .zip(v)
                    .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
            )
        })
        .collect();
    HypersurfaceFit {
        degree: matrix.degree,
        num_monomials: ncols,
        rank,
        witnesses,
    }
}

pub fn find_hypersurface(tuples: &TupleSet, degree: u32) -> Result<HypersurfaceFit> {
    if degree == 0 {
        return Err(Error::Domain("degree bound must be at least 1"));
    }
    Ok(fit_matrix(&TupleMatrix::build(tuples, degree)))
}

/// Fibers resolved at one stage of the descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentCase {
    /// Number of tuple slots still constrained at this stage.
    pub slots: usize,
    pub fibers: Vec<BigRational>,
    /// Largest point count among those fibers.
    pub max_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Bound {
    pub n_bound: usize,
    pub cases: Vec<DescentCase>,
    /// Fibers whose whole fibered power lies in the fitted set.
    pub excluded: Vec<BigRational>,
}

impl Lemma1Bound {
    /// Every fiber outside the excluded list has at most `n_bound` points.
    pub fn is_sound_for(&self, points: &FiberedPointSet) -> bool {
        points
            .fibers()
            .all(|(t, pts)| self.excluded.contains(t) || pts.len() <= self.n_bound)
    }
}

/// Splits `g` by the exponents of the variables in `slot`, returning the
/// nonzero coefficient polynomials.
fn coefficients_in(g: &Poly, slot: &[usize]) -> Vec<Poly> {
    let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, BigRational)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let key: Vec<u32> = slot.iter().map(|&i| m.0[i]).collect();
        let mut rest = m.clone();
        for &i in slot {
            rest.0[i] = 0;
        }
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    groups
        .into_values()
        .map(|terms| Poly::from_terms_with(g.vars().to_vec(), terms))
        .filter(|p| !p.is_zero())
        .collect()
}

/// Which stage of the descent resolves one fiber, or `None` if the fiber is
/// absorbed entirely by the fitted set.
fn resolve_fiber(t: &BigRational, pts: &[Vec<BigRational>], polys: &[Poly], n: usize, dim: usize) -> Option<usize> {
    let nvars = 1 + n * dim;
    let mut base = vec![None; nvars];
    base[0] = Some(t.clone());
    let mut current: Vec<Poly> = polys
        .iter()
        .map(|g| g.specialize(&base))
        .filter(|g| !g.is_zero())
        .collect();
    for i in (1..=n).rev() {
        if current.is_empty() {
            return None;
        }
        let slot: Vec<usize> = (0..dim).map(|j| 1 + (i - 1) * dim + j).collect();
        let m = pts.len();
        let prefixes = m.pow(i as u32 - 1);
        for mut idx in 0..prefixes {
            let mut values = base.clone();
            for s in (0..i - 1).rev() {
                let p = &pts[idx % m];
                idx /= m;
                for j in 0..dim {
                    values[1 + s * dim + j] = Some(p[j].clone());
                }
            }
            if current.iter().any(|g| !g.specialize(&values).is_zero()) {
                return Some(i);
            }
        }
        current = current.iter().flat_map(|g| coefficients_in(g, &slot)).collect();
    }
    None
}

/// The discrete form of the descent bounding fiber counts of a correlated
/// set. Each fiber is resolved at the largest `i` for which some choice of
/// its points in the first `i − 1` slots leaves a nonzero polynomial in the
/// `i`-th slot, so that all its points satisfy that polynomial; if no stage
/// resolves it, the fiber is excluded. `N` is the largest count among
/// resolved fibers. When every polynomial is zero the fitted set is the
/// whole space, no fiber is excluded and `N` is the largest fiber count.
pub fn lemma1_bound(points: &FiberedPointSet, polys: &[Poly], n: usize) -> Result<Lemma1Bound> {
    let tuples = assemble_tuples(points, n)?;
    for g in polys {
        if g.vars() != tuples.vars.as_slice() {
            return Err(Error::Precondition(format!(
                "polynomial variables {:?} do not match tuple variables {:?}",
                g.vars(),
                tuples.vars
            )));
        }
        for i in 0..tuples.tuples.len() {
            if !g.evaluate(&tuples.point(i)).is_zero() {
                return Err(Error::Precondition(format!(
                    "a tuple in the fiber t = {} does not lie on the fitted set",
                    tuples.tuples[i].t
                )));
            }
        }
    }
    if polys.iter().all(Poly::is_zero) {
        let counts: Vec<BigRational> = points.fibers().map(|(t, _)| t.clone()).collect();
        return Ok(Lemma1Bound {
            n_bound: points.max_fiber_count(),
            cases: vec![DescentCase {
                slots: 0,
                fibers: counts,
                max_count: points.max_fiber_count(),
            }],
            excluded: Vec::new(),
        });
    }
    let mut by_case: BTreeMap<usize, DescentCase> = BTreeMap::new();
    let mut excluded = Vec::new();
    for (t, pts) in points.fibers() {
        match resolve_fiber(t, pts, polys, n, points.dim()) {
            Some(i) => {
                let case = by_case.entry(i).or_insert_with(|| DescentCase {
                    slots: i,
                    fibers: Vec::new(),
                    max_count: 0,
                });
                case.fibers.push(t.clone());
                case.max_count = case.max_count.max(pts.len());
            }
            None => excluded.push(t.clone()),
        }
    }
    let cases: Vec<DescentCase> = by_case.into_values().rev().collect();
    let n_bound = cases.iter().map(|c| c.max_count).max().unwrap_or(0);
    Ok(Lemma1Bound {
        n_bound,
        cases,
        excluded,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationReport {
    pub n: usize,
    pub degree: u32,
    pub num_fibers: usize,
    pub num_points: usize,
    pub num_tuples: usize,
    pub fit: HypersurfaceFit,
    pub bound: Option<Lemma1Bound>,
}

impl CorrelationReport {
    pub fn correlated(&self) -> bool {
        self.fit.correlated()
    }

    /// The verdict, phrased relative to the degree bound and the data.
    pub fn summary(&self) -> String {
        let yes = if self.correlated() { "yes" } else { "no" };
        let mut s = format!(
            "{}-correlated at degree <= {}: {} ({} witnesses, {} tuples)",
            self.n,
            self.degree,
            yes,
            self.fit.witnesses.len(),
            self.num_tuples
        );
        if let Some(b) = &self.bound {
            s += &format!(", N = {}, {} excluded fibers", b.n_bound, b.excluded.len());
        }
        s
    }
}

pub fn correlation_report(points: &FiberedPointSet, n: usize, degree: u32) -> Result<CorrelationReport> {
    let tuples = assemble_tuples(points, n)?;
    let fit = find_hypersurface(&tuples, degree)?;
    report_from_fit(points, &tuples, fit)
}

/// Completes a report from a fit computed elsewhere.
pub fn report_from_fit(points: &FiberedPointSet, tuples: &TupleSet, fit: HypersurfaceFit) -> Result<CorrelationReport> {
    let bound = if fit.correlated() {
        Some(lemma1_bound(points, &fit.witnesses, tuples.n)?)
    } else {
        None
    };
    Ok(CorrelationReport {
        n: tuples.n,
        degree: fit.degree,
        num_fibers: points.num_fibers(),
        num_points: points.num_points(),
        num_tuples: tuples.tuples.len(),
        fit,
        bound,
    })
}
