//! JSON report formats. Arithmetic values are decimal strings (`"n"` or
//! `"p/q"`) so nothing is truncated; counts, valuations and flags are plain
//! JSON numbers and booleans.

use std::collections::BTreeMap;

use ecs_core::arith::{Eisenstein, Monomial, MultiPoly, PrimeSet};
use ecs_core::correlation::{CorrelationReport, DescentCase, FiberedPointSet, Lemma1Bound};
use ecs_core::curve::{CurvePoint, ModelMap, WeierstrassModel};
use ecs_core::hesse::{Node, PlanePoint};
use ecs_core::reduction::{GlobalReduction, Kodaira, LocalReduction, ReductionClass};
use ecs_core::stable::{PrimeEvidence, PrimeStatus, StableReport};
use ecs_core::torsion::{CorollaryBound, CurveAudit, PointAudit, ThresholdVerdict, TorsionGroup};
use ecs_core::twist::{KummerPoint, ShortCubic, TwistScanEntry};
use ecs_core::{BigInt, BigRational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};
use crate::parse::{parse_int, parse_rational};

pub fn int_str(n: &BigInt) -> String {
    n.to_string()
}

pub fn rat_str(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(int_str).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub a: [String; 5],
}

impl CurveJson {
    pub fn from_model(e: &WeierstrassModel) -> Self {
        CurveJson {
            a: e.coeffs().clone().map(|c| int_str(&c)),
        }
    }

    pub fn to_model(&self) -> Result<WeierstrassModel> {
        let mut a: [BigInt; 5] = Default::default();
        for (i, c) in self.a.iter().enumerate() {
            a[i] = parse_int(&format!("curve.a[{i}]"), c)?;
        }
        Ok(WeierstrassModel::new(a)?)
    }
}

/// `"O"` or `{"x": ..., "y": ...}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointJson {
    Infinity,
    Affine { x: String, y: String },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPoint {
    Tag(String),
    Affine { x: String, y: String },
}

impl Serialize for PointJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PointJson::Infinity => RawPoint::Tag("O".into()).serialize(s),
            PointJson::Affine { x, y } => RawPoint::Affine {
                x: x.clone(),
                y: y.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for PointJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawPoint::deserialize(d)? {
            RawPoint::Tag(t) if t == "O" => Ok(PointJson::Infinity),
            RawPoint::Tag(t) => Err(serde::de::Error::custom(format!("unknown point tag {t:?}"))),
            RawPoint::Affine { x, y } => Ok(PointJson::Affine { x, y }),
        }
    }
}

impl PointJson {
    pub fn from_point(p: &CurvePoint) -> Self {
        match p {
            CurvePoint::Infinity => PointJson::Infinity,
            CurvePoint::Affine { x, y } => PointJson::Affine {
                x: rat_str(x),
                y: rat_str(y),
            },
        }
    }

    pub fn to_point(&self) -> Result<CurvePoint> {
        match self {
            PointJson::Infinity => Ok(CurvePoint::Infinity),
            PointJson::Affine { x, y } => Ok(CurvePoint::affine(
                parse_rational("point.x", x)?,
                parse_rational("point.y", y)?,
            )),
        }
    }
}

fn points(ps: &[CurvePoint]) -> Vec<PointJson> {
    ps.iter().map(PointJson::from_point).collect()
}

fn primes_json(s: &PrimeSet) -> Vec<String> {
    ints(s.as_slice())
}

fn primes_from_json(v: &[String]) -> Result<PrimeSet> {
    let ps = v.iter().map(|p| parse_int("S", p)).collect::<Result<Vec<_>>>()?;
    PrimeSet::new(ps).map_err(|e| CliError::usage(format!("S: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub u: String,
    pub r: String,
    pub s: String,
    pub t: String,
}

impl MapJson {
    pub fn from_map(m: &ModelMap) -> Self {
        MapJson {
            u: rat_str(&m.u),
            r: rat_str(&m.r),
            s: rat_str(&m.s),
            t: rat_str(&m.t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalJson {
    pub p: String,
    pub kodaira: String,
    pub class: String,
    pub v_delta: u32,
    pub v_c4: Option<u32>,
    pub tamagawa: u32,
    pub conductor_exponent: u32,
    pub singular_point: Option<[String; 2]>,
}

impl LocalJson {
    pub fn from_local(l: &LocalReduction) -> Self {
        LocalJson {
            p: int_str(&l.p),
            kodaira: l.kodaira.to_string(),
            class: l.class.as_str().to_string(),
            v_delta: l.v_delta,
            v_c4: l.v_c4,
            tamagawa: l.tamagawa,
            conductor_exponent: l.conductor_exponent,
            singular_point: l.singular_point.as_ref().map(|(x, y)| [int_str(x), int_str(y)]),
        }
    }

    pub fn to_local(&self) -> Result<LocalReduction> {
        let kodaira: Kodaira = self
            .kodaira
            .parse()
            .map_err(|_| CliError::usage(format!("kodaira: unknown symbol {:?}", self.kodaira)))?;
        let class: ReductionClass = self
            .class
            .parse()
            .map_err(|_| CliError::usage(format!("class: unknown class {:?}", self.class)))?;
        let singular_point = match &self.singular_point {
            Some([x, y]) => Some((parse_int("singular_point[0]", x)?, parse_int("singular_point[1]", y)?)),
            None => None,
        };
        Ok(LocalReduction {
            p: parse_int("p", &self.p)?,
            kodaira,
            class,
            v_delta: self.v_delta,
            v_c4: self.v_c4,
            tamagawa: self.tamagawa,
            conductor_exponent: self.conductor_exponent,
            singular_point,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalJson {
    pub curve: CurveJson,
    pub discriminant: String,
    pub j_invariant: String,
    pub minimal_model: CurveJson,
    pub minimal_discriminant: String,
    pub map_to_minimal: MapJson,
    pub conductor: String,
    pub additive_primes: Vec<String>,
    pub locals: Vec<LocalJson>,
}

impl MinimalJson {
    pub fn new(curve: &WeierstrassModel, g: &GlobalReduction) -> Self {
        MinimalJson {
            curve: CurveJson::from_model(curve),
            discriminant: int_str(curve.discriminant()),
            j_invariant: rat_str(curve.j_invariant()),
            minimal_model: CurveJson::from_model(&g.minimal_model),
            minimal_discriminant: int_str(g.minimal_model.discriminant()),
            map_to_minimal: MapJson::from_map(&g.map_to_minimal),
            conductor: int_str(&g.conductor()),
            additive_primes: primes_json(&g.additive_primes),
            locals: g.locals.iter().map(LocalJson::from_local).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateJson {
    pub curve: CurveJson,
    pub minimal_model: CurveJson,
    pub local: LocalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceJson {
    pub p: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableJson {
    pub curve: CurveJson,
    pub point: PointJson,
    pub minimal_point: PointJson,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub verdict: bool,
    pub evidence: Vec<EvidenceJson>,
}

fn evidence_json(e: &[PrimeEvidence]) -> Vec<EvidenceJson> {
    e.iter()
        .map(|e| EvidenceJson {
            p: int_str(&e.p),
            status: e.status.as_str().to_string(),
        })
        .collect()
}

fn evidence_from_json(e: &[EvidenceJson]) -> Result<Vec<PrimeEvidence>> {
    e.iter()
        .map(|e| {
            let status: PrimeStatus = e
                .status
                .parse()
                .map_err(|_| CliError::usage(format!("evidence.status: unknown status {:?}", e.status)))?;
            Ok(PrimeEvidence {
                p: parse_int("evidence.p", &e.p)?,
                status,
            })
        })
        .collect()
}

impl StableJson {
    pub fn from_report(r: &StableReport) -> Self {
        StableJson {
            curve: CurveJson::from_model(&r.curve),
            point: PointJson::from_point(&r.point),
            minimal_point: PointJson::from_point(&r.minimal_point),
            s: primes_json(&r.s),
            verdict: r.verdict,
            evidence: evidence_json(&r.evidence),
        }
    }

    pub fn to_report(&self) -> Result<StableReport> {
        Ok(StableReport {
            curve: self.curve.to_model()?,
            point: self.point.to_point()?,
            minimal_point: self.minimal_point.to_point()?,
            s: primes_from_json(&self.s)?,
            verdict: self.verdict,
            evidence: evidence_from_json(&self.evidence)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableScanJson {
    pub curve: CurveJson,
    pub minimal_model: CurveJson,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "H")]
    pub h: String,
    pub stable_points: Vec<PointJson>,
    pub reports: Vec<StableJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub curve: CurveJson,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "H")]
    pub h: String,
    pub points: Vec<PointJson>,
}

impl SearchJson {
    pub fn new(curve: &WeierstrassModel, s: &PrimeSet, h: u64, found: &[CurvePoint]) -> Self {
        SearchJson {
            curve: CurveJson::from_model(curve),
            s: primes_json(s),
            h: h.to_string(),
            points: points(found),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinJson {
    pub a: String,
    pub b: String,
}

impl EisensteinJson {
    pub fn from_eisenstein(z: &Eisenstein) -> Self {
        EisensteinJson {
            a: rat_str(&z.a),
            b: rat_str(&z.b),
        }
    }

    pub fn to_eisenstein(&self) -> Result<Eisenstein> {
        Ok(Eisenstein::new(parse_rational("a", &self.a)?, parse_rational("b", &self.b)?))
    }
}

pub type PlanePointJson = [EisensteinJson; 3];

pub fn plane_point_json(p: &PlanePoint) -> PlanePointJson {
    p.coords().clone().map(|c| EisensteinJson::from_eisenstein(&c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub point: PlanePointJson,
    pub display: String,
    pub local_hessian: EisensteinJson,
    pub ordinary: bool,
}

impl NodeJson {
    pub fn from_node(n: &Node) -> Self {
        NodeJson {
            point: plane_point_json(&n.point),
            display: n.point.to_string(),
            local_hessian: EisensteinJson::from_eisenstein(&n.local_hessian),
            ordinary: n.is_ordinary(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularFiberJson {
    pub lambda: EisensteinJson,
    pub mu: EisensteinJson,
    pub t: Option<EisensteinJson>,
    pub nodes: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HesseJson {
    pub singular_fibers: Vec<SingularFiberJson>,
    pub base_points: Vec<PlanePointJson>,
    pub origin: PlanePointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HesseFiberJson {
    pub lambda: String,
    pub mu: String,
    pub singular: bool,
    pub model: Option<CurveJson>,
    pub j_invariant: Option<String>,
    /// Images of the rational base points on `model`.
    pub base_point_images: Vec<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerJson {
    pub x1: String,
    pub x2: String,
    pub z: String,
}

impl KummerJson {
    pub fn from_kummer(k: &KummerPoint) -> Self {
        KummerJson {
            x1: rat_str(&k.x1),
            x2: rat_str(&k.x2),
            z: rat_str(&k.z),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEntryJson {
    pub t: String,
    pub model: CurveJson,
    pub points: Vec<PointJson>,
    pub kummer: Vec<KummerJson>,
}

impl TwistEntryJson {
    pub fn from_entry(e: &TwistScanEntry) -> Self {
        TwistEntryJson {
            t: int_str(&e.t),
            model: CurveJson::from_model(&e.model),
            points: points(&e.points),
            kummer: e.kummer.iter().map(KummerJson::from_kummer).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicJson {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
}

impl CubicJson {
    pub fn from_cubic(f: &ShortCubic) -> Self {
        CubicJson {
            a: int_str(&f.a),
            b: int_str(&f.b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistScanJson {
    pub f: CubicJson,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "H")]
    pub h: String,
    pub entries: Vec<TwistEntryJson>,
}

impl TwistScanJson {
    pub fn new(f: &ShortCubic, s: &PrimeSet, h: u64, entries: &[TwistScanEntry]) -> Self {
        TwistScanJson {
            f: CubicJson::from_cubic(f),
            s: primes_json(s),
            h: h.to_string(),
            entries: entries.iter().map(TwistEntryJson::from_entry).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPointJson {
    pub point: PointJson,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    pub curve: CurveJson,
    pub minimal_model: CurveJson,
    pub structure: String,
    pub order: u32,
    pub order_cap: u32,
    pub points: Vec<TorsionPointJson>,
}

impl TorsionJson {
    pub fn new(curve: &WeierstrassModel, g: &TorsionGroup) -> Self {
        TorsionJson {
            curve: CurveJson::from_model(curve),
            minimal_model: CurveJson::from_model(&g.model),
            structure: g.structure.to_string(),
            order: g.order(),
            order_cap: g.order_cap,
            points: g
                .points
                .iter()
                .map(|p| TorsionPointJson {
                    point: PointJson::from_point(&p.point),
                    order: p.order,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAuditJson {
    pub point: PointJson,
    pub order: u32,
    pub integral: bool,
    pub stable: bool,
    pub anomaly: bool,
    pub evidence: Vec<EvidenceJson>,
}

impl PointAuditJson {
    pub fn from_audit(a: &PointAudit) -> Self {
        PointAuditJson {
            point: PointJson::from_point(&a.point),
            order: a.order,
            integral: a.integral,
            stable: a.stable,
            anomaly: a.anomaly,
            evidence: evidence_json(&a.evidence),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveAuditJson {
    pub curve: CurveJson,
    pub structure: String,
    pub points: Vec<PointAuditJson>,
}

impl CurveAuditJson {
    pub fn from_audit(a: &CurveAudit) -> Self {
        CurveAuditJson {
            curve: CurveJson::from_model(&a.model),
            structure: a.structure.to_string(),
            points: a.points.iter().map(PointAuditJson::from_audit).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditJson {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub curves: Vec<CurveAuditJson>,
    pub points_audited: usize,
    pub anomalies: usize,
}

impl AuditJson {
    pub fn new(s: &PrimeSet, audits: &[CurveAudit]) -> Self {
        AuditJson {
            s: primes_json(s),
            curves: audits.iter().map(CurveAuditJson::from_audit).collect(),
            points_audited: audits.iter().map(|a| a.points.len()).sum(),
            anomalies: audits.iter().map(CurveAudit::anomalies).sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdJson {
    pub n: String,
    pub d: String,
    pub g: u32,
    #[serde(rename = "C")]
    pub c: String,
    /// `[p, k]` when `n = p^k`.
    pub prime_power: Option<[String; 2]>,
    pub satisfied: bool,
}

impl ThresholdJson {
    pub fn from_verdict(v: &ThresholdVerdict) -> Self {
        ThresholdJson {
            n: v.n.to_string(),
            d: v.d.to_string(),
            g: v.g,
            c: int_str(&v.c),
            prime_power: v.prime_power.map(|(p, k)| [p.to_string(), k.to_string()]),
            satisfied: v.satisfied,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryJson {
    pub d: String,
    pub g: u32,
    pub p: String,
    #[serde(rename = "C")]
    pub c: String,
    pub exponent: String,
    pub weil_factor: String,
    pub kernel_factor: String,
    #[serde(rename = "N")]
    pub n: String,
}

impl CorollaryJson {
    pub fn new(d: u64, g: u32, p: u64, b: &CorollaryBound) -> Self {
        CorollaryJson {
            d: d.to_string(),
            g,
            p: p.to_string(),
            c: int_str(&b.c),
            exponent: b.exponent.to_string(),
            weil_factor: int_str(&b.weil_factor),
            kernel_factor: int_str(&b.kernel_factor),
            n: int_str(&b.total),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// A polynomial in sparse form: variable names and nonzero terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MultiPoly<BigRational>) -> Self {
        PolyJson {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exponents: m.0.clone(),
                    coeff: rat_str(c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly<BigRational>> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.exponents.len() != self.vars.len() {
                return Err(CliError::usage("terms.exponents: length differs from vars"));
            }
            terms.push((Monomial(t.exponents.clone()), parse_rational("terms.coeff", &t.coeff)?));
        }
        Ok(MultiPoly::from_terms_with(self.vars.clone(), terms))
    }
}

/// `{"coords": [...], "fibers": {"t": [[coords...], ...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
    pub fibers: BTreeMap<String, Vec<Vec<String>>>,
}

impl DatasetJson {
    pub fn from_set(set: &FiberedPointSet) -> Self {
        DatasetJson {
            coords: Some(set.coord_names().to_vec()),
            fibers: set
                .fibers()
                .map(|(t, pts)| (rat_str(t), pts.iter().map(|p| p.iter().map(rat_str).collect()).collect()))
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<FiberedPointSet> {
        let dim = self
            .fibers
            .values()
            .flatten()
            .map(Vec::len)
            .next()
            .or_else(|| self.coords.as_ref().map(Vec::len))
            .unwrap_or(1);
        let mut set = match &self.coords {
            Some(names) => FiberedPointSet::with_names(names.clone()),
            None => FiberedPointSet::new(dim),
        }
        .map_err(|e| CliError::usage(format!("dataset.coords: {e}")))?;
        for (t, pts) in &self.fibers {
            let tq = parse_rational("dataset.fibers key", t)?;
            if pts.is_empty() {
                return Err(CliError::usage(format!("dataset.fibers[{t}]: empty fiber")));
            }
            for p in pts {
                let coords = p
                    .iter()
                    .map(|c| parse_rational(&format!("dataset.fibers[{t}]"), c))
                    .collect::<Result<Vec<_>>>()?;
                set.insert(tq.clone(), coords)
                    .map_err(|e| CliError::usage(format!("dataset.fibers[{t}]: {e}")))?;
            }
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCaseJson {
    pub slots: usize,
    pub fibers: Vec<String>,
    pub max_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub excluded: Vec<String>,
    pub cases: Vec<DescentCaseJson>,
}

impl BoundJson {
    pub fn from_bound(b: &Lemma1Bound) -> Self {
        let case = |c: &DescentCase| DescentCaseJson {
            slots: c.slots,
            fibers: c.fibers.iter().map(rat_str).collect(),
            max_count: c.max_count,
        };
        BoundJson {
            n: b.n_bound,
            excluded: b.excluded.iter().map(rat_str).collect(),
            cases: b.cases.iter().map(case).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationJson {
    pub n: usize,
    #[serde(rename = "D")]
    pub degree: u32,
    pub num_fibers: usize,
    pub num_points: usize,
    pub num_tuples: usize,
    pub num_monomials: usize,
    pub rank: usize,
    pub correlated: bool,
    pub summary: String,
    pub witnesses: Vec<PolyJson>,
    pub bound: Option<BoundJson>,
}

impl CorrelationJson {
    pub fn from_report(r: &CorrelationReport) -> Self {
        CorrelationJson {
            n: r.n,
            degree: r.degree,
            num_fibers: r.num_fibers,
            num_points: r.num_points,
            num_tuples: r.num_tuples,
            num_monomials: r.fit.num_monomials,
            rank: r.fit.rank,
            correlated: r.correlated(),
            summary: r.summary(),
            witnesses: r.fit.witnesses.iter().map(PolyJson::from_poly).collect(),
            bound: r.bound.as_ref().map(BoundJson::from_bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeJson {
    pub minimal: MinimalJson,
    pub torsion: TorsionJson,
    pub stable: StableScanJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecs_core::arith::rat;
    use ecs_core::stable::is_stably_integral;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        let s = serde_json::to_string(x).unwrap();
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, x);
    }

    #[test]
    fn stable_report_round_trips() {
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 50]).unwrap();
        let r = is_stably_integral(&e, &CurvePoint::from_ints(-1, 7), &PrimeSet::from_u64(&[2, 3]).unwrap()).unwrap();
        let j = StableJson::from_report(&r);
        round_trip(&j);
        assert_eq!(j.to_report().unwrap(), r);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#""S":["2","3"]"#), "{text}");
        assert!(text.contains(r#""point":{"x":"-1","y":"7"}"#), "{text}");
    }

    #[test]
    fn points_and_locals() {
        round_trip(&PointJson::Infinity);
        assert_eq!(serde_json::to_string(&PointJson::Infinity).unwrap(), r#""O""#);
        let p = PointJson::from_point(&CurvePoint::affine(rat(-3, 4), rat(5, 8)));
        round_trip(&p);
        assert!(serde_json::from_str::<PointJson>(r#""P""#).is_err());
        let g = ecs_core::reduction::global_reduction(&WeierstrassModel::from_i64([0, 1, 0, 0, 7]).unwrap()).unwrap();
        for l in &g.locals {
            let j = LocalJson::from_local(l);
            round_trip(&j);
            assert_eq!(&j.to_local().unwrap(), l);
        }
        let v = serde_json::to_value(LocalJson::from_local(&g.locals[0])).unwrap();
        assert!(v["v_delta"].is_number());
        assert!(v["p"].is_string());
    }

    #[test]
    fn polynomials_and_datasets() {
        let p = MultiPoly::from_terms(&["t", "x"], [(vec![1, 0], rat(3, 2)), (vec![0, 2], rat(-1, 1))]);
        let j = PolyJson::from_poly(&p);
        round_trip(&j);
        assert_eq!(j.to_poly().unwrap(), p);
        let mut set = FiberedPointSet::new(2).unwrap();
        set.insert(rat(1, 2), vec![rat(1, 1), rat(-2, 3)]).unwrap();
        set.insert(rat(5, 1), vec![rat(0, 1), rat(0, 1)]).unwrap();
        let d = DatasetJson::from_set(&set);
        round_trip(&d);
        assert_eq!(d.to_set().unwrap(), set);
        let bad: DatasetJson = serde_json::from_str(r#"{"fibers":{"1":[["1","2"],["3"]]}}"#).unwrap();
        assert!(bad.to_set().is_err());
    }
}
