//! Seeded curve corpora.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ecs_core::arith::Eisenstein;
use ecs_core::curve::{CurvePoint, WeierstrassModel};
use ecs_core::hesse::{base_points, fiber_at, fiber_to_weierstrass};
use ecs_core::torsion::{point_order, tate_normal_form, ORDER_CAP};
use ecs_core::twist::{is_squarefree, twist_curve, ShortCubic};
use ecs_core::{BigInt, BigRational, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::schema::{int_str, rat_str, CurveJson, PointJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    /// `y² = x³ + Ax + B` with `|A|, |B| ≤ bound`.
    Short,
    /// Tate normal forms `E(b, c)` with a certified torsion point at `(0, 0)`.
    Tate,
    /// Twists `t·y² = f(x)` of one random cubic by squarefree `t`.
    Twist,
    /// Smooth rational members of the Hesse pencil.
    Hesse,
}

impl CorpusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CorpusKind::Short => "short",
            CorpusKind::Tate => "tate",
            CorpusKind::Twist => "twist",
            CorpusKind::Hesse => "hesse",
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "short" => Ok(CorpusKind::Short),
            "tate" => Ok(CorpusKind::Tate),
            "twist" => Ok(CorpusKind::Twist),
            "hesse" => Ok(CorpusKind::Hesse),
            _ => Err(CliError::usage(format!(
                "kind: expected one of short, tate, twist, hesse, got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub size: usize,
    /// Coefficient bound; for Tate families the bound on numerator and
    /// denominator of the parameter.
    pub bound: u64,
    pub seed: u64,
    /// Torsion order for Tate families; `None` cycles through 3..=10.
    pub order: Option<u32>,
}

impl CorpusSpec {
    pub fn new(kind: CorpusKind, size: usize, bound: u64, seed: u64) -> Self {
        CorpusSpec {
            kind,
            size,
            bound,
            seed,
            order: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub curve: CurveJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_point: Option<PointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_order: Option<u32>,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFile {
    pub kind: CorpusKind,
    pub seed: String,
    pub size: usize,
    pub bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub entries: Vec<CorpusEntry>,
}

impl CorpusFile {
    pub fn models(&self) -> Result<Vec<WeierstrassModel>> {
        self.entries.iter().map(|e| e.curve.to_model()).collect()
    }
}

fn entry(model: &WeierstrassModel, torsion: Option<(&CurvePoint, u32)>, params: &[(&str, String)]) -> CorpusEntry {
    CorpusEntry {
        curve: CurveJson::from_model(model),
        torsion_point: torsion.map(|(p, _)| PointJson::from_point(p)),
        torsion_order: torsion.map(|(_, n)| n),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    }
}

fn signed(rng: &mut ChaCha8Rng, bound: u64) -> i64 {
    let b = bound.min(i64::MAX as u64) as i64;
    rng.gen_range(-b..=b)
}

/// A draw that is discarded (singular curve, degenerate parameter) does not
/// count towards the size; this many draws per requested entry are allowed.
const ATTEMPTS_PER_ENTRY: usize = 200;

pub fn generate_corpus(spec: &CorpusSpec) -> Result<CorpusFile> {
    if spec.bound == 0 && spec.size > 0 {
        return Err(CliError::usage("bound: must be positive"));
    }
    if let Some(n) = spec.order {
        if !(3..=10).contains(&n) && n != 12 {
            return Err(CliError::usage(format!("order: no Tate family of order {n}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut entries = Vec::with_capacity(spec.size);
    let mut attempts = 0;
    let twist_f = if spec.kind == CorpusKind::Twist && spec.size > 0 {
        Some(random_cubic(&mut rng, spec.bound)?)
    } else {
        None
    };
    let mut next_t: i64 = 1;
    while entries.len() < spec.size {
        attempts += 1;
        if attempts > ATTEMPTS_PER_ENTRY * (spec.size + 1) {
            return Err(Error::Domain("corpus generator made no progress").into());
        }
        let made = match spec.kind {
            CorpusKind::Short => short_entry(&mut rng, spec.bound),
            CorpusKind::Tate => {
                let order = spec.order.unwrap_or(3 + (entries.len() % 8) as u32);
                tate_entry(&mut rng, spec.bound, order)?
            }
            CorpusKind::Twist => {
                let f = twist_f.as_ref().expect("drawn above");
                let t = BigInt::from(next_t);
                next_t += 1;
                if is_squarefree(&t)? {
                    let tw = twist_curve(f, &t)?;
                    Some(entry(
                        &tw.model,
                        None,
                        &[("A", int_str(&f.a)), ("B", int_str(&f.b)), ("t", int_str(&t))],
                    ))
                } else {
                    None
                }
            }
            CorpusKind::Hesse => hesse_entry(&mut rng, spec.bound)?,
        };
        entries.extend(made);
    }
    Ok(CorpusFile {
        kind: spec.kind,
        seed: spec.seed.to_string(),
        size: spec.size,
        bound: spec.bound.to_string(),
        order: spec.order,
        entries,
    })
}

fn random_cubic(rng: &mut ChaCha8Rng, bound: u64) -> Result<ShortCubic> {
    for _ in 0..ATTEMPTS_PER_ENTRY {
        if let Ok(f) = ShortCubic::from_i64(signed(rng, bound), signed(rng, bound)) {
            return Ok(f);
        }
    }
    Err(Error::Domain("no squarefree cubic within the bound").into())
}

fn short_entry(rng: &mut ChaCha8Rng, bound: u64) -> Option<CorpusEntry> {
    let (a, b) = (signed(rng, bound), signed(rng, bound));
    let model = WeierstrassModel::from_i64([0, 0, 0, a, b]).ok()?;
    Some(entry(&model, None, &[("A", a.to_string()), ("B", b.to_string())]))
}

fn tate_entry(rng: &mut ChaCha8Rng, bound: u64, order: u32) -> Result<Option<CorpusEntry>> {
    let num = signed(rng, bound);
    let den = rng.gen_range(1..=bound.min(i64::MAX as u64) as i64);
    let t = BigRational::new(BigInt::from(num), BigInt::from(den));
    let (model, point) = match tate_normal_form(order, &t) {
        Ok(r) => r,
        Err(Error::SingularCurve | Error::Domain(_) | Error::Precondition(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    // The family only suggests the order; it is recomputed here.
    if point_order(&model, &point, ORDER_CAP) != Some(order) {
        return Ok(None);
    }
    Ok(Some(entry(
        &model,
        Some((&point, order)),
        &[("order", order.to_string()), ("t", rat_str(&t))],
    )))
}

fn hesse_entry(rng: &mut ChaCha8Rng, bound: u64) -> Result<Option<CorpusEntry>> {
    let (l, m) = (signed(rng, bound), signed(rng, bound));
    if l == 0 && m == 0 {
        return Ok(None);
    }
    let fiber = fiber_at(Eisenstein::from_int(l), Eisenstein::from_int(m))?;
    if fiber.is_singular() {
        return Ok(None);
    }
    let (model, map) = fiber_to_weierstrass(&fiber)?;
    let mut torsion = None;
    for b in base_points().iter().filter(|b| b.is_rational()) {
        let p = map.map_point(b)?;
        if !p.is_infinity() {
            if let Some(n) = point_order(&model, &p, ORDER_CAP) {
                torsion = Some((p, n));
                break;
            }
        }
    }
    Ok(Some(entry(
        &model,
        torsion.as_ref().map(|(p, n)| (p, *n)),
        &[("lambda", l.to_string()), ("mu", m.to_string())],
    )))
}
