//! The `ecs` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ecs_core::arith::{Eisenstein, PrimeSet};
use ecs_core::correlation::FiberedPointSet;
use ecs_core::curve::WeierstrassModel;
use ecs_core::hesse::{base_points, fiber_at, fiber_nodes, fiber_to_weierstrass, find_singular_fibers, origin};
use ecs_core::reduction::{global_reduction, minimalize, tate_local};
use ecs_core::stable::is_stably_integral;
use ecs_core::torsion::{corollary_bound, stable_integrality_threshold, symplectic_group_order, torsion_subgroup};
use ecs_core::twist::{is_squarefree, ShortCubic, TwistFamily};
use ecs_core::BigInt;
use serde::Serialize;

use crate::corpus::{generate_corpus, CorpusFile, CorpusKind, CorpusSpec};
use crate::error::{CliError, Result};
use crate::parse::{parse_cubic, parse_curve, parse_int, parse_point, parse_primes, parse_range, parse_rational};
use crate::scan::Scanner;
use crate::schema::*;

/// Environment variable that overrides `--jobs`.
pub const JOBS_ENV: &str = "ECS_JOBS";

#[derive(Debug, Parser)]
#[command(name = "ecs", version, about = "Exact computations on elliptic curves over Q")]
pub struct Cli {
    /// Worker threads for scans (overridden by ECS_JOBS).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a CSV flattening of the report.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CurveArg {
    /// `{"a":[a1,a2,a3,a4,a6]}` or an equation such as `y^2=x^3+x^2+7`.
    #[arg(long)]
    pub curve: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal model, local data, torsion and stable points of one curve.
    Analyze {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "S", visible_alias = "s", default_value = "2,3")]
        s: String,
        #[arg(long = "H", visible_alias = "h", default_value_t = 1000)]
        h: u64,
    },
    /// Global minimal model and local reduction data.
    Minimal {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Tate's algorithm at one prime.
    Tate {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        p: String,
    },
    /// Stable S-integrality of one point, or of every point up to a height.
    Stable {
        #[command(flatten)]
        curve: CurveArg,
        /// `{"x":..,"y":..}`; without it all points of height at most H are
        /// classified.
        #[arg(long)]
        point: Option<String>,
        #[arg(long = "S", visible_alias = "s", default_value = "2,3")]
        s: String,
        #[arg(long = "H", visible_alias = "h", default_value_t = 1000)]
        h: u64,
    },
    /// S-integral points up to a height bound.
    Search {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "S", visible_alias = "s", default_value = "")]
        s: String,
        #[arg(long = "H", visible_alias = "h", default_value_t = 1000)]
        h: u64,
    },
    /// The Hesse pencil λ(X³+Y³+Z³) = 3μXYZ.
    Hesse {
        /// Report the singular members with their nodes.
        #[arg(long)]
        singular_fibers: bool,
        /// Convert the member [lambda : mu] to Weierstrass form.
        #[arg(long, requires = "mu", conflicts_with = "singular_fibers")]
        lambda: Option<String>,
        #[arg(long, requires = "lambda")]
        mu: Option<String>,
    },
    /// Quadratic twists t·y² = f(x) over squarefree t.
    TwistScan {
        /// `x^3+Ax+B` or `A,B`.
        #[arg(long)]
        f: String,
        /// `lo..hi` (inclusive) or a list; non-squarefree values are skipped.
        #[arg(long)]
        t_range: String,
        #[arg(long = "S", visible_alias = "s", default_value = "2,3")]
        s: String,
        #[arg(long = "H", visible_alias = "h", default_value_t = 1000)]
        h: u64,
    },
    /// Torsion subgroups, corpus audits and the integrality threshold.
    Torsion(TorsionArgs),
    /// Search for a low-degree hypersurface through fibered n-tuples.
    Correlate(CorrelateArgs),
    /// Generate a seeded curve corpus.
    Corpus {
        #[arg(long, default_value = "short")]
        kind: String,
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[arg(long, default_value_t = 50)]
        bound: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Torsion order for `--kind tate`.
        #[arg(long)]
        order: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    #[arg(long, group = "mode")]
    pub curve: Option<String>,
    /// Audit every curve of a corpus file.
    #[arg(long, group = "mode")]
    pub corpus: Option<PathBuf>,
    /// Torsion order for the threshold check (with --d and --g).
    #[arg(long, group = "mode")]
    pub n: Option<u64>,
    /// Prime for the explicit bound (with --d and --g).
    #[arg(long, group = "mode")]
    pub p: Option<u64>,
    /// Order of Sp_{2g}(F_5) for this g.
    #[arg(long, group = "mode")]
    pub symplectic: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
    #[arg(long, default_value_t = 1)]
    pub g: u32,
    #[arg(long = "S", visible_alias = "s", default_value = "2,3")]
    pub s: String,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Dataset JSON: `{"coords": [...], "fibers": {"t": [[...], ...]}}`.
    #[arg(long, conflicts_with = "f")]
    pub dataset: Option<PathBuf>,
    /// Build the dataset from a twist scan of this cubic.
    #[arg(long, requires = "t_range")]
    pub f: Option<String>,
    #[arg(long)]
    pub t_range: Option<String>,
    /// Use the Kummer points (x1, x2, z) of the scan instead of (x, y).
    #[arg(long, requires = "f")]
    pub kummer: bool,
    #[arg(long = "S", visible_alias = "s", default_value = "2,3")]
    pub s: String,
    #[arg(long = "H", visible_alias = "h", default_value_t = 1000)]
    pub h: u64,
    /// Tuple arity.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Degree bound.
    #[arg(long = "D", visible_alias = "degree", default_value_t = 2)]
    pub d: u32,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn resolve_jobs(flag: Option<usize>) -> Result<usize> {
    if let Ok(v) = std::env::var(JOBS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{JOBS_ENV}: expected a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(CliError::usage(format!("{JOBS_ENV}: must be positive")));
        }
        return Ok(n);
    }
    match flag {
        Some(0) => Err(CliError::usage("jobs: must be positive")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// A CSV flattening: one row per atomic fact.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let io = |source: std::io::Error| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut w = csv::Writer::from_path(path).map_err(|e| io(e.into()))?;
        w.write_record(&self.header).map_err(|e| io(e.into()))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| io(e.into()))?;
        }
        w.flush().map_err(io)
    }
}

struct Output {
    json: String,
    table: Table,
}

fn output<T: Serialize>(report: &T, table: Table) -> Output {
    let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
    json.push('\n');
    Output { json, table }
}

fn execute(cli: &Cli) -> Result<()> {
    let jobs = resolve_jobs(cli.jobs)?;
    let scanner = Scanner::new(jobs)?;
    let out = dispatch(&cli.command, &scanner)?;
    match &cli.out {
        Some(path) => fs::write(path, &out.json).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.json.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    if let Some(path) = &cli.csv {
        out.table.write(path)?;
    }
    Ok(())
}

fn stable_primes(s: &str) -> Result<PrimeSet> {
    let set = parse_primes(s)?;
    if !set.contains(&BigInt::from(2)) || !set.contains(&BigInt::from(3)) {
        return Err(CliError::usage(format!("S: must contain 2 and 3, got {{{set}}}")));
    }
    Ok(set)
}

fn curve_cell(c: &CurveJson) -> String {
    format!("[{}]", c.a.join(","))
}

fn point_cells(p: &PointJson) -> [String; 2] {
    match p {
        PointJson::Infinity => ["O".into(), String::new()],
        PointJson::Affine { x, y } => [x.clone(), y.clone()],
    }
}

fn locals_table(locals: &[LocalJson]) -> Table {
    let mut t = Table::new(&["p", "kodaira", "class", "v_delta", "v_c4", "tamagawa", "conductor_exponent"]);
    for l in locals {
        t.push(vec![
            l.p.clone(),
            l.kodaira.clone(),
            l.class.clone(),
            l.v_delta.to_string(),
            l.v_c4.map_or(String::new(), |v| v.to_string()),
            l.tamagawa.to_string(),
            l.conductor_exponent.to_string(),
        ]);
    }
    t
}

fn stable_table(reports: &[StableJson]) -> Table {
    let mut t = Table::new(&["x", "y", "verdict", "p", "status"]);
    for r in reports {
        let [x, y] = point_cells(&r.minimal_point);
        if r.evidence.is_empty() {
            t.push(vec![x.clone(), y.clone(), r.verdict.to_string(), String::new(), String::new()]);
        }
        for e in &r.evidence {
            t.push(vec![x.clone(), y.clone(), r.verdict.to_string(), e.p.clone(), e.status.clone()]);
        }
    }
    t
}

fn points_table(points: &[PointJson]) -> Table {
    let mut t = Table::new(&["x", "y"]);
    for p in points {
        t.push(point_cells(p).to_vec());
    }
    t
}

fn stable_scan(scanner: &Scanner, model: &WeierstrassModel, s: &PrimeSet, h: u64) -> Result<StableScanJson> {
    let reports = scanner.stable_scan(model, s, h)?;
    let minimal = reports
        .first()
        .map(|r| r.curve.clone())
        .map_or_else(|| global_reduction(model).map(|g| g.minimal_model), Ok)?;
    Ok(StableScanJson {
        curve: CurveJson::from_model(model),
        minimal_model: CurveJson::from_model(&minimal),
        s: s.iter().map(int_str).collect(),
        h: h.to_string(),
        stable_points: reports
            .iter()
            .filter(|r| r.verdict)
            .map(|r| PointJson::from_point(&r.minimal_point))
            .collect(),
        reports: reports.iter().map(StableJson::from_report).collect(),
    })
}

fn dispatch(cmd: &Command, scanner: &Scanner) -> Result<Output> {
    match cmd {
        Command::Analyze { curve, s, h } => {
            let model = parse_curve(&curve.curve)?;
            let s = stable_primes(s)?;
            let g = global_reduction(&model)?;
            let report = AnalyzeJson {
                minimal: MinimalJson::new(&model, &g),
                torsion: TorsionJson::new(&model, &torsion_subgroup(&model)?),
                stable: stable_scan(scanner, &model, &s, *h)?,
            };
            let table = locals_table(&report.minimal.locals);
            Ok(output(&report, table))
        }
        Command::Minimal { curve } => {
            let model = parse_curve(&curve.curve)?;
            let report = MinimalJson::new(&model, &global_reduction(&model)?);
            let table = locals_table(&report.locals);
            Ok(output(&report, table))
        }
        Command::Tate { curve, p } => {
            let model = parse_curve(&curve.curve)?;
            let p = parse_int("p", p)?;
            let (minimal, _) = minimalize(&model)?;
            let local = LocalJson::from_local(&tate_local(&minimal, &p)?);
            let table = locals_table(std::slice::from_ref(&local));
            let report = TateJson {
                curve: CurveJson::from_model(&model),
                minimal_model: CurveJson::from_model(&minimal),
                local,
            };
            Ok(output(&report, table))
        }
        Command::Stable { curve, point, s, h } => {
            let model = parse_curve(&curve.curve)?;
            let s = stable_primes(s)?;
            match point {
                Some(p) => {
                    let report = StableJson::from_report(&is_stably_integral(&model, &parse_point(p)?, &s)?);
                    let table = stable_table(std::slice::from_ref(&report));
                    Ok(output(&report, table))
                }
                None => {
                    let report = stable_scan(scanner, &model, &s, *h)?;
                    let table = stable_table(&report.reports);
                    Ok(output(&report, table))
                }
            }
        }
        Command::Search { curve, s, h } => {
            let model = parse_curve(&curve.curve)?;
            let s = parse_primes(s)?;
            let report = SearchJson::new(&model, &s, *h, &scanner.search(&model, &s, *h));
            let table = points_table(&report.points);
            Ok(output(&report, table))
        }
        Command::Hesse {
            singular_fibers,
            lambda,
            mu,
        } => match (lambda, mu) {
            (Some(l), Some(m)) => hesse_fiber(l, m),
            _ if *singular_fibers => hesse_singular(),
            _ => Err(CliError::usage("hesse: pass --singular-fibers or --lambda and --mu")),
        },
        Command::TwistScan { f, t_range, s, h } => {
            let f = parse_cubic(f)?;
            let s = stable_primes(s)?;
            let family = family(&f, t_range)?;
            let entries = scanner.twist_scan(&family, &s, *h)?;
            let report = TwistScanJson::new(&f, &s, *h, &entries);
            Ok(output(&report, twist_table(&report)))
        }
        Command::Torsion(args) => torsion(args, scanner),
        Command::Correlate(args) => correlate(args, scanner),
        Command::Corpus {
            kind,
            size,
            bound,
            seed,
            order,
        } => {
            let kind: CorpusKind = kind.parse()?;
            if order.is_some() && kind != CorpusKind::Tate {
                return Err(CliError::usage("order: only meaningful with --kind tate"));
            }
            let spec = CorpusSpec {
                kind,
                size: *size,
                bound: *bound,
                seed: *seed,
                order: *order,
            };
            let corpus = generate_corpus(&spec)?;
            let mut t = Table::new(&["index", "a1", "a2", "a3", "a4", "a6", "torsion_order"]);
            for (i, e) in corpus.entries.iter().enumerate() {
                let mut row = vec![i.to_string()];
                row.extend(e.curve.a.iter().cloned());
                row.push(e.torsion_order.map_or(String::new(), |n| n.to_string()));
                t.push(row);
            }
            Ok(output(&corpus, t))
        }
    }
}

fn family(f: &ShortCubic, t_range: &str) -> Result<TwistFamily> {
    let mut ts = Vec::new();
    for t in parse_range("t-range", t_range)? {
        let t = BigInt::from(t);
        if t != BigInt::from(0) && is_squarefree(&t)? {
            ts.push(t);
        }
    }
    if ts.is_empty() {
        return Err(CliError::usage(format!("t-range: no squarefree values in {t_range:?}")));
    }
    Ok(TwistFamily::new(f.clone(), ts)?)
}

fn twist_table(report: &TwistScanJson) -> Table {
    let mut t = Table::new(&["t", "kind", "x", "y", "x1", "x2", "z"]);
    for e in &report.entries {
        for p in &e.points {
            let [x, y] = point_cells(p);
            t.push(vec![e.t.clone(), "point".into(), x, y, String::new(), String::new(), String::new()]);
        }
        for k in &e.kummer {
            t.push(vec![
                e.t.clone(),
                "kummer".into(),
                String::new(),
                String::new(),
                k.x1.clone(),
                k.x2.clone(),
                k.z.clone(),
            ]);
        }
    }
    t
}

fn hesse_singular() -> Result<Output> {
    let mut fibers = Vec::new();
    let mut t = Table::new(&["lambda", "mu", "node", "ordinary"]);
    for (l, m) in find_singular_fibers() {
        let fiber = fiber_at(l.clone(), m.clone())?;
        let nodes: Vec<NodeJson> = fiber_nodes(&fiber)?.iter().map(NodeJson::from_node).collect();
        for n in &nodes {
            t.push(vec![l.to_string(), m.to_string(), n.display.clone(), n.ordinary.to_string()]);
        }
        fibers.push(SingularFiberJson {
            lambda: EisensteinJson::from_eisenstein(&l),
            mu: EisensteinJson::from_eisenstein(&m),
            t: fiber.t().as_ref().map(EisensteinJson::from_eisenstein),
            nodes,
        });
    }
    let report = HesseJson {
        singular_fibers: fibers,
        base_points: base_points().iter().map(plane_point_json).collect(),
        origin: plane_point_json(&origin()),
    };
    Ok(output(&report, t))
}

fn hesse_fiber(l: &str, m: &str) -> Result<Output> {
    let (lq, mq) = (parse_rational("lambda", l)?, parse_rational("mu", m)?);
    let fiber = fiber_at(Eisenstein::from_rational(lq.clone()), Eisenstein::from_rational(mq.clone()))?;
    let mut t = Table::new(&["base_point", "x", "y"]);
    let report = if fiber.is_singular() {
        HesseFiberJson {
            lambda: rat_str(&lq),
            mu: rat_str(&mq),
            singular: true,
            model: None,
            j_invariant: None,
            base_point_images: Vec::new(),
        }
    } else {
        let (model, map) = fiber_to_weierstrass(&fiber)?;
        let mut images = Vec::new();
        for b in base_points().iter().filter(|b| b.is_rational()) {
            let img = PointJson::from_point(&map.map_point(b)?);
            let [x, y] = point_cells(&img);
            t.push(vec![b.to_string(), x, y]);
            images.push(img);
        }
        HesseFiberJson {
            lambda: rat_str(&lq),
            mu: rat_str(&mq),
            singular: false,
            model: Some(CurveJson::from_model(&model)),
            j_invariant: Some(rat_str(model.j_invariant())),
            base_point_images: images,
        }
    };
    Ok(output(&report, t))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{what}: {e}")))
}

fn torsion(args: &TorsionArgs, scanner: &Scanner) -> Result<Output> {
    if let Some(c) = &args.curve {
        let model = parse_curve(c)?;
        let report = TorsionJson::new(&model, &torsion_subgroup(&model)?);
        let mut t = Table::new(&["x", "y", "order"]);
        for p in &report.points {
            let mut row = point_cells(&p.point).to_vec();
            row.push(p.order.to_string());
            t.push(row);
        }
        return Ok(output(&report, t));
    }
    if let Some(path) = &args.corpus {
        let s = stable_primes(&args.s)?;
        let corpus: CorpusFile = read_json(path, "corpus")?;
        let models = corpus.models()?;
        let report = AuditJson::new(&s, &scanner.audit(&models, &s)?);
        let mut t = Table::new(&["curve", "x", "y", "order", "integral", "stable", "anomaly"]);
        for c in &report.curves {
            for p in &c.points {
                let [x, y] = point_cells(&p.point);
                t.push(vec![
                    curve_cell(&c.curve),
                    x,
                    y,
                    p.order.to_string(),
                    p.integral.to_string(),
                    p.stable.to_string(),
                    p.anomaly.to_string(),
                ]);
            }
        }
        return Ok(output(&report, t));
    }
    if let Some(n) = args.n {
        let v = stable_integrality_threshold(n, args.d, args.g)?;
        let report = ThresholdJson::from_verdict(&v);
        let mut t = Table::new(&["n", "d", "g", "C", "satisfied"]);
        t.push(vec![
            report.n.clone(),
            report.d.clone(),
            report.g.to_string(),
            report.c.clone(),
            report.satisfied.to_string(),
        ]);
        return Ok(output(&report, t));
    }
    if let Some(p) = args.p {
        let b = corollary_bound(args.d, args.g, p)?;
        let report = CorollaryJson::new(args.d, args.g, p, &b);
        let mut t = Table::new(&["d", "g", "p", "C", "N"]);
        t.push(vec![
            report.d.clone(),
            report.g.to_string(),
            report.p.clone(),
            report.c.clone(),
            report.n.clone(),
        ]);
        return Ok(output(&report, t));
    }
    if let Some(g) = args.symplectic {
        let order = symplectic_group_order(g)?;
        let report = serde_json::json!({ "g": g, "q": "5", "order": int_str(&order) });
        let mut t = Table::new(&["g", "q", "order"]);
        t.push(vec![g.to_string(), "5".into(), int_str(&order)]);
        return Ok(output(&report, t));
    }
    Err(CliError::usage(
        "torsion: pass one of --curve, --corpus, --n, --p, --symplectic",
    ))
}

fn correlate(args: &CorrelateArgs, scanner: &Scanner) -> Result<Output> {
    let points = match (&args.dataset, &args.f) {
        (Some(path), None) => read_json::<DatasetJson>(path, "dataset")?.to_set()?,
        (None, Some(f)) => {
            let f = parse_cubic(f)?;
            let s = stable_primes(&args.s)?;
            let range = args.t_range.as_deref().expect("required by clap");
            let entries = scanner.twist_scan(&family(&f, range)?, &s, args.h)?;
            if args.kummer {
                FiberedPointSet::kummer_from_twist_scan(&entries)
            } else {
                FiberedPointSet::from_twist_scan(&entries)
            }
        }
        _ => return Err(CliError::usage("correlate: pass --dataset or --f with --t-range")),
    };
    if args.n == 0 {
        return Err(CliError::usage("n: must be positive"));
    }
    if args.d == 0 {
        return Err(CliError::usage("D: must be positive"));
    }
    let report = CorrelationJson::from_report(&scanner.correlate(&points, args.n, args.d)?);
    let mut t = Table::new(&["t", "count"]);
    for (fiber, pts) in points.fibers() {
        t.push(vec![rat_str(fiber), pts.len().to_string()]);
    }
    Ok(output(&report, t))
}
