//! Acceptance suite. Every check prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a
//! readable summary.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ecs::corpus::{generate_corpus, CorpusKind, CorpusSpec};
use ecs_core::arith::linalg::rank;
use ecs_core::arith::{Eisenstein, MultiPoly, PrimeSet};
use ecs_core::correlation::{correlation_report, FiberedPointSet, TupleMatrix};
use ecs_core::curve::{
    apply_model_map, rational_invariants, scalar_multiply, search_s_integral_points, CurvePoint, ModelMap,
    WeierstrassModel,
};
use ecs_core::reduction::{global_reduction, minimalize, Kodaira};
use ecs_core::stable::{is_stably_integral, twist_cross_check, PrimeStatus};
use ecs_core::torsion::{
    audit_curve, sl2_order_brute_force, stable_integrality_threshold, symplectic_group_order, torsion_subgroup,
};
use ecs_core::twist::{kummer_map, twist_curve, twist_scan, ShortCubic, TwistFamily};
use ecs_core::{BigInt, BigRational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Poly = MultiPoly<BigRational>;

fn verdict(k: u32, name: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {k} {name}: {detail}");
    assert!(ok, "criterion {k} ({name}) failed: {detail}");
}

fn within(start: Instant, limit_s: u64) -> (bool, Duration) {
    let e = start.elapsed();
    (e < Duration::from_secs(limit_s), e)
}

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(z(n))
}

fn s23() -> PrimeSet {
    PrimeSet::from_u64(&[2, 3]).unwrap()
}

fn val(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut k = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        k += 1;
    }
    Some(k)
}

/// Denominator supported on `S`.
fn s_integral(x: &BigRational, s: &[i64]) -> bool {
    let mut d = x.denom().clone();
    for &p in s {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    d.is_one()
}

fn short(a: i64, b: i64) -> Option<WeierstrassModel> {
    WeierstrassModel::from_i64([0, 0, 0, a, b]).ok()
}

#[test]
fn criterion_01_hesse_geometry() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ecs"))
        .args(["hesse", "--singular-fibers"])
        .output()
        .expect("binary runs");
    let (fast, elapsed) = within(start, 5);
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    let e = |j: &Value| -> Eisenstein {
        let r = |k: &str| -> BigRational { j[k].as_str().unwrap().parse().unwrap() };
        Eisenstein::new(r("a"), r("b"))
    };
    let pt = |j: &Value| -> [Eisenstein; 3] { [e(&j[0]), e(&j[1]), e(&j[2])] };
    let k3 = Eisenstein::from_int(3);
    let mut ok = out.status.success();
    let fibers = v["singular_fibers"].as_array().unwrap();
    let mut nodes_per_fiber = Vec::new();
    for f in fibers {
        let (l, m) = (e(&f["lambda"]), e(&f["mu"]));
        let nodes = f["nodes"].as_array().unwrap();
        nodes_per_fiber.push(nodes.len());
        for n in nodes {
            let [x, y, zz] = pt(&n["point"]);
            let cube = |a: &Eisenstein| a.pow(3);
            // F = λ(X³+Y³+Z³) − 3μXYZ and its partials, written out.
            let f0 = &(&l * &(&(&cube(&x) + &cube(&y)) + &cube(&zz))) - &(&(&k3 * &m) * &(&(&x * &y) * &zz));
            let dx = &(&(&k3 * &l) * &(&x * &x)) - &(&(&k3 * &m) * &(&y * &zz));
            let dy = &(&(&k3 * &l) * &(&y * &y)) - &(&(&k3 * &m) * &(&x * &zz));
            let dz = &(&(&k3 * &l) * &(&zz * &zz)) - &(&(&k3 * &m) * &(&x * &y));
            ok &= f0.is_zero() && dx.is_zero() && dy.is_zero() && dz.is_zero();
            ok &= n["ordinary"] == Value::Bool(true);
        }
    }
    let base = v["base_points"].as_array().unwrap();
    let mut distinct = BTreeSet::new();
    for b in base {
        let [x, y, zz] = pt(b);
        ok &= (&(&x.pow(3) + &y.pow(3)) + &zz.pow(3)).is_zero();
        ok &= (&(&x * &y) * &zz).is_zero();
        distinct.insert(b.to_string());
    }
    let flex = [q(1), q(-1), q(0)].map(Eisenstein::from_rational);
    let has_origin = base.iter().any(|b| pt(b) == flex);
    ok &= fibers.len() == 4 && nodes_per_fiber.iter().all(|&n| n == 3);
    ok &= base.len() == 9 && distinct.len() == 9 && has_origin && fast;
    verdict(
        1,
        "hesse geometry",
        ok,
        format!(
            "{} singular fibers with nodes {:?}, {} base points, [1:-1:0] present: {has_origin}, {:.2?} (limit 5 s)",
            fibers.len(),
            nodes_per_fiber,
            base.len(),
            elapsed
        ),
    );
}

/// Invariants written out from the `a`-coefficients.
fn oracle_invariants(a: &[BigRational; 5]) -> [BigRational; 7] {
    let [a1, a2, a3, a4, a6] = a;
    let k = |n: i64| q(n);
    let b2 = a1 * a1 + k(4) * a2;
    let b4 = k(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + k(4) * a6;
    let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - k(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + k(36) * &b2 * &b4 - k(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6;
    [b2, b4, b6, b8, c4, c6, disc]
}

#[test]
fn criterion_02_formulary_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut curves = Vec::new();
    while curves.len() < 1000 {
        let a: [i64; 5] = std::array::from_fn(|i| {
            let b = [1, 10, 1, 10_000, 1_000_000][i];
            rng.gen_range(-b..=b)
        });
        if let Ok(e) = WeierstrassModel::from_i64(a) {
            curves.push(e);
        }
    }
    let mut bad = 0;
    for e in &curves {
        let [b2, b4, b6, b8, c4, c6, disc] = oracle_invariants(&e.rational_coeffs());
        let zq = |n: &BigInt| BigRational::from_integer(n.clone());
        bad += usize::from(
            zq(e.b2()) != b2
                || zq(e.b4()) != b4
                || zq(e.b6()) != b6
                || zq(e.b8()) != b8
                || zq(e.c4()) != c4
                || zq(e.c6()) != c6
                || zq(e.discriminant()) != disc,
        );
        let (c4, c6, d) = (e.c4(), e.c6(), e.discriminant());
        bad += usize::from(z(1728) * d != c4 * c4 * c4 - c6 * c6);
        bad += usize::from(z(4) * e.b8() != e.b2() * e.b6() - e.b4() * e.b4());
    }
    let mut map_bad = 0;
    for e in &curves[..200] {
        let mut r = |lo: i64, hi: i64| BigRational::new(z(rng.gen_range(lo..=hi)), z(rng.gen_range(1..=6)));
        let u = r(1, 7);
        let u = if r(0, 1).is_zero() { -u } else { u };
        let map = ModelMap::new(u.clone(), r(-20, 20), r(-20, 20), r(-20, 20)).unwrap();
        let a2 = map.transform_coeffs(&e.rational_coeffs());
        let old = oracle_invariants(&e.rational_coeffs());
        let new = oracle_invariants(&a2);
        let u4 = u.pow(4);
        let u12 = u.pow(12);
        map_bad += usize::from(&u4 * &new[4] != old[4] || &u12 * &new[6] != old[6]);
        map_bad += usize::from(rational_invariants(&a2).disc != new[6]);
    }
    let (fast, elapsed) = within(start, 30);
    verdict(
        2,
        "formulary identities",
        bad == 0 && map_bad == 0 && fast,
        format!("1000 curves: {bad} failures; 200 maps: {map_bad} failures; {elapsed:.2?} (limit 30 s)"),
    );
}

#[test]
fn criterion_03_rescaling_and_model_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = s23();
    let (mut exact, mut inverted, mut pairs, mut disagreements, mut curves) = (0, 0, 0, 0, 0);
    while pairs < 60 || curves < 20 {
        let (a, b) = (rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        let Some(e) = short(a, b) else { continue };
        curves += 1;
        let c: i64 = rng.gen_range(2..=7);
        let (e2, map) = apply_model_map(&e, &ModelMap::rescale(&z(c)).unwrap()).unwrap();
        exact += usize::from(e2 == short(c.pow(4) * a, c.pow(6) * b).unwrap());
        let (m1, _) = minimalize(&e).unwrap();
        let (m2, _) = minimalize(&e2).unwrap();
        inverted += usize::from(m1 == m2);
        for p in search_s_integral_points(&e, &s, 300).into_iter().take(6) {
            let r1 = is_stably_integral(&e, &p, &s).unwrap();
            let r2 = is_stably_integral(&e2, &map.map_point(&p), &s).unwrap();
            pairs += 1;
            disagreements += usize::from(
                r1.verdict != r2.verdict || r1.evidence != r2.evidence || r1.minimal_point != r2.minimal_point,
            );
        }
    }
    verdict(
        3,
        "rescaling and model invariance",
        exact == curves && inverted == curves && pairs >= 50 && disagreements == 0,
        format!(
            "{exact}/{curves} exact rescalings, {inverted}/{curves} minimalize inverses, {pairs} curve/point pairs, {disagreements} disagreements"
        ),
    );
}

/// Kodaira symbol from `(v(c4), v(c6), v(Δ))` on a model minimal at `p ≥ 5`.
fn kodaira_table(vc4: Option<u32>, vd: u32) -> Kodaira {
    let vc4 = vc4.unwrap_or(u32::MAX);
    if vd == 0 {
        return Kodaira::I0;
    }
    if vc4 == 0 {
        return Kodaira::In(vd);
    }
    match vd {
        2 => Kodaira::II,
        3 => Kodaira::III,
        4 => Kodaira::IV,
        6 => Kodaira::I0Star,
        _ if vc4 == 2 && vd > 6 => Kodaira::InStar(vd - 6),
        8 => Kodaira::IVStar,
        9 => Kodaira::IIIStar,
        10 => Kodaira::IIStar,
        _ => panic!("impossible valuations v(c4) = {vc4}, v(Δ) = {vd}"),
    }
}

#[test]
fn criterion_04_tate_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut runs, mut disagreements, mut kinds) = (0, Vec::new(), BTreeSet::new());
    let primes = [5i64, 7, 11, 13];
    for _ in 0..240 {
        let p = primes[rng.gen_range(0..primes.len())];
        let (i, j) = (rng.gen_range(0..=4u32), rng.gen_range(0..=6u32));
        let (a, b) = (rng.gen_range(-30..=30), rng.gen_range(-30..=30));
        let Some(e) = short(a * p.pow(i), b * p.pow(j)) else { continue };
        let g = global_reduction(&e).unwrap();
        let m = &g.minimal_model;
        for l in g.locals.iter().filter(|l| l.p >= z(5)) {
            runs += 1;
            let vd = val(m.discriminant(), &l.p).unwrap();
            let vc4 = val(m.c4(), &l.p);
            let vc6 = val(m.c6(), &l.p);
            let minimal = !(vc4.is_none_or(|v| v >= 4) && vc6.is_none_or(|v| v >= 6));
            let expect = kodaira_table(vc4, vd);
            let consistent = match l.kodaira {
                Kodaira::In(n) => vd == n,
                Kodaira::InStar(n) => vd == n + 6,
                _ => true,
            };
            kinds.insert(l.kodaira.to_string());
            if !minimal || expect != l.kodaira || !consistent || l.v_delta != vd {
                disagreements.push(format!("{:?} at {}: {} vs {expect}", e.coeffs(), l.p, l.kodaira));
            }
        }
    }
    let (fast, elapsed) = within(start, 60);
    verdict(
        4,
        "tate consistency",
        runs >= 200 && disagreements.is_empty() && fast,
        format!(
            "{runs} local runs at p >= 5, {} disagreements {:?}, types seen {:?}, {elapsed:.2?} (limit 60 s)",
            disagreements.len(),
            disagreements.iter().take(3).collect::<Vec<_>>(),
            kinds
        ),
    );
}

#[test]
fn criterion_05_stable_ground_cases() {
    let s = s23();
    let r1 = is_stably_integral(&short(0, 50).unwrap(), &CurvePoint::from_ints(-1, 7), &s).unwrap();
    let r2 = is_stably_integral(&short(0, 25).unwrap(), &CurvePoint::from_ints(0, 5), &s).unwrap();
    let ev = |r: &ecs_core::stable::StableReport| -> Vec<(BigInt, PrimeStatus)> {
        r.evidence.iter().map(|e| (e.p.clone(), e.status)).collect()
    };
    let want1 = vec![
        (z(2), PrimeStatus::InS),
        (z(3), PrimeStatus::InS),
        (z(5), PrimeStatus::AdditiveIdentityComponent),
    ];
    let want2 = vec![
        (z(2), PrimeStatus::InS),
        (z(3), PrimeStatus::InS),
        (z(5), PrimeStatus::AdditiveNonidentity),
    ];
    let ok = !r1.verdict && ev(&r1) == want1 && r2.verdict && ev(&r2) == want2;
    verdict(
        5,
        "stable classifier ground cases",
        ok,
        format!(
            "y^2=x^3+50 (-1,7): {} {:?}; y^2=x^3+25 (0,5): {} {:?}",
            r1.verdict,
            ev(&r1).iter().map(|(p, s)| format!("{p}:{s}")).collect::<Vec<_>>(),
            r2.verdict,
            ev(&r2).iter().map(|(p, s)| format!("{p}:{s}")).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_06_twist_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = s23();
    let (mut applicable, mut agree, mut curves, mut stars) = (0, 0, 0, BTreeSet::new());
    let primes = [5i64, 7, 11, 13];
    while curves < 150 {
        let p = primes[rng.gen_range(0..primes.len())];
        let (a, b) = (rng.gen_range(-12..=12), rng.gen_range(-12..=12));
        // Twisting by p turns good reduction at p into I0* and In into In*.
        let Some(e) = short(a * p * p, b * p * p * p) else { continue };
        curves += 1;
        let g = global_reduction(&e).unwrap();
        let bad: Vec<BigInt> = g.bad_primes().filter(|l| **l >= z(5)).cloned().collect();
        for pt in search_s_integral_points(&e, &s, 2000).into_iter().take(8) {
            for l in &bad {
                let check = twist_cross_check(&e, &pt, l).unwrap();
                if let Some(ok) = check.agreement() {
                    applicable += 1;
                    agree += usize::from(ok);
                    stars.insert(g.local_at(l).unwrap().kodaira.to_string());
                }
            }
        }
    }
    verdict(
        6,
        "twist cross-check",
        applicable >= 50 && agree == applicable,
        format!(
            "{agree}/{applicable} applicable triples agree over {curves} curves (types {stars:?})"
        ),
    );
}

#[test]
fn criterion_07_kummer_preservation() {
    let f = ShortCubic::from_i64(0, 1).unwrap();
    let family = TwistFamily::squarefree_range(f.clone(), 1, 50).unwrap();
    let entries = twist_scan(&family, &s23(), 1000).unwrap();
    let fx = |x: &BigRational| x * x * x + q(1);
    let (mut total, mut violations) = (0, 0);
    for e in &entries {
        for k in &e.kummer {
            total += 1;
            let holds = &k.z * &k.z == fx(&k.x1) * fx(&k.x2);
            let integral = [&k.x1, &k.x2, &k.z].iter().all(|c| s_integral(c, &[2, 3]));
            violations += usize::from(!holds || !integral);
        }
    }
    verdict(
        7,
        "kummer preservation",
        violations == 0 && total > 0,
        format!(
            "{} squarefree t in [1,50], {total} Kummer points, {violations} violations",
            entries.len()
        ),
    );
}

#[test]
fn criterion_08_torsion_audit() {
    let s = s23();
    let corpus = generate_corpus(&CorpusSpec::new(CorpusKind::Tate, 40, 12, 8)).unwrap();
    let mut orders = BTreeSet::new();
    let (mut audited, mut not_integral, mut not_stable, mut certified) = (0, 0, 0, 0);
    for entry in &corpus.entries {
        let model = entry.curve.to_model().unwrap();
        let n = entry.torsion_order.unwrap();
        orders.insert(n);
        let p = entry.torsion_point.as_ref().unwrap().to_point().unwrap();
        certified += usize::from(
            scalar_multiply(&model, n as i64, &p).is_infinity()
                && (1..n).all(|k| !scalar_multiply(&model, k as i64, &p).is_infinity())
                && torsion_subgroup(&model).unwrap().order().is_multiple_of(n),
        );
        let audit = audit_curve(&model, &s).unwrap();
        for pa in &audit.points {
            audited += 1;
            let (x, y) = (pa.point.x().unwrap(), pa.point.y().unwrap());
            not_integral += usize::from(!x.is_integer() || !y.is_integer());
            if pa.order % 2 == 1 {
                // Obstructions may only sit at primes dividing the order.
                let r = is_stably_integral(&audit.model, &pa.point, &s).unwrap();
                let bad = r
                    .evidence
                    .iter()
                    .any(|e| e.status.is_obstruction() && !(z(pa.order as i64) % &e.p).is_zero());
                not_stable += usize::from(bad || !pa.stable);
            }
        }
    }
    let c = symplectic_group_order(1).unwrap();
    let brute = sl2_order_brute_force(5);
    let t343 = stable_integrality_threshold(343, 1, 1).unwrap().satisfied;
    let t125 = stable_integrality_threshold(125, 1, 1).unwrap().satisfied;
    let ok = corpus.entries.len() >= 30
        && orders == (3..=10).collect()
        && certified == corpus.entries.len()
        && not_integral == 0
        && not_stable == 0
        && c == z(120)
        && brute == 120
        && t343
        && !t125;
    verdict(
        8,
        "torsion audit",
        ok,
        format!(
            "{} curves (orders {orders:?}, {certified} certified), {audited} points, {not_integral} non-integral, {not_stable} odd-order unstable; C = {c} (brute force {brute}); 343: {t343}, 125: {t125}",
            corpus.entries.len()
        ),
    );
}

fn span_contains(witnesses: &[Poly], target: &Poly, nvars: usize, degree: u32) -> bool {
    let basis = TupleMatrix::monomial_basis(nvars, degree);
    let coeffs = |w: &Poly| -> Vec<BigRational> { basis.iter().map(|m| w.coefficient(&m.0)).collect() };
    let mut rows: Vec<Vec<BigRational>> = witnesses.iter().map(coeffs).collect();
    let r = rank(&rows, basis.len());
    rows.push(coeffs(target));
    r > 0 && rank(&rows, basis.len()) == r
}

/// Every fiber outside the excluded list has at most `N` points.
fn bound_holds(set: &FiberedPointSet, report: &ecs_core::correlation::CorrelationReport) -> bool {
    let Some(b) = &report.bound else { return true };
    set.fibers()
        .all(|(t, pts)| b.excluded.contains(t) || pts.len() <= b.n_bound)
        && b.is_sound_for(set)
}

/// Same fibers and counts, coordinates random.
fn matched_random(set: &FiberedPointSet, rng: &mut ChaCha8Rng) -> FiberedPointSet {
    let mut out = FiberedPointSet::with_names(set.coord_names().to_vec()).unwrap();
    for (t, pts) in set.fibers() {
        while out.fiber(t).map_or(0, <[_]>::len) < pts.len() {
            let coords = (0..set.dim())
                .map(|_| BigRational::new(z(rng.gen_range(-500..=500)), z(rng.gen_range(1..=40))))
                .collect();
            out.insert(t.clone(), coords).unwrap();
        }
    }
    out
}

#[test]
fn criterion_09_correlation_plant_and_recover() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut notes = Vec::new();
    let mut ok = true;

    // Kummer points z² = f(x1)f(x2) from multiples of (x0, 1) on the twist by f(x0).
    let f = ShortCubic::from_i64(-1, 1).unwrap();
    let mut kummer = FiberedPointSet::with_names(vec!["x1".into(), "x2".into(), "z".into()]).unwrap();
    for x0 in -8..=16i64 {
        let c = f.eval(&q(x0)).to_integer();
        let Ok(tw) = twist_curve(&f, &c) else { continue };
        let p = tw.to_model(&CurvePoint::affine(q(x0), q(1)));
        let pts: Vec<CurvePoint> = [1, -1, 2, -2, 3, -3]
            .iter()
            .map(|&k| tw.from_model(&scalar_multiply(&tw.model, k, &p)))
            .filter(|p| !p.is_infinity())
            .collect();
        for a in &pts {
            for b in &pts {
                let k = kummer_map(&f, &c, a, b).unwrap();
                kummer.insert(BigRational::from_integer(c.clone()), vec![k.x1, k.x2, k.z]).unwrap();
            }
        }
    }
    let vars = ["t", "x1", "x2", "z"];
    let (x1, x2, zv) = (Poly::var(&vars, 1), Poly::var(&vars, 2), Poly::var(&vars, 3));
    let one = Poly::constant(&vars, q(1));
    let fx = |x: &Poly| -> Poly { &(&x.pow(3) - x) + &one };
    let planted = &zv.pow(2) - &(&fx(&x1) * &fx(&x2));
    let rep = correlation_report(&kummer, 1, 6).unwrap();
    let recovered = rep.fit.witnesses.len() == 1 && span_contains(&rep.fit.witnesses, &planted, 4, 6);
    let random = matched_random(&kummer, &mut rng);
    let rep_r = correlation_report(&random, 1, 6).unwrap();
    ok &= recovered && !rep_r.correlated() && bound_holds(&kummer, &rep) && bound_holds(&random, &rep_r);
    notes.push(format!(
        "kummer: {} points on {} fibers, rank {}/{} recovered {recovered}; matched random correlated {}",
        kummer.num_points(),
        kummer.num_fibers(),
        rep.fit.rank,
        rep.fit.num_monomials,
        rep_r.correlated()
    ));

    // Linear-in-z plants z·A(t, x) + B(t, x) of degree 3.
    let pv = ["t", "x", "z"];
    let mut plants_ok = 0;
    let plants = 6;
    for _ in 0..plants {
        let degree = 3u32;
        let mut terms = Vec::new();
        for dz in 0..=1u32 {
            for total in 0..=degree - dz {
                for dt in 0..=total {
                    terms.push((vec![dt, total - dt, dz], q(rng.gen_range(-4..=4))));
                }
            }
        }
        terms.push((vec![0, 0, 1], q(rng.gen_range(1..=4))));
        let target = Poly::from_terms(&pv, terms);
        let mut pts = FiberedPointSet::new(2).unwrap();
        let need = 40;
        let mut guard = 0;
        while pts.num_points() < need && guard < 5000 {
            guard += 1;
            let (t, x) = (q(rng.gen_range(-5..=5)), q(rng.gen_range(-12..=12)));
            let at = |zz: i64| target.evaluate(&[t.clone(), x.clone(), q(zz)]);
            let slope = at(1) - at(0);
            if slope.is_zero() {
                continue;
            }
            let zz = -at(0) / slope;
            pts.insert(t, vec![x, zz]).unwrap();
        }
        let rep = correlation_report(&pts, 1, degree).unwrap();
        let random = matched_random(&pts, &mut rng);
        let rep_r = correlation_report(&random, 1, degree).unwrap();
        let good = span_contains(&rep.fit.witnesses, &target, 3, degree)
            && !rep_r.correlated()
            && bound_holds(&pts, &rep)
            && bound_holds(&random, &rep_r);
        plants_ok += usize::from(good);
    }
    ok &= plants_ok == plants;
    notes.push(format!("{plants_ok}/{plants} linear plants recovered with uncorrelated matched data"));

    let (fast, elapsed) = within(start, 120);
    ok &= fast;
    verdict(
        9,
        "correlation plant and recover",
        ok,
        format!("{}; {elapsed:.2?} (limit 120 s)", notes.join("; ")),
    );
}

fn run_cli(args: &[&str], jobs_env: Option<&str>, csv: &std::path::Path) -> (Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ecs"));
    cmd.args(args).arg("--csv").arg(csv).env_remove("ECS_JOBS");
    if let Some(j) = jobs_env {
        cmd.env("ECS_JOBS", j);
    }
    let out = cmd.output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    (out.stdout, std::fs::read(csv).unwrap())
}

#[test]
fn criterion_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    let out = Command::new(env!("CARGO_BIN_EXE_ecs"))
        .args(["corpus", "--kind", "tate", "--size", "16", "--bound", "9", "--seed", "10", "--out"])
        .arg(&corpus)
        .output()
        .unwrap();
    assert!(out.status.success());
    let corpus = corpus.to_str().unwrap().to_string();
    let scans: Vec<Vec<&str>> = vec![
        vec!["twist-scan", "--f", "x^3+1", "--t-range", "1..30", "--S", "2,3", "--H", "1000"],
        vec!["stable", "--curve", "y^2=x^3-2x+1", "--S", "2,3", "--H", "20000"],
        vec!["search", "--curve", "y^2+y=x^3-x", "--S", "2", "--H", "50000"],
        vec!["torsion", "--corpus", &corpus],
        vec!["correlate", "--f", "x^3+1", "--t-range", "1..40", "--H", "500", "--n", "2", "--D", "2"],
        vec!["corpus", "--kind", "hesse", "--size", "12", "--bound", "20", "--seed", "5"],
    ];
    let mut identical = 0;
    for args in &scans {
        let csv = dir.path().join("out.csv");
        let base = run_cli(&[&["--jobs", "1"], args.as_slice()].concat(), None, &csv);
        let variants = [
            run_cli(&[&["--jobs", "4"], args.as_slice()].concat(), None, &csv),
            run_cli(&[&["--jobs", "1"], args.as_slice()].concat(), Some("3"), &csv),
            run_cli(args, Some("8"), &csv),
        ];
        identical += usize::from(variants.iter().all(|v| *v == base) && !base.0.is_empty());
    }
    verdict(
        10,
        "determinism",
        identical == scans.len(),
        format!(
            "{identical}/{} scans byte-identical across --jobs 1/4 and ECS_JOBS 3/8 (JSON and CSV)",
            scans.len()
        ),
    );
}
