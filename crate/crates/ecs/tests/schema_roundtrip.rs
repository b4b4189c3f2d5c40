//! parse(emit(x)) = x for the report types.

use ecs::schema::{DatasetJson, LocalJson, PolyJson, StableJson, TwistScanJson};
use ecs_core::arith::{rat, MultiPoly, PrimeSet};
use ecs_core::correlation::FiberedPointSet;
use ecs_core::curve::{search_s_integral_points, WeierstrassModel};
use ecs_core::reduction::global_reduction;
use ecs_core::stable::is_stably_integral;
use ecs_core::twist::{twist_scan, ShortCubic, TwistFamily};
use ecs_core::BigRational;
use proptest::prelude::*;

fn text<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stable_and_local_reports(a in -60i64..60, b in -60i64..60, c in 1i64..4) {
        let Ok(e) = WeierstrassModel::from_i64([0, 0, 0, a * c.pow(4), b * c.pow(6)]) else { return Ok(()) };
        let s = PrimeSet::from_u64(&[2, 3]).unwrap();
        for p in search_s_integral_points(&e, &s, 200).into_iter().take(4) {
            let r = is_stably_integral(&e, &p, &s).unwrap();
            let j = StableJson::from_report(&r);
            let back: StableJson = serde_json::from_str(&text(&j)).unwrap();
            prop_assert_eq!(back.to_report().unwrap(), r);
        }
        for l in global_reduction(&e).unwrap().locals {
            let back: LocalJson = serde_json::from_str(&text(&LocalJson::from_local(&l))).unwrap();
            prop_assert_eq!(back.to_local().unwrap(), l);
        }
    }

    #[test]
    fn polynomials(terms in proptest::collection::vec((0u32..4, 0u32..4, -9i64..10, 1i64..6), 0..12)) {
        let p = MultiPoly::from_terms(&["t", "x1"], terms.iter().map(|&(i, j, n, d)| (vec![i, j], rat(n, d))));
        let back: PolyJson = serde_json::from_str(&text(&PolyJson::from_poly(&p))).unwrap();
        prop_assert_eq!(back.to_poly().unwrap(), p);
    }

    #[test]
    fn datasets(pts in proptest::collection::vec((-5i64..5, 1i64..4, -20i64..20, -20i64..20, 1i64..9), 1..30)) {
        let mut set = FiberedPointSet::new(2).unwrap();
        for (t, d, x, y, e) in pts {
            set.insert(rat(t, d), vec![rat(x, 1), rat(y, e)]).unwrap();
        }
        let back: DatasetJson = serde_json::from_str(&text(&DatasetJson::from_set(&set))).unwrap();
        prop_assert_eq!(back.to_set().unwrap(), set);
    }
}

#[test]
fn twist_scan_report_is_stable() {
    let f = ShortCubic::from_i64(0, 1).unwrap();
    let s = PrimeSet::from_u64(&[2, 3]).unwrap();
    let entries = twist_scan(&TwistFamily::squarefree_range(f.clone(), 1, 15).unwrap(), &s, 300).unwrap();
    let j = TwistScanJson::new(&f, &s, 300, &entries);
    let t = text(&j);
    let back: TwistScanJson = serde_json::from_str(&t).unwrap();
    assert_eq!(back, j);
    assert_eq!(text(&back), t);
    let big = BigRational::new(10i64.pow(18).into(), 7.into()) * BigRational::from_integer(10i64.pow(18).into());
    assert_eq!(ecs::schema::rat_str(&big), "1000000000000000000000000000000000000/7");
}
