//! Parallel scans. Work is split into a fixed list of items and mapped with
//! an order-preserving parallel iterator, so results never depend on the
//! worker count.

use ecs_core::arith::PrimeSet;
use ecs_core::correlation::{
    fit_matrix, report_from_fit, CorrelationReport, FiberedPointSet, TupleMatrix, assemble_tuples,
};
use ecs_core::curve::{search_s_integral_points_in, CurvePoint, SearchPlan, WeierstrassModel};
use ecs_core::reduction::global_reduction;
use ecs_core::stable::{classify_on_minimal, StableReport};
use ecs_core::torsion::{audit_curve, CurveAudit};
use ecs_core::twist::{twist_scan_one, TwistFamily, TwistScanEntry};
use ecs_core::Error;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::Result;

/// Numerators per search chunk.
const CHUNK_WIDTH: u64 = 4096;

pub struct Scanner {
    pool: ThreadPool,
}

impl Scanner {
    pub fn new(jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| crate::error::CliError::usage(format!("jobs: {e}")))?;
        Ok(Scanner { pool })
    }

    pub fn jobs(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn map<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        self.pool.install(|| items.par_iter().map(f).collect())
    }

    pub fn try_map<T: Sync, R: Send>(
        &self,
        items: &[T],
        f: impl Fn(&T) -> ecs_core::Result<R> + Sync + Send,
    ) -> Result<Vec<R>> {
        Ok(self.pool.install(|| items.par_iter().map(f).collect::<ecs_core::Result<Vec<R>>>())?)
    }

    /// Same output as `search_s_integral_points`.
    pub fn search(&self, model: &WeierstrassModel, s: &PrimeSet, bound: u64) -> Vec<CurvePoint> {
        let chunks = SearchPlan::new(s, bound).chunks(CHUNK_WIDTH);
        let mut out: Vec<CurvePoint> = self
            .map(&chunks, |c| search_s_integral_points_in(model, c))
            .into_iter()
            .flatten()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every searched point on the minimal model with its report.
    pub fn stable_scan(&self, model: &WeierstrassModel, s: &PrimeSet, bound: u64) -> Result<Vec<StableReport>> {
        let global = global_reduction(model)?;
        let found = self.search(&global.minimal_model, s, bound);
        self.try_map(&found, |p| {
            let (verdict, evidence) = classify_on_minimal(&global, p, s)?;
            Ok(StableReport {
                curve: global.minimal_model.clone(),
                point: p.clone(),
                minimal_point: p.clone(),
                s: s.clone(),
                verdict,
                evidence,
            })
        })
    }

    pub fn twist_scan(&self, family: &TwistFamily, s: &PrimeSet, bound: u64) -> Result<Vec<TwistScanEntry>> {
        self.try_map(&family.ts, |t| twist_scan_one(&family.f, t, s, bound))
    }

    pub fn audit(&self, models: &[WeierstrassModel], s: &PrimeSet) -> Result<Vec<CurveAudit>> {
        self.try_map(models, |m| audit_curve(m, s))
    }

    /// Same output as `correlation_report`, with the matrix rows evaluated in
    /// parallel.
    pub fn correlate(&self, points: &FiberedPointSet, n: usize, degree: u32) -> Result<CorrelationReport> {
        if degree == 0 {
            return Err(Error::Domain("degree bound must be positive").into());
        }
        let tuples = assemble_tuples(points, n)?;
        let monomials = TupleMatrix::monomial_basis(tuples.nvars(), degree);
        let idx: Vec<usize> = (0..tuples.tuples.len()).collect();
        let rows = self.map(&idx, |&i| TupleMatrix::row(&monomials, degree, &tuples.point(i)));
        let matrix = TupleMatrix::from_rows(tuples.vars.clone(), degree, monomials, rows);
        let fit = fit_matrix(&matrix);
        Ok(report_from_fit(points, &tuples, fit)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecs_core::arith::rat;
    use ecs_core::correlation::correlation_report;
    use ecs_core::curve::search_s_integral_points;
    use ecs_core::twist::{twist_scan, ShortCubic};

    #[test]
    fn parallel_scans_match_serial() {
        let s = PrimeSet::from_u64(&[2, 3]).unwrap();
        let e = WeierstrassModel::from_i64([0, 0, 0, -2, 1]).unwrap();
        let family = TwistFamily::squarefree_range(ShortCubic::from_i64(0, 1).unwrap(), 1, 12).unwrap();
        let serial_twists = twist_scan(&family, &s, 200).unwrap();
        for jobs in [1, 3] {
            let sc = Scanner::new(jobs).unwrap();
            assert_eq!(sc.search(&e, &s, 20_000), search_s_integral_points(&e, &s, 20_000));
            assert_eq!(sc.twist_scan(&family, &s, 200).unwrap(), serial_twists);
        }
        let mut set = FiberedPointSet::new(2).unwrap();
        for t in 0..4 {
            for x in 0..3 {
                set.insert(rat(t, 1), vec![rat(x, 1), rat(x * x + t, 1)]).unwrap();
            }
        }
        let direct = correlation_report(&set, 2, 2).unwrap();
        assert_eq!(Scanner::new(2).unwrap().correlate(&set, 2, 2).unwrap(), direct);
    }
}
