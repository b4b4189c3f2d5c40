use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_perfect_square, PrimeSet};
use crate::arith::isqrt_exact_i128;
use crate::curve::{CurvePoint, WeierstrassModel};

/// One unit of search work: numerators `a ∈ [lo, hi]` over the denominator
/// `s²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchChunk {
    pub s: u64,
    pub lo: i64,
    pub hi: i64,
}

/// The points searched are `x = a/s²` in lowest terms where `s ≥ 1` is a
/// product of primes of `S` and `max(|a|, s²) ≤ H`. With `S` empty this is
/// every integral `x` with `|x| ≤ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchPlan {
    pub bound: u64,
    pub denominators: Vec<u64>,
}

impl SearchPlan {
    pub fn new(primes: &PrimeSet, bound: u64) -> Self {
        let root = BigInt::from(bound.max(1)).sqrt();
        let denominators = primes
            .units_up_to(&root)
            .iter()
            .map(|s| s.to_u64().expect("denominator fits in u64"))
            .collect();
        SearchPlan { bound, denominators }
    }

    /// Splits the work into chunks of at most `width` numerators each, in a
    /// fixed order.
    pub fn chunks(&self, width: u64) -> Vec<SearchChunk> {
        let width = width.clamp(1, i64::MAX as u64) as i64;
        let h = self.bound.min(i64::MAX as u64) as i64;
        let mut out = Vec::new();
        for &s in &self.denominators {
            let mut lo = -h;
            while lo <= h {
                let hi = lo.saturating_add(width - 1).min(h);
                out.push(SearchChunk { s, lo, hi });
                if hi == h {
                    break;
                }
                lo = hi + 1;
            }
        }
        out
    }
}

fn small_coeffs(model: &WeierstrassModel) -> Option<[i128; 5]> {
    let c = model.coeffs();
    Some([
        c[0].to_i128()?,
        c[1].to_i128()?,
        c[2].to_i128()?,
        c[3].to_i128()?,
        c[4].to_i128()?,
    ])
}

// For x = a/s² and Y = s³y the equation becomes
// Y² + (a1·a·s + a3·s³)Y = a³ + a2a²s² + a4as⁴ + a6s⁶, so
// (2Y + w)² = 4·rhs + w² with w = a1·a·s + a3·s³.
fn fiber_small(c: &[i128; 5], a: i128, s: i128) -> Option<Option<(i128, i128)>> {
    let s2 = s.checked_mul(s)?;
    let s3 = s2.checked_mul(s)?;
    let s4 = s2.checked_mul(s2)?;
    let s6 = s3.checked_mul(s3)?;
    let a2 = a.checked_mul(a)?;
    let a3 = a2.checked_mul(a)?;
    let rhs = a3
        .checked_add(c[1].checked_mul(a2)?.checked_mul(s2)?)?
        .checked_add(c[3].checked_mul(a)?.checked_mul(s4)?)?
        .checked_add(c[4].checked_mul(s6)?)?;
    let w = c[0].checked_mul(a)?.checked_mul(s)?.checked_add(c[2].checked_mul(s3)?)?;
    let disc = rhs.checked_mul(4)?.checked_add(w.checked_mul(w)?)?;
    Some(isqrt_exact_i128(disc).map(|r| (r, w)))
}

fn fiber_big(model: &WeierstrassModel, a: &BigInt, s: &BigInt) -> Option<(BigInt, BigInt)> {
    let [c1, c2, c3, c4, c6] = model.coeffs();
    let s2 = s * s;
    let s3 = &s2 * s;
    let rhs = a * a * a + c2 * a * a * &s2 + c4 * a * &s2 * &s2 + c6 * &s3 * &s3;
    let w = c1 * a * s + c3 * &s3;
    let disc = rhs * 4 + &w * &w;
    is_perfect_square(&disc).map(|r| (r, w))
}

fn push_points(out: &mut Vec<CurvePoint>, a: BigInt, s: &BigInt, r: BigInt, w: BigInt) {
    let s2 = s * s;
    let s3 = &s2 * s;
    let x = BigRational::new(a, s2);
    let mut ys = Vec::with_capacity(2);
    ys.push(&r - &w);
    if !r.is_zero() {
        ys.push(-&r - &w);
    }
    for twice_y in ys {
        let y = BigRational::new(twice_y, &s3 * 2);
        out.push(CurvePoint::Affine { x: x.clone(), y });
    }
}

/// Points of one chunk, unsorted.
pub fn search_s_integral_points_in(model: &WeierstrassModel, chunk: &SearchChunk) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    let small = small_coeffs(model);
    let s_big = BigInt::from(chunk.s);
    let s_small = chunk.s as i128;
    for a in chunk.lo..=chunk.hi {
        if chunk.s > 1 && (a as i128).gcd(&s_small) != 1 {
            continue;
        }
        let hit = match small.as_ref().and_then(|c| fiber_small(c, a as i128, s_small)) {
            Some(found) => found.map(|(r, w)| (BigInt::from(r), BigInt::from(w))),
            None => fiber_big(model, &BigInt::from(a), &s_big),
        };
        if let Some((r, w)) = hit {
            push_points(&mut out, BigInt::from(a), &s_big, r, w);
        }
    }
    out
}

/// All affine points within the plan's height bound, sorted by `(x, y)`.
pub fn search_s_integral_points(model: &WeierstrassModel, primes: &PrimeSet, bound: u64) -> Vec<CurvePoint> {
    let plan = SearchPlan::new(primes, bound);
    let mut out: Vec<CurvePoint> = plan
        .chunks(u64::MAX)
        .iter()
        .flat_map(|c| search_s_integral_points_in(model, c))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn ints(pts: &[(i64, i64)]) -> Vec<CurvePoint> {
        pts.iter().map(|&(x, y)| CurvePoint::from_ints(x, y)).collect()
    }

    #[test]
    fn integral_examples() {
        let none = PrimeSet::empty();
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, -2]).unwrap();
        assert_eq!(search_s_integral_points(&e, &none, 10_000), ints(&[(3, -5), (3, 5)]));
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(
            search_s_integral_points(&e, &none, 10_000),
            ints(&[(-1, 0), (0, -1), (0, 1), (2, -3), (2, 3)])
        );
        let e = WeierstrassModel::from_i64([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(search_s_integral_points(&e, &none, 10_000), ints(&[(-1, 0), (0, 0), (1, 0)]));
    }

    #[test]
    fn s_integral_points_have_unit_denominators() {
        let s = PrimeSet::from_u64(&[2, 3]).unwrap();
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, 1]).unwrap();
        let pts = search_s_integral_points(&e, &s, 2_000);
        for p in &pts {
            assert!(e.contains(p));
            assert!(crate::arith::is_s_integer(p.x().unwrap(), &s));
            assert!(crate::arith::is_s_integer(p.y().unwrap(), &s));
        }
        // 2·(2,3) = (0,1) so no new points, but (−1,0)+(2,3) etc. stay integral;
        // the curve y² = x³ + 1 has rank 0, so nothing beyond the torsion.
        assert_eq!(pts.len(), 5);
        // y² = x³ − 2 has (129/100, 383/1000) which needs 2 and 5 in S.
        let e = WeierstrassModel::from_i64([0, 0, 0, 0, -2]).unwrap();
        let with5 = PrimeSet::from_u64(&[2, 5]).unwrap();
        let pts = search_s_integral_points(&e, &with5, 10_000);
        assert!(pts.contains(&CurvePoint::affine(rat(129, 100), rat(383, 1000))));
    }

    #[test]
    fn long_model_and_big_fallback() {
        let e = WeierstrassModel::from_i64([0, -1, 1, 0, 0]).unwrap();
        let pts = search_s_integral_points(&e, &PrimeSet::empty(), 100);
        for p in &pts {
            assert!(e.contains(p));
        }
        assert!(pts.contains(&CurvePoint::from_ints(0, 0)));
        assert!(pts.contains(&CurvePoint::from_ints(0, -1)));
        let big = WeierstrassModel::new([int(0), int(0), int(0), int(0), int(10).pow(40)]).unwrap();
        let c = SearchChunk { s: 1, lo: -3, hi: 3 };
        let pts = search_s_integral_points_in(&big, &c);
        assert!(pts.contains(&CurvePoint::affine(rat(0, 1), BigRational::from_integer(int(10).pow(20)))));
    }

    #[test]
    fn chunks_cover_the_range() {
        let plan = SearchPlan::new(&PrimeSet::from_u64(&[2]).unwrap(), 17);
        assert_eq!(plan.denominators, alloc::vec![1, 2, 4]);
        let chunks = plan.chunks(5);
        let covered: u64 = chunks.iter().map(|c| (c.hi - c.lo + 1) as u64).sum();
        assert_eq!(covered, 3 * 35);
    }
}
