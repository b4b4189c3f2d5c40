//! Exact linear algebra over `Q` by fraction-free (Bareiss) elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row echelon form produced by Bareiss elimination. Every entry is an
/// integer minor of the (denominator-cleared) input.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Multiplies a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Fraction-free Gaussian elimination. Rows that become zero are dropped.
pub fn bareiss(matrix: &[Vec<BigRational>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            clear_denominators(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Smallest nonzero entry as pivot keeps the minors a little smaller.
        let Some(pr) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()))
        else {
            continue;
        };
        m.swap(r, pr);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            if factor.is_zero() {
                // Entry (i, j) becomes pivot·m[i][j] / prev.
                for x in row.iter_mut().skip(c + 1) {
                    if !x.is_zero() {
                        *x = (&pivot * &*x) / &prev;
                    }
                }
            } else {
                for j in c + 1..ncols {
                    let v = &pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

/// Basis of the right kernel `{v : M v = 0}` as primitive integer vectors,
/// one per non-pivot column, each normalized so its last nonzero entry is
/// positive.
pub fn nullspace(matrix: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = bareiss(matrix, ncols);
    nullspace_from_echelon(&ech)
}

pub fn nullspace_from_echelon(ech: &Echelon) -> Vec<Vec<BigInt>> {
    let ncols = ech.ncols;
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for (k, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[k];
            let mut s = BigRational::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += &x[j] * BigRational::from_integer(row[j].clone());
                }
            }
            x[pc] = -s / BigRational::from_integer(row[pc].clone());
        }
        basis.push(primitive(&clear_denominators(&x)));
    }
    basis
}

/// Divides out the content and fixes the sign of the last nonzero entry.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let last_negative = v
        .iter()
        .rev()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let g = if last_negative { -g } else { g };
    v.iter().map(|x| x / &g).collect()
}

pub fn rank(matrix: &[Vec<BigRational>], ncols: usize) -> usize {
    bareiss(matrix, ncols).rank()
}

/// Rational `n/d` with `n ≡ d·a (mod m)`, `|n|, d ≤ √(m/2)`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form over `F_p`: pivot columns and, per free
/// column, the kernel vector with a 1 there and 0 at the other free columns.
fn kernel_mod_p(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    let kernel = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[k][free]) % p;
            }
            v
        })
        .collect();
    (pivots, kernel)
}

fn dot_is_zero(row: &[BigInt], v: &[BigInt]) -> bool {
    row.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
        .is_zero()
}

/// Kernel basis by elimination modulo word-sized primes, Chinese remaindering
/// and rational reconstruction. The result is accepted only once every
/// vector vanishes exactly on every row; since the kernel over `Q` is never
/// larger than the kernel modulo `p`, that certifies the whole kernel. The
/// basis is the same as the one [`nullspace`] returns.
pub fn nullspace_multimodular(matrix: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| clear_denominators(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut p = (1u64 << 62) - 57;
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    for _ in 0..4096 {
        while !crate::arith::is_prime(&BigInt::from(p)) {
            p -= 2;
        }
        let (pivots, kernel) = kernel_mod_p(&rows, ncols, p);
        let pb = BigInt::from(p);
        p -= 2;
        match &mut best {
            Some((bp, _, _)) if pivots.len() < bp.len() || (pivots.len() == bp.len() && pivots != *bp) => continue,
            Some((bp, acc, m)) if *bp == pivots => {
                let m_inv = crate::arith::mod_inverse(&m.mod_floor(&pb), &pb).expect("distinct primes");
                for (va, vp) in acc.iter_mut().zip(&kernel) {
                    for (a, &b) in va.iter_mut().zip(vp) {
                        let lift = ((BigInt::from(b) - &*a) * &m_inv).mod_floor(&pb);
                        *a += &*m * lift;
                    }
                }
                *m *= &pb;
            }
            _ => {
                let acc = kernel.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                best = Some((pivots, acc, pb));
            }
        }
        let (_, acc, m) = best.as_ref().expect("set above");
        if acc.is_empty() {
            return Vec::new();
        }
        let candidate: Option<Vec<Vec<BigInt>>> = acc
            .iter()
            .map(|v| {
                let q: Option<Vec<BigRational>> = v.iter().map(|a| rational_reconstruction(a, m)).collect();
                q.map(|q| primitive(&clear_denominators(&q)))
            })
            .collect();
        if let Some(basis) = candidate {
            if basis.iter().all(|v| rows.iter().all(|r| dot_is_zero(r, v))) {
                return basis;
            }
        }
    }
    nullspace(matrix, ncols)
}

/// Exact kernel basis, by Bareiss elimination for small matrices and by
/// [`nullspace_multimodular`] otherwise. Both give the same basis.
pub fn kernel(matrix: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    if ncols <= 24 && matrix.len() <= 48 {
        nullspace(matrix, ncols)
    } else {
        nullspace_multimodular(matrix, ncols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mod_inverse, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    fn mul(a: &[Vec<BigRational>], v: &[BigInt]) -> Vec<BigRational> {
        a.iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(BigRational::zero(), |s, (x, y)| s + x * BigRational::from_integer(y.clone()))
            })
            .collect()
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        assert_eq!(rank(&a, 4), 2);
        for v in &ns {
            assert!(mul(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn zero_columns_and_rationals() {
        let a = vec![
            vec![rat(0, 1), rat(1, 2), rat(1, 3)],
            vec![rat(0, 1), rat(1, 4), rat(1, 6)],
        ];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mul(&a, v).iter().all(Zero::is_zero));
        }
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn determinant_shows_up_as_last_pivot() {
        // For a nonsingular square matrix the last Bareiss pivot is ±det.
        let a = m(&[&[2, 3, 1], &[4, 1, -2], &[0, 5, 7]]);
        let e = bareiss(&a, 3);
        let det = 2 * (7 + 10) - 3 * 28 + 20;
        assert_eq!(e.rows[2][2].abs(), BigInt::from(det).abs());
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (1, 1), (-1000, 999)] {
            let a = (BigInt::from(n) * mod_inverse(&BigInt::from(d), &m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some(rat(n, d)));
        }
    }

    #[test]
    fn multimodular_matches_bareiss_on_wide_entries() {
        let big = |k: i64| BigRational::from_integer(BigInt::from(k).pow(30) + 7);
        let r1 = vec![big(3), big(5), rat(1, 7), rat(0, 1), big(2)];
        let r2 = vec![big(4), rat(-2, 3), rat(9, 1), big(6), rat(1, 1)];
        let r3 = r1.iter().zip(&r2).map(|(x, y)| x * rat(3, 1) - y).collect();
        let a = vec![r1, r2, r3];
        assert_eq!(nullspace_multimodular(&a, 5), nullspace(&a, 5));
        assert_eq!(nullspace_multimodular(&a, 5).len(), 3);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn multimodular_agrees_with_bareiss(
            entries in proptest::collection::vec(-4i64..5, 1..60),
            ncols in 1usize..7,
            den in 1i64..4,
        ) {
            let a: Vec<Vec<BigRational>> = entries
                .chunks(ncols)
                .filter(|c| c.len() == ncols)
                .map(|c| c.iter().map(|&x| rat(x, den)).collect())
                .collect();
            proptest::prop_assume!(!a.is_empty());
            let mm = nullspace_multimodular(&a, ncols);
            proptest::prop_assert_eq!(&mm, &nullspace(&a, ncols));
            proptest::prop_assert_eq!(mm.len() + rank(&a, ncols), ncols);
        }
    }
}
