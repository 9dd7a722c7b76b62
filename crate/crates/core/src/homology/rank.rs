use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::elim::{eliminate, ModQ, SparseRow, UnitsOfZ};
use super::matrix::SparseIntMatrix;
use crate::error::{Error, Result};

/// How a rank (and hence a Betti number) was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Exact integer elimination.
    Exact,
    /// Agreement of ranks modulo three random primes near 2^62.
    MultiModular,
}

impl RankMethod {
    pub fn name(self) -> &'static str {
        match self {
            RankMethod::Exact => "exact",
            RankMethod::MultiModular => "multi-modular",
        }
    }
}

/// Matrices with both dimensions at most this use exact arithmetic.
pub const EXACT_LIMIT: usize = 2000;

fn int_rows(m: &SparseIntMatrix) -> Vec<SparseRow<i64>> {
    m.columns.clone()
}

/// Exact rank over Q: sparse elimination on unit pivots, then fraction-free (Bareiss)
/// elimination of whatever is left, in `i128` with a big-integer fallback on overflow.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    let out = eliminate(&UnitsOfZ, m.rows, int_rows(m), None);
    if out.overflow {
        return bareiss_rank_big(dense_big(&m.columns, m.rows));
    }
    out.pivots + bareiss_rank(&out.residual)
}

fn compress<T: Copy>(rows: &[SparseRow<T>]) -> (usize, Vec<SparseRow<T>>) {
    let mut cols: Vec<u32> = rows.iter().flatten().map(|e| e.0).collect();
    cols.sort_unstable();
    cols.dedup();
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, v)| (cols.binary_search(&c).unwrap() as u32, v))
                .collect()
        })
        .collect();
    (cols.len(), rows)
}

pub(crate) fn dense_big(rows: &[SparseRow<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); ncols];
            for &(c, v) in r {
                d[c as usize] = BigInt::from(v);
            }
            d
        })
        .collect()
}

/// Dense residual of an integer elimination, columns compressed to those in use.
pub(crate) fn residual_dense(rows: &[SparseRow<i64>]) -> Vec<Vec<BigInt>> {
    let (ncols, rows) = compress(rows);
    dense_big(&rows, ncols)
}

fn bareiss_rank(rows: &[SparseRow<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let (ncols, rows) = compress(rows);
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0i128; ncols];
            for &(c, v) in r {
                d[c as usize] = v as i128;
            }
            d
        })
        .collect();
    match bareiss_rank_i128(&mut a) {
        Some(r) => r,
        None => bareiss_rank_big(dense_big(&rows, ncols)),
    }
}

fn bareiss_rank_i128(a: &mut [Vec<i128>]) -> Option<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = a[r][c].checked_mul(a[i][j])?.checked_sub(a[i][c].checked_mul(a[r][j])?)?;
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
        if r == nrows {
            break;
        }
    }
    Some(r)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Rank modulo the prime `q`, stopping early once `limit` is reached.
pub fn rank_mod(m: &SparseIntMatrix, q: u64, limit: Option<usize>) -> usize {
    let ring = ModQ { q };
    let rows: Vec<SparseRow<u64>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(i, v)| (i, ring.reduce(v))).filter(|e| e.1 != 0).collect())
        .collect();
    eliminate(&ring, m.rows, rows, limit).pivots
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let ring = ModQ { q: n };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = ring.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ring.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Three distinct primes in `[2^62 - 2^40, 2^62)`, determined by `seed`.
pub fn modular_primes(seed: u64) -> [u64; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = [0u64; 3];
    let mut k = 0;
    while k < 3 {
        let c = ((1u64 << 62) - (1u64 << 40) + rng.gen_range(0..(1u64 << 40))) | 1;
        if is_prime_u64(c) && !out[..k].contains(&c) {
            out[k] = c;
            k += 1;
        }
    }
    out
}

/// Rank by elimination modulo three seeded random primes near 2^62. The ranks must agree;
/// each is a lower bound for the rational rank, equal to it unless the prime divides a
/// nonzero maximal minor.
pub fn rank_multimodular(m: &SparseIntMatrix, seed: u64, limit: Option<usize>) -> Result<usize> {
    let ranks: Vec<usize> = modular_primes(seed)
        .iter()
        .map(|&q| rank_mod(m, q, limit))
        .collect();
    if ranks.iter().all(|&r| r == ranks[0]) {
        Ok(ranks[0])
    } else {
        Err(Error::RankDisagreement(ranks))
    }
}

/// Exact rank for matrices within [`EXACT_LIMIT`] in both dimensions, multi-modular beyond.
/// `limit` is a known upper bound on the rank that allows the modular elimination to stop early.
pub fn rank(m: &SparseIntMatrix, seed: u64, limit: Option<usize>) -> Result<(usize, RankMethod)> {
    if m.rows <= EXACT_LIMIT && m.cols <= EXACT_LIMIT {
        Ok((rank_exact(m), RankMethod::Exact))
    } else {
        Ok((rank_multimodular(m, seed, limit)?, RankMethod::MultiModular))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes_are_prime_and_seeded() {
        let a = modular_primes(7);
        assert_eq!(a, modular_primes(7));
        assert_ne!(a, modular_primes(8));
        for q in a {
            assert!(is_prime_u64(q));
            assert!(q < 1 << 62 && q > (1 << 62) - (1 << 40));
        }
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 61) + 1));
    }

    #[test]
    fn small_ranks() {
        let tri = SparseIntMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(rank_exact(&tri), 2);
        let two = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_exact(&two), 2);
        assert_eq!(rank_mod(&two, 3, None), 1);
        assert_eq!(rank_exact(&SparseIntMatrix::zeros(3, 4)), 0);
    }

    /// Plain Gaussian elimination over the rationals as an oracle.
    fn rational_rank(a: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = a
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..ncols {
                        let v = &f * &m[r][j];
                        m[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn exact_and_modular_agree_with_oracle(
            a in proptest::collection::vec(proptest::collection::vec(-4i64..5, 7), 1..8),
            seed in 0u64..1000,
        ) {
            let m = SparseIntMatrix::from_dense(&a);
            let want = rational_rank(&a);
            prop_assert_eq!(rank_exact(&m), want);
            prop_assert_eq!(rank_multimodular(&m, seed, None).unwrap(), want);
            prop_assert_eq!(rank_exact(&m.transpose()), want);
        }

        #[test]
        fn sparse_sign_matrices(
            entries in proptest::collection::vec((0usize..30, 0usize..40, prop_oneof![Just(-1i64), Just(1i64)]), 0..120),
        ) {
            let m = SparseIntMatrix::from_triplets(30, 40, &entries).unwrap();
            let want = rational_rank(&m.to_dense());
            prop_assert_eq!(rank_exact(&m), want);
            prop_assert_eq!(rank_multimodular(&m, 1, None).unwrap(), want);
        }
    }
}
