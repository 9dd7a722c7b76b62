use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim::{eliminate, UnitsOfZ};
use super::matrix::SparseIntMatrix;
use super::rank::{dense_big, residual_dense};
use crate::error::{Error, Result};

/// Default cap on `rows × cols` of the dense part of a Smith normal form computation.
pub const DEFAULT_SNF_BUDGET: u128 = 400_000_000;

/// Nonzero elementary divisors `d_1 | d_2 | ...` of `m`.
///
/// Unit pivots are eliminated sparsely first (each contributes a divisor 1); only the
/// remainder is reduced densely, and `budget` bounds its `rows × cols`.
pub fn smith_normal_form(m: &SparseIntMatrix, budget: u128) -> Result<Vec<BigUint>> {
    let out = eliminate(&UnitsOfZ, m.rows, m.columns.clone(), None);
    let (ones, dense) = if out.overflow {
        check_budget(m.cols as u128 * m.rows as u128, budget)?;
        (0, dense_big(&m.columns, m.rows))
    } else {
        let dense = residual_dense(&out.residual);
        let width = dense.first().map_or(0, Vec::len) as u128;
        check_budget(dense.len() as u128 * width, budget)?;
        (out.pivots, dense)
    };
    let mut divisors = vec![BigUint::one(); ones];
    divisors.extend(dense_snf(dense));
    Ok(divisors)
}

fn check_budget(size: u128, budget: u128) -> Result<()> {
    if size > budget {
        return Err(Error::TooLarge {
            what: "dense Smith normal form",
            projected: size,
            cap: budget,
        });
    }
    Ok(())
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.is_one() || (-x).is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// Diagonalizes a dense matrix by row and column operations and returns the normalized
/// nonzero diagonal.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag: Vec<BigUint> = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((i, j)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, i);
        swap_cols(&mut a, t, j);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // a remainder smaller than the pivot is left in row or column t
            let (mut bi, mut bj) = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            swap_cols(&mut a, t, bj);
        }
        diag.push(a[t][t].magnitude().clone());
    }
    normalize_diagonal(&mut diag);
    diag
}

/// Replaces pairs `(a, b)` by `(gcd, lcm)` until the entries form a divisor chain.
fn normalize_diagonal(d: &mut [BigUint]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf(a: &[Vec<i64>]) -> Vec<u64> {
        smith_normal_form(&SparseIntMatrix::from_dense(a), DEFAULT_SNF_BUDGET)
            .unwrap()
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(snf(&[vec![2]]), vec![2]);
    }

    #[test]
    fn budget_is_enforced() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert!(matches!(smith_normal_form(&m, 3), Err(Error::TooLarge { .. })));
        assert_eq!(smith_normal_form(&m, 4).unwrap().len(), 2);
    }

    /// Determinantal divisors: the product of the first k invariant factors is the gcd of
    /// all k×k minors. Checked here for k = 1 and for the full product on square matrices.
    fn gcd_entries(a: &[Vec<i64>]) -> u64 {
        a.iter().flatten().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
    }

    fn det(a: &[Vec<i64>]) -> BigInt {
        let n = a.len();
        let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                sign = -sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    m[i][j] = (&m[c][c] * &m[i][j] - &m[i][c] * &m[c][j]) / &prev;
                }
            }
            prev = m[c][c].clone();
        }
        sign * prev
    }

    proptest! {
        #[test]
        fn divisor_chain_and_invariants(a in proptest::collection::vec(proptest::collection::vec(-6i64..7, 4), 4)) {
            let d = smith_normal_form(&SparseIntMatrix::from_dense(&a), DEFAULT_SNF_BUDGET).unwrap();
            for w in d.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            let g = gcd_entries(&a);
            if g == 0 {
                prop_assert!(d.is_empty());
            } else {
                prop_assert_eq!(&d[0], &BigUint::from(g));
            }
            let full = det(&a);
            if d.len() == 4 {
                let prod: BigUint = d.iter().product();
                prop_assert_eq!(prod, full.magnitude().clone());
            } else {
                prop_assert!(full.is_zero());
            }
            let rank = super::super::rank::rank_exact(&SparseIntMatrix::from_dense(&a));
            prop_assert_eq!(d.len(), rank);
        }
    }
}
