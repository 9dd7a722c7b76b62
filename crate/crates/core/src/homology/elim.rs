//! Sparse Gaussian elimination with a Markowitz-style pivot order, generic over the
//! coefficient ring. Over F_q every nonzero entry is a pivot; over Z only units are, which
//! keeps every row operation integral and leaves the non-unit remainder for a dense pass.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub(crate) trait Ring {
    type T: Copy + PartialEq + std::fmt::Debug;
    fn is_zero(&self, x: Self::T) -> bool;
    fn is_pivot(&self, x: Self::T) -> bool;
    /// Data needed to divide by a pivot, e.g. its inverse.
    fn pivot_inv(&self, pivot: Self::T) -> Self::T;
    /// `x / pivot` given `pivot_inv`.
    fn factor(&self, x: Self::T, inv: Self::T) -> Self::T;
    /// `x - f y`, or `None` on overflow.
    fn sub_mul(&self, x: Self::T, f: Self::T, y: Self::T) -> Option<Self::T>;
    fn neg_mul(&self, f: Self::T, y: Self::T) -> Option<Self::T>;
}

/// Integers with ±1 pivots.
pub(crate) struct UnitsOfZ;

impl Ring for UnitsOfZ {
    type T = i64;
    fn is_zero(&self, x: i64) -> bool {
        x == 0
    }
    fn is_pivot(&self, x: i64) -> bool {
        x == 1 || x == -1
    }
    fn pivot_inv(&self, pivot: i64) -> i64 {
        pivot
    }
    fn factor(&self, x: i64, inv: i64) -> i64 {
        x * inv
    }
    fn sub_mul(&self, x: i64, f: i64, y: i64) -> Option<i64> {
        x.checked_sub(f.checked_mul(y)?)
    }
    fn neg_mul(&self, f: i64, y: i64) -> Option<i64> {
        f.checked_mul(y)?.checked_neg()
    }
}

/// Integers modulo a prime below 2^63.
pub(crate) struct ModQ {
    pub q: u64,
}

impl ModQ {
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }
}

impl Ring for ModQ {
    type T = u64;
    fn is_zero(&self, x: u64) -> bool {
        x == 0
    }
    fn is_pivot(&self, x: u64) -> bool {
        x != 0
    }
    fn pivot_inv(&self, pivot: u64) -> u64 {
        self.pow(pivot, self.q - 2)
    }
    fn factor(&self, x: u64, inv: u64) -> u64 {
        self.mul(x, inv)
    }
    fn sub_mul(&self, x: u64, f: u64, y: u64) -> Option<u64> {
        let fy = self.mul(f, y);
        Some(if x >= fy { x - fy } else { x + (self.q - fy) })
    }
    fn neg_mul(&self, f: u64, y: u64) -> Option<u64> {
        let fy = self.mul(f, y);
        Some(if fy == 0 { 0 } else { self.q - fy })
    }
}

pub(crate) type SparseRow<T> = Vec<(u32, T)>;

pub(crate) struct Outcome<T> {
    pub pivots: usize,
    /// Rows still active (nonzero) when elimination stopped; their entries avoid every
    /// pivot column.
    pub residual: Vec<SparseRow<T>>,
    pub overflow: bool,
}

/// Eliminates `rows` (sparse, sorted by column, no zeros) over `ring`, stopping after
/// `limit` pivots if given.
pub(crate) fn eliminate<R: Ring>(
    ring: &R,
    ncols: usize,
    mut rows: Vec<SparseRow<R::T>>,
    limit: Option<usize>,
) -> Outcome<R::T> {
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0u32; ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut done = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> = (0..ncols)
        .filter(|&c| col_count[c] > 0)
        .map(|c| Reverse((col_count[c], c as u32)))
        .collect();
    let mut pivots = 0usize;
    let mut touched: Vec<u32> = Vec::new();
    let mut scratch: SparseRow<R::T> = Vec::new();
    if limit == Some(0) {
        heap.clear();
    }
    while let Some(Reverse((count, c))) = heap.pop() {
        let cu = c as usize;
        if done[cu] || count != col_count[cu] {
            continue;
        }
        if count == 0 {
            done[cu] = true;
            continue;
        }
        // live rows holding column c
        let mut holders: Vec<(u32, R::T)> = Vec::with_capacity(count as usize);
        col_rows[cu].sort_unstable();
        col_rows[cu].dedup();
        col_rows[cu].retain(|&i| {
            if !alive[i as usize] {
                return false;
            }
            let r = &rows[i as usize];
            match r.binary_search_by_key(&c, |e| e.0) {
                Ok(pos) => {
                    holders.push((i, r[pos].1));
                    true
                }
                Err(_) => false,
            }
        });
        debug_assert_eq!(holders.len(), count as usize);
        let Some(&(prow, pval)) = holders
            .iter()
            .filter(|(_, v)| ring.is_pivot(*v))
            .min_by_key(|(i, _)| rows[*i as usize].len())
        else {
            // no usable pivot here; left for the residual
            done[cu] = true;
            continue;
        };
        let inv = ring.pivot_inv(pval);
        let pivot_row = std::mem::take(&mut rows[prow as usize]);
        alive[prow as usize] = false;
        for &(col, _) in &pivot_row {
            col_count[col as usize] -= 1;
            touched.push(col);
        }
        for &(i, x) in &holders {
            if i == prow {
                continue;
            }
            let f = ring.factor(x, inv);
            let target = &rows[i as usize];
            scratch.clear();
            let (mut a, mut b) = (0, 0);
            while a < target.len() || b < pivot_row.len() {
                let ca = target.get(a).map_or(u32::MAX, |e| e.0);
                let cb = pivot_row.get(b).map_or(u32::MAX, |e| e.0);
                if ca < cb {
                    scratch.push(target[a]);
                    a += 1;
                } else if cb < ca {
                    let Some(v) = ring.neg_mul(f, pivot_row[b].1) else {
                        return overflow(rows, alive, pivots);
                    };
                    if !ring.is_zero(v) {
                        scratch.push((cb, v));
                        col_rows[cb as usize].push(i);
                        col_count[cb as usize] += 1;
                        touched.push(cb);
                    }
                    b += 1;
                } else {
                    let Some(v) = ring.sub_mul(target[a].1, f, pivot_row[b].1) else {
                        return overflow(rows, alive, pivots);
                    };
                    if ring.is_zero(v) {
                        col_count[ca as usize] -= 1;
                        touched.push(ca);
                    } else {
                        scratch.push((ca, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            std::mem::swap(&mut rows[i as usize], &mut scratch);
            if rows[i as usize].is_empty() {
                alive[i as usize] = false;
            }
        }
        done[cu] = true;
        col_rows[cu] = Vec::new();
        pivots += 1;
        if limit == Some(pivots) {
            break;
        }
        touched.sort_unstable();
        touched.dedup();
        for &t in &touched {
            if !done[t as usize] {
                heap.push(Reverse((col_count[t as usize], t)));
            }
        }
        touched.clear();
    }
    Outcome {
        pivots,
        residual: collect_residual(rows, &alive),
        overflow: false,
    }
}

fn collect_residual<T>(rows: Vec<SparseRow<T>>, alive: &[bool]) -> Vec<SparseRow<T>> {
    rows.into_iter()
        .zip(alive)
        .filter(|(r, &a)| a && !r.is_empty())
        .map(|(r, _)| r)
        .collect()
}

fn overflow<T>(rows: Vec<SparseRow<T>>, alive: Vec<bool>, pivots: usize) -> Outcome<T> {
    Outcome {
        pivots,
        residual: collect_residual(rows, &alive),
        overflow: true,
    }
}
