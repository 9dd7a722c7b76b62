//! Dense matrices over F_p, stored as rows.

use super::field::{FieldElem, PrimeField};
use super::vector::Vector;
use crate::error::{Error, Result};

pub type Rows = Vec<Vec<u32>>;

/// Determinant by Gaussian elimination. Exact: every step stays in F_p.
pub fn det(field: &PrimeField, m: &[Vec<u32>]) -> Result<FieldElem> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!(
            "determinant of a {}-row matrix with row lengths {:?}",
            n,
            m.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    Ok(FieldElem {
        value: det_unchecked(field, m.to_vec()),
        modulus: field.p(),
    })
}

pub(crate) fn det_unchecked(field: &PrimeField, mut a: Rows) -> u32 {
    let n = a.len();
    let mut acc = 1u32 % field.p();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            acc = field.neg(acc);
        }
        let d = a[c][c];
        acc = field.mul(acc, d);
        let dinv = field.inv(d);
        for r in c + 1..n {
            let factor = field.mul(a[r][c], dinv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let v = field.mul(factor, a[c][j]);
                a[r][j] = field.sub(a[r][j], v);
            }
        }
    }
    acc
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(field: &PrimeField, rows: &[Vec<u32>]) -> (Rows, Vec<usize>) {
    let mut a: Rows = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = field.inv(a[r][c]);
        for j in c..ncols {
            a[r][j] = field.mul(a[r][j], inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                for j in c..ncols {
                    let v = field.mul(factor, a[r][j]);
                    a[i][j] = field.sub(a[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(field: &PrimeField, rows: &[Vec<u32>]) -> usize {
    rref(field, rows).1.len()
}

/// True iff the vectors are linearly independent (a subset of some basis).
pub fn is_partial_basis(field: &PrimeField, vs: &[Vector]) -> bool {
    if vs.is_empty() {
        return true;
    }
    let rows: Rows = vs.iter().map(|v| v.coords.clone()).collect();
    rank(field, &rows) == vs.len()
}

/// Matrix whose columns are the given vectors.
pub fn columns_to_rows(vs: &[&Vector]) -> Rows {
    let n = vs.first().map_or(0, |v| v.dim());
    (0..n)
        .map(|i| vs.iter().map(|v| v.coords[i]).collect())
        .collect()
}

pub fn mat_mul(field: &PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Rows {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(0u32, |acc, k| field.add(acc, field.mul(row[k], b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(field: &PrimeField, m: &[Vec<u32>]) -> Option<Rows> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: Rows = m
        .iter()
        .zip(identity(n))
        .map(|(r, id)| r.iter().copied().chain(id).collect())
        .collect();
    let (red, pivots) = rref(field, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}
