use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::field::PrimeField;
use super::matrix::{det_unchecked, rref, Rows};
use super::vector::{all_vectors, Vector};
use crate::error::{Error, Result};

/// A subspace of F_p^n identified by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Rows,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Rows {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.iter().cloned().map(Vector::new).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, field: &PrimeField, v: &Vector) -> Option<Vec<u32>> {
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v.coords[c]).collect();
        let mut residual = v.coords.clone();
        for (row, &c) in self.basis.iter().zip(&coeffs) {
            if c == 0 {
                continue;
            }
            for (r, &b) in residual.iter_mut().zip(row) {
                *r = field.sub(*r, field.mul(c, b));
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains_vector(&self, field: &PrimeField, v: &Vector) -> bool {
        self.coordinates(field, v).is_some()
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, field: &PrimeField, other: &Subspace) -> bool {
        other.dim() <= self.dim()
            && other
                .basis
                .iter()
                .all(|r| self.contains_vector(field, &Vector::new(r.clone())))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", Vector::new(row.clone()))?;
        }
        Ok(())
    }
}

pub fn span(field: &PrimeField, ambient: usize, vs: &[Vector]) -> Result<Subspace> {
    if let Some(v) = vs.iter().find(|v| v.dim() != ambient) {
        return Err(Error::Shape(format!(
            "vector of length {} in F_p^{ambient}",
            v.dim()
        )));
    }
    let rows: Rows = vs.iter().map(|v| v.coords.clone()).collect();
    let (basis, pivots) = rref(field, &rows);
    Ok(Subspace {
        ambient,
        basis,
        pivots,
    })
}

/// A class in F_p^× / {±1}, by its representative in `[1, (p-1)/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Orientation(pub u32);

/// The ±-orientation carried by an ordered basis of `space`, relative to its echelon basis.
pub fn orientation_of(field: &PrimeField, space: &Subspace, vs: &[Vector]) -> Result<Orientation> {
    if vs.len() != space.dim() {
        return Err(Error::NotABasis);
    }
    let mut change: Rows = Vec::with_capacity(vs.len());
    for v in vs {
        change.push(space.coordinates(field, v).ok_or(Error::NotABasis)?);
    }
    let d = det_unchecked(field, change);
    if d == 0 {
        return Err(Error::NotABasis);
    }
    Ok(Orientation(field.pm_class(d)))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrientedSubspace {
    pub space: Subspace,
    pub orient: Orientation,
}

impl fmt::Display for OrientedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.space, self.orient.0)
    }
}

/// Every `k`-dimensional subspace of F_p^n, each once, sorted by echelon basis.
pub fn enumerate_subspaces(field: &PrimeField, n: usize, k: usize) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::Domain(format!("no {k}-dimensional subspaces of F_p^{n}")));
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot column
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for fill in all_vectors(field, free.len()) {
            let mut basis = vec![vec![0u32; n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                basis[r][c] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&fill.coords) {
                basis[r][c] = x;
            }
            out.push(Subspace {
                ambient: n,
                basis,
                pivots: pivots.clone(),
            });
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of `k`-dimensional subspaces of F_p^n that do not contain the line `line`,
/// counted by exhaustive enumeration.
pub fn count_avoiding_line(
    field: &PrimeField,
    n: usize,
    k: usize,
    line: &Subspace,
) -> Result<BigUint> {
    if line.dim() != 1 || line.ambient() != n {
        return Err(Error::Domain("expected a line in F_p^n".into()));
    }
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("need 1 <= k <= n-1, got k = {k}")));
    }
    let x = Vector::new(line.basis()[0].clone());
    let count = enumerate_subspaces(field, n, k)?
        .iter()
        .filter(|w| !w.contains_vector(field, &x))
        .count();
    Ok(BigUint::from(count))
}
