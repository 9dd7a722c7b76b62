use std::fmt;

use serde::Serialize;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// A vector in F_p^n. Coordinates are residues in `[0, p)`; the modulus lives in the
/// [`PrimeField`] passed to each operation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vector {
    pub coords: Vec<u32>,
}

impl Vector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn from_ints(field: &PrimeField, coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    /// The `i`-th standard basis vector of F_p^n.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Self { coords }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn first_nonzero(&self) -> Option<(usize, u32)> {
        self.coords.iter().copied().enumerate().find(|&(_, c)| c != 0)
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, field: &PrimeField, s: u32) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| field.mul(c, s)).collect(),
        }
    }

    /// `self * a + other * b`.
    pub fn combine(&self, field: &PrimeField, a: u32, other: &Vector, b: u32) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| field.add(field.mul(x, a), field.mul(y, b)))
                .collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The ±-class {v, -v} of a nonzero vector, stored by its canonical representative:
/// the first nonzero coordinate lies in `[1, (p-1)/2]` (any value when p = 2).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PmVector {
    rep: Vector,
}

impl PmVector {
    pub fn rep(&self) -> &Vector {
        &self.rep
    }

    pub fn into_rep(self) -> Vector {
        self.rep
    }
}

/// The F_p^×-orbit of a nonzero vector, stored with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjVector {
    rep: Vector,
}

impl ProjVector {
    pub fn rep(&self) -> &Vector {
        &self.rep
    }
}

pub fn canonicalize_pm(field: &PrimeField, v: &Vector) -> Result<PmVector> {
    let (_, lead) = v.first_nonzero().ok_or(Error::ZeroVector)?;
    let rep = if field.pm_class(lead) == lead {
        v.clone()
    } else {
        v.neg(field)
    };
    Ok(PmVector { rep })
}

pub fn canonicalize_proj(field: &PrimeField, v: &Vector) -> Result<ProjVector> {
    let (_, lead) = v.first_nonzero().ok_or(Error::ZeroVector)?;
    Ok(ProjVector {
        rep: v.scale(field, field.inv(lead)),
    })
}

/// Every vector of F_p^n in lexicographic order, the zero vector first.
pub fn all_vectors(field: &PrimeField, n: usize) -> impl Iterator<Item = Vector> {
    let p = field.p();
    let mut current = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < p {
                current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(Vector::new(out))
    })
}

/// All ±-classes of nonzero vectors in F_p^n, lexicographic by representative.
pub fn enumerate_pm_vectors(field: &PrimeField, n: usize) -> Vec<PmVector> {
    all_vectors(field, n)
        .filter(|v| match v.first_nonzero() {
            Some((_, lead)) => field.pm_class(lead) == lead,
            None => false,
        })
        .map(|rep| PmVector { rep })
        .collect()
}

/// All points of the projective space P^{n-1}(F_p), lexicographic by representative.
pub fn enumerate_proj_vectors(field: &PrimeField, n: usize) -> Vec<ProjVector> {
    all_vectors(field, n)
        .filter(|v| matches!(v.first_nonzero(), Some((_, 1))))
        .map(|rep| ProjVector { rep })
        .collect()
}
