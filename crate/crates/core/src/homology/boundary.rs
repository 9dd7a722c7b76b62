use super::matrix::SparseIntMatrix;
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};

/// `∂_k : C_k → C_(k-1)`, rows and columns in the complex's simplex order. In the reduced
/// complex `∂_0` is the augmentation `C_0 → Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub matrix: SparseIntMatrix,
}

/// The augmentation `C_0 → Z`: a single row of ones.
pub fn augmentation(k: &SimplicialComplex) -> SparseIntMatrix {
    let n = k.count(0);
    SparseIntMatrix {
        rows: 1,
        cols: n,
        columns: vec![vec![(0, 1)]; n],
    }
}

/// `∂_d` for `d >= 1`, with face signs `(-1)^i` on sorted vertices.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Result<SparseIntMatrix> {
    assert!(d >= 1, "use `augmentation` for degree 0");
    let mut face = Vec::with_capacity(d);
    let columns = k
        .level(d)
        .iter()
        .map(|s| {
            let mut col = Vec::with_capacity(d + 1);
            for skip in 0..=d {
                face.clear();
                face.extend(s.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let row = k.index_of(&face).ok_or_else(|| {
                    Error::MalformedComplex(format!("face {face:?} of {:?} is missing", s.vertices))
                })?;
                col.push((row as u32, if skip % 2 == 0 { 1 } else { -1 }));
            }
            col.sort_unstable_by_key(|e| e.0);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseIntMatrix {
        rows: k.count(d - 1),
        cols: k.count(d),
        columns,
    })
}

/// Fails unless `outer ∘ inner = 0`.
pub(crate) fn check_composite(outer: &SparseIntMatrix, inner: &SparseIntMatrix, degree: usize) -> Result<()> {
    match outer.mul(inner) {
        Some(c) if c.is_zero() => Ok(()),
        _ => Err(Error::MalformedComplex(format!(
            "boundary composite in degree {degree} is nonzero"
        ))),
    }
}

/// All boundary maps of `k`, from degree 1 (degree 0 when `reduced`) to `dim k`, after
/// checking `∂∂ = 0`.
pub fn boundary_matrices(k: &SimplicialComplex, reduced: bool) -> Result<Vec<BoundaryMatrix>> {
    let mut out: Vec<BoundaryMatrix> = Vec::new();
    if reduced && k.count(0) > 0 {
        out.push(BoundaryMatrix {
            degree: 0,
            matrix: augmentation(k),
        });
    }
    for d in 1..=k.dim().max(0) as usize {
        let matrix = boundary_matrix(k, d)?;
        if let Some(prev) = out.last() {
            check_composite(&prev.matrix, &matrix, d)?;
        }
        out.push(BoundaryMatrix { degree: d, matrix });
    }
    Ok(out)
}
