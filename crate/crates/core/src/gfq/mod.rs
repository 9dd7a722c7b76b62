//! Exact linear algebra and exhaustive enumeration over the prime field F_p.
//!
//! Vectors carry plain residues; the modulus travels separately as a [`PrimeField`].
//! ±-classes and projective points are stored by canonical representative, subspaces by
//! reduced row echelon basis, so structural equality is mathematical equality throughout.

mod field;
mod matrix;
mod subspace;
mod vector;

pub use field::{is_prime, FieldElem, PrimeField, MAX_PRIME};
pub use matrix::{columns_to_rows, det, identity, inverse, is_partial_basis, mat_mul, rank, rref, Rows};
pub use subspace::{
    count_avoiding_line, enumerate_subspaces, orientation_of, span, Orientation, OrientedSubspace,
    Subspace,
};
pub use vector::{
    all_vectors, canonicalize_pm, canonicalize_proj, enumerate_pm_vectors, enumerate_proj_vectors,
    PmVector, ProjVector, Vector,
};

pub(crate) use matrix::det_unchecked;
