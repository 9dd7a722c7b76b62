//! Top-degree cohomology of level-p principal congruence subgroups of SL_n(Z).
//!
//! Two independent routes to the same numbers:
//!
//! * [`formulas`] evaluates the exact rank formulas (the recursion for `t_n`, Steinberg ranks,
//!   Paraschivescu's bound, the top-cohomology lower bound) with arbitrary-precision integers.
//! * [`complexes`] builds the finite simplicial complexes over F_p (bases, augmented
//!   determinant-1 bases, Tits buildings and their ±-oriented variant) and [`homology`]
//!   computes their integral homology, so small cases of every formula can be checked directly.
//!
//! [`lifting`] realizes the surjection SL_n(Z) → SL_n(F_p) constructively.

pub mod complexes;
pub mod error;
pub mod formulas;
pub mod gfq;
pub mod homology;
pub mod lifting;

pub use error::{Error, Result};
