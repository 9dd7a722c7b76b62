//! Integral simplicial homology: boundary matrices, ranks (exact or multi-modular), Smith
//! normal forms, connectivity and surface checks, and the relative homology computing the
//! coinvariants of the Steinberg module.

mod betti;
mod boundary;
mod checks;
mod coinvariants;
pub(crate) mod elim;
mod matrix;
mod rank;
mod snf;

pub use betti::{betti, HomologyOptions, HomologyReport, RankRecord, DEFAULT_SEED};
pub use boundary::{augmentation, boundary_matrices, boundary_matrix, BoundaryMatrix};
pub use checks::{acyclicity_check, surface_check, AcyclicityReport, SurfaceReport};
pub use coinvariants::{coinvariants_rank, kernel_report, relative_boundary, CoinvariantsReport, KernelReport};
pub use matrix::{parse_coo, write_coo, SparseIntMatrix};
pub use rank::{modular_primes, rank, rank_exact, rank_mod, rank_multimodular, RankMethod, EXACT_LIMIT};
pub use snf::{smith_normal_form, DEFAULT_SNF_BUDGET};
