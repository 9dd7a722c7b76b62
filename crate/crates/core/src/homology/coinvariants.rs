//! The coinvariants `(St_n(Q))_{Γ_n(p)}` as the relative homology
//! `H_(n-1)(BDA_n, BDA'_n)`: the cokernel of the relative boundary from augmented
//! full-span `n`-simplices to standard full-span `(n-1)`-simplices.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::betti::HomologyOptions;
use super::matrix::SparseIntMatrix;
use super::rank::{rank, RankMethod};
use super::snf::smith_normal_form;
use crate::complexes::{build_bda_pm, BuildOptions, SimplexKind};
use crate::error::{Error, Result};
use crate::formulas::{gaussian_binomial, kernel_coefficient, modular_genus, steinberg_rank, t_sequence};

/// The relative boundary matrix: rows are standard `(n-1)`-simplices of `BDA^±_n(F_p)`,
/// columns its augmented `n`-simplices. Only the three faces that drop a core vertex have
/// full span, so every column has exactly three entries.
pub fn relative_boundary(n: usize, p: u64, build: &BuildOptions) -> Result<SparseIntMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!("coinvariants need n >= 2, got {n}")));
    }
    let k = build_bda_pm(n, 0, p, build)?;
    let faces = k.level(n - 1);
    let row_of: Vec<Option<u32>> = {
        let mut next = 0u32;
        faces
            .iter()
            .map(|s| {
                (s.kind == SimplexKind::Standard).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let rows = row_of.iter().flatten().count();
    let mut columns = Vec::with_capacity(k.count(n));
    for s in k.level(n) {
        let core = s
            .core
            .as_ref()
            .ok_or_else(|| Error::MalformedComplex("top simplex without a core".into()))?;
        let mut col = Vec::with_capacity(3);
        for (i, v) in s.vertices.iter().enumerate() {
            let face: Vec<u32> = s.vertices.iter().copied().filter(|w| w != v).collect();
            let idx = k
                .index_of(&face)
                .ok_or_else(|| Error::MalformedComplex(format!("face {face:?} missing")))?;
            match (core.contains(v), row_of[idx]) {
                (true, Some(r)) => col.push((r, if i % 2 == 0 { 1 } else { -1 })),
                (false, None) => {}
                _ => {
                    return Err(Error::AssertionFailure(format!(
                        "face {face:?} of {:?} has unexpected span",
                        s.vertices
                    )))
                }
            }
        }
        if col.len() != 3 {
            return Err(Error::AssertionFailure(format!("column for {:?} has {} entries", s.vertices, col.len())));
        }
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    Ok(SparseIntMatrix {
        rows,
        cols: columns.len(),
        columns,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvariantsReport {
    pub n: usize,
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Rank of the cokernel, i.e. of the coinvariants.
    pub coinv_rank: u64,
    pub method: RankMethod,
    pub seed: u64,
    /// Torsion of the cokernel when a Smith normal form was computed.
    pub torsion: Option<Vec<String>>,
}

/// Rank of `(St_n(Q))_{Γ_n(p)}`, the top cohomology of `Γ_n(p)`.
pub fn coinvariants_rank(n: usize, p: u64, build: &BuildOptions, opts: &HomologyOptions) -> Result<CoinvariantsReport> {
    let m = relative_boundary(n, p, build)?;
    let (rank, method, torsion) = match opts.snf.then(|| smith_normal_form(&m, opts.snf_budget)) {
        Some(Ok(d)) => {
            let t = d.iter().filter(|x| **x != BigUint::from(1u8)).map(|x| x.to_string()).collect();
            (d.len(), RankMethod::Exact, Some(t))
        }
        Some(Err(Error::TooLarge { .. })) | None => {
            let (r, method) = rank(&m, opts.seed, Some(m.rows.min(m.cols)))?;
            (r, method, None)
        }
        Some(Err(e)) => return Err(e),
    };
    Ok(CoinvariantsReport {
        n,
        p,
        rows: m.rows,
        cols: m.cols,
        rank,
        coinv_rank: (m.rows - rank) as u64,
        method,
        seed: opts.seed,
        torsion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub p: u64,
    pub coinv_rank: u64,
    pub t_n: u64,
    pub kernel_rank: u64,
    pub predicted_kernel_lower_bound: u64,
    /// `kernel_rank = 0` for `p <= 5`, `kernel_rank >= predicted` otherwise.
    pub holds: bool,
    pub method: RankMethod,
}

fn small(v: BigUint) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Domain(format!("{v} does not fit in 64 bits")))
}

/// Size of the kernel of the surjection from the coinvariants onto `H̃_(n-2)(TD_n(F_p))`,
/// with the lower bound predicted for it. For `n = 2` the kernel is `H_1(BDA_2)`, of rank
/// twice the modular genus; for `n >= 3` the bound is
/// `(p+2)(p-3)(p-5)(p-1)/24 · [n choose 2]_p · t_(n-2)`.
pub fn kernel_report(n: usize, p: u64, build: &BuildOptions, opts: &HomologyOptions) -> Result<KernelReport> {
    let c = coinvariants_rank(n, p, build, opts)?;
    let (t_n, predicted) = if p == 2 {
        (small(steinberg_rank(2, n as u64))?, 0)
    } else {
        let t = t_sequence(p, n.max(1))?;
        let predicted = if n == 2 {
            small(modular_genus(p)? * 2u32)?
        } else {
            small(kernel_coefficient(p)? * gaussian_binomial(n as u64, 2, p)? * &t.values[n - 2])?
        };
        (small(t.values[n].clone())?, predicted)
    };
    let kernel_rank = c.coinv_rank.checked_sub(t_n).ok_or_else(|| {
        Error::AssertionFailure(format!(
            "coinvariants rank {} is below t_{n} = {t_n}; the map cannot be onto",
            c.coinv_rank
        ))
    })?;
    let holds = if p <= 5 { kernel_rank == 0 } else { kernel_rank >= predicted };
    Ok(KernelReport {
        n,
        p,
        coinv_rank: c.coinv_rank,
        t_n,
        kernel_rank,
        predicted_kernel_lower_bound: predicted,
        holds,
        method: c.method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coinv(n: usize, p: u64) -> u64 {
        coinvariants_rank(n, p, &BuildOptions::default(), &HomologyOptions::default())
            .unwrap()
            .coinv_rank
    }

    #[test]
    fn rank_two() {
        assert_eq!(coinv(2, 5), 11);
        assert_eq!(coinv(2, 7), 29);
        assert_eq!(coinv(2, 3), 3);
        assert_eq!(coinv(2, 2), 2);
    }

    #[test]
    fn small_rank_three() {
        assert_eq!(coinv(3, 2), 8);
        assert_eq!(coinv(3, 3), 27);
    }

    #[test]
    fn columns_have_three_entries() {
        let m = relative_boundary(2, 5, &BuildOptions::default()).unwrap();
        assert_eq!((m.rows, m.cols), (30, 20));
        assert!(m.columns.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn kernels() {
        let b = BuildOptions::default();
        let h = HomologyOptions::default().with_snf();
        let k = kernel_report(2, 5, &b, &h).unwrap();
        assert_eq!((k.kernel_rank, k.holds), (0, true));
        let k = kernel_report(2, 7, &b, &h).unwrap();
        assert_eq!((k.coinv_rank, k.t_n, k.kernel_rank, k.predicted_kernel_lower_bound), (29, 23, 6, 6));
        assert!(k.holds);
    }
}
