use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::boundary::{augmentation, boundary_matrix, check_composite};
use super::matrix::SparseIntMatrix;
use super::rank::{rank, RankMethod};
use super::snf::{smith_normal_form, DEFAULT_SNF_BUDGET};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};

/// Default seed for the modular primes.
pub const DEFAULT_SEED: u64 = 0x7a11_5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub seed: u64,
    /// Compute torsion via Smith normal form where the dense remainder fits `snf_budget`.
    pub snf: bool,
    pub snf_budget: u128,
    /// Report degrees up to this one only; boundary maps above `max_degree + 1` are skipped.
    pub max_degree: Option<i64>,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            snf: false,
            snf_budget: DEFAULT_SNF_BUDGET,
            max_degree: None,
        }
    }
}

impl HomologyOptions {
    pub fn with_snf(mut self) -> Self {
        self.snf = true;
        self
    }

    pub fn through(mut self, degree: i64) -> Self {
        self.max_degree = Some(degree);
        self
    }
}

/// How the rank of one boundary map was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub method: RankMethod,
    /// Elementary divisors above 1, when a Smith normal form was computed.
    #[serde(serialize_with = "ser_opt_list")]
    pub torsion: Option<Vec<BigUint>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub reduced: bool,
    /// Degree of `betti[0]`: -1 for reduced homology, 0 otherwise.
    pub first_degree: i64,
    pub betti: Vec<u64>,
    /// Per degree, the torsion coefficients of `H_k`; `None` where no Smith normal form ran
    /// (not requested, or over budget).
    #[serde(serialize_with = "ser_torsion")]
    pub torsion: Vec<Option<Vec<BigUint>>>,
    /// Alternating sum of chain ranks over all degrees of the (augmented) complex.
    pub euler: i64,
    /// `multi-modular` if any rank was found that way.
    pub method: RankMethod,
    pub seed: u64,
    pub ranks: Vec<RankRecord>,
    /// Whether every degree of the complex is covered, so the Euler identity was checked.
    pub complete: bool,
}

impl HomologyReport {
    pub fn betti_at(&self, degree: i64) -> Option<u64> {
        let i = usize::try_from(degree - self.first_degree).ok()?;
        self.betti.get(i).copied()
    }

    pub fn torsion_at(&self, degree: i64) -> Option<&[BigUint]> {
        let i = usize::try_from(degree - self.first_degree).ok()?;
        self.torsion.get(i)?.as_deref()
    }

    pub fn last_degree(&self) -> i64 {
        self.first_degree + self.betti.len() as i64 - 1
    }

    /// Betti number of the highest reported degree.
    pub fn top_betti(&self) -> u64 {
        self.betti.last().copied().unwrap_or(0)
    }
}

fn ser_list<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

fn ser_opt_list<S: Serializer>(v: &Option<Vec<BigUint>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_list(v, s),
        None => s.serialize_none(),
    }
}

fn ser_torsion<S: Serializer>(v: &[Option<Vec<BigUint>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.as_ref().map(|t| t.iter().map(|d| d.to_string()).collect::<Vec<_>>())))
}

struct MapRank {
    rank: usize,
    method: RankMethod,
    torsion: Option<Vec<BigUint>>,
}

fn map_rank(m: &SparseIntMatrix, limit: usize, opts: &HomologyOptions) -> Result<MapRank> {
    if opts.snf {
        match smith_normal_form(m, opts.snf_budget) {
            Ok(d) => {
                return Ok(MapRank {
                    rank: d.len(),
                    method: RankMethod::Exact,
                    torsion: Some(d.into_iter().filter(|x| *x != BigUint::from(1u8)).collect()),
                })
            }
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (rank, method) = rank(m, opts.seed, Some(limit))?;
    Ok(MapRank {
        rank,
        method,
        torsion: None,
    })
}

/// Integral (reduced, if asked) homology of `k`: Betti numbers from boundary ranks, and torsion
/// from Smith normal forms when `opts.snf` is set.
pub fn betti(k: &SimplicialComplex, reduced: bool, opts: &HomologyOptions) -> Result<HomologyReport> {
    let dim = k.dim();
    let lo: i64 = if reduced { -1 } else { 0 };
    let hi = opts.max_degree.map_or(dim, |d| d.min(dim));
    let chains = |d: i64| -> usize {
        if d == -1 {
            usize::from(reduced)
        } else {
            k.count(d as usize)
        }
    };
    // ranks[d - lo] = rank ∂_d, for d in lo..=hi+1; ∂_lo = 0 and ∂_(dim+1) = 0
    let mut ranks = vec![0usize];
    let mut records = Vec::new();
    let mut torsion: Vec<Option<Vec<BigUint>>> = vec![None; (hi - lo + 1).max(0) as usize];
    let mut prev: Option<SparseIntMatrix> = None;
    for d in lo + 1..=hi + 1 {
        if d > dim {
            ranks.push(0);
            if opts.snf && d - 1 >= lo {
                torsion[(d - 1 - lo) as usize] = Some(Vec::new());
            }
            continue;
        }
        let m = if d == 0 {
            augmentation(k)
        } else {
            boundary_matrix(k, d as usize)?
        };
        if let Some(p) = &prev {
            check_composite(p, &m, d as usize)?;
        }
        let limit = chains(d - 1) - ranks[(d - 1 - lo) as usize];
        let r = map_rank(&m, limit, opts)?;
        if r.rank > limit {
            return Err(Error::AssertionFailure(format!("rank of ∂_{d} exceeds its bound {limit}")));
        }
        if d - 1 >= lo && d - 1 <= hi {
            torsion[(d - 1 - lo) as usize] = r.torsion.clone();
        }
        records.push(RankRecord {
            degree: d as usize,
            rows: m.rows,
            cols: m.cols,
            rank: r.rank,
            method: r.method,
            torsion: r.torsion,
        });
        ranks.push(r.rank);
        prev = Some(m);
    }
    let betti: Vec<u64> = (lo..=hi)
        .map(|d| {
            let i = (d - lo) as usize;
            (chains(d) - ranks[i] - ranks[i + 1]) as u64
        })
        .collect();
    let euler: i64 = (lo..=dim)
        .map(|d| if d.rem_euclid(2) == 0 { chains(d) as i64 } else { -(chains(d) as i64) })
        .sum();
    let complete = hi == dim;
    if complete {
        let alt: i64 = betti
            .iter()
            .zip(lo..)
            .map(|(&b, d)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if alt != euler {
            return Err(Error::AssertionFailure(format!(
                "Betti alternating sum {alt} differs from Euler characteristic {euler}"
            )));
        }
    }
    let method = records
        .iter()
        .map(|r| r.method)
        .max()
        .unwrap_or(RankMethod::Exact);
    Ok(HomologyReport {
        reduced,
        first_degree: lo,
        betti,
        torsion,
        euler,
        method,
        seed: opts.seed,
        ranks: records,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_b_pm, build_bda_pm, build_tits, build_tits_oriented, BuildOptions};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn circle_and_empty() {
        let r = betti(&circle(), true, &HomologyOptions::default()).unwrap();
        assert_eq!((r.first_degree, r.betti.clone()), (-1, vec![0, 0, 1]));
        assert_eq!(r.euler, -1 + 3 - 3);
        let r = betti(&circle(), false, &HomologyOptions::default().with_snf()).unwrap();
        assert_eq!(r.betti, vec![1, 1]);
        assert_eq!(r.torsion_at(0), Some(&[][..]));
        let empty = SimplicialComplex::from_facets(0, &[]).unwrap();
        let r = betti(&empty, true, &HomologyOptions::default()).unwrap();
        assert_eq!((r.first_degree, r.betti.clone()), (-1, vec![1]));
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex triangulation of RP^2
        let facets: Vec<Vec<u32>> = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        let k = SimplicialComplex::from_facets(6, &facets).unwrap();
        let r = betti(&k, false, &HomologyOptions::default().with_snf()).unwrap();
        assert_eq!(r.betti, vec![1, 0, 0]);
        assert_eq!(r.torsion_at(1), Some(&[BigUint::from(2u8)][..]));
    }

    #[test]
    fn buildings() {
        let o = BuildOptions::default();
        let r = betti(&build_tits(3, 2, &o).unwrap(), true, &HomologyOptions::default()).unwrap();
        assert_eq!(r.betti, vec![0, 0, 8]);
        assert_eq!(r.euler, -1 + 14 - 21);
        let r = betti(&build_tits_oriented(3, 5, &o).unwrap(), true, &HomologyOptions::default()).unwrap();
        assert_eq!(r.betti, vec![0, 0, 621]);
        assert_eq!(r.method, RankMethod::Exact);
    }

    #[test]
    fn truncation_and_snf_agree() {
        let k = build_bda_pm(2, 0, 7, &BuildOptions::default()).unwrap();
        let full = betti(&k, true, &HomologyOptions::default()).unwrap();
        assert_eq!(full.betti, vec![0, 0, 6, 1]);
        let part = betti(&k, true, &HomologyOptions::default().with_snf().through(1)).unwrap();
        assert_eq!(part.betti, vec![0, 0, 6]);
        assert!(!part.complete);
        assert_eq!(part.torsion_at(1), Some(&[][..]));
    }

    #[test]
    fn multimodular_path_matches() {
        // 168 vertices and 12348 edges: past the exact-rank limit
        let k = build_b_pm(2, 1, 7, &BuildOptions::default()).unwrap();
        let r = betti(&k, true, &HomologyOptions::default()).unwrap();
        assert_eq!(r.method, RankMethod::MultiModular);
        assert!(r.betti[..r.betti.len() - 1].iter().all(|&b| b == 0));
        let s = betti(&k, true, &HomologyOptions::default().with_snf()).unwrap();
        assert_eq!(r.betti, s.betti);
    }
}
