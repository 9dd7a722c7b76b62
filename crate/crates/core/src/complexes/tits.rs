//! The Tits building of F_p^n and its ±-oriented version, as order complexes.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{BuildOptions, Family, Simplex, SimplicialComplex, SizeGuard, VertexLabel};
use crate::error::{Error, Result};
use crate::formulas::gaussian_binomial;
use crate::gfq::{enumerate_subspaces, Orientation, OrientedSubspace, PrimeField, Subspace};

/// Simplex counts per dimension of the (oriented) building, by counting flags: a chain of
/// subspaces of dimensions `d_1 < ... < d_k` can be chosen in `∏ [d_(i+1) choose d_i]_p` ways
/// with `d_(k+1) = n`, and each member carries one of the orientation classes.
pub fn projected_tits_size(n: usize, p: u64, oriented: bool, max_dim: Option<usize>) -> Result<Vec<u128>> {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::Domain("tits building needs n >= 1".into()));
    }
    let orient = BigUint::from(if oriented { field.pm_class_count() } else { 1 });
    let gauss = |a: usize, b: usize| gaussian_binomial(a as u64, b as u64, p).expect("b <= a");
    // inside[j][d]: chains of j proper nonzero subspaces of a fixed d-dimensional space
    let mut inside = vec![vec![BigUint::zero(); n]; n];
    for d in 0..n {
        inside[0][d] = BigUint::one();
    }
    for j in 1..n {
        for d in 1..n {
            let mut acc = BigUint::zero();
            for e in 1..d {
                acc += gauss(d, e) * &inside[j - 1][e];
            }
            inside[j][d] = acc;
        }
    }
    let top = max_dim.map_or(n, |d| d + 1);
    let mut counts = Vec::new();
    for k in 1..n.min(top + 1) {
        let mut c = BigUint::zero();
        for d in 1..n {
            c += gauss(n, d) * &inside[k - 1][d];
        }
        c *= orient.pow(k as u32);
        if c.is_zero() {
            break;
        }
        counts.push(c.to_u128().unwrap_or(u128::MAX));
    }
    Ok(counts)
}

fn build_flags(n: usize, p: u64, oriented: bool, opts: &BuildOptions) -> Result<SimplicialComplex> {
    let family = if oriented { Family::TitsOriented } else { Family::Tits };
    let projected = projected_tits_size(n, p, oriented, opts.max_dim)?;
    let mut guard = SizeGuard::new(family.name(), opts, projected.iter().sum())?;
    let field = PrimeField::new(p)?;
    let spaces: Vec<Subspace> = (1..n)
        .map(|k| enumerate_subspaces(&field, n, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    // supersets[i]: spaces of larger dimension containing spaces[i], increasing index
    let supersets: Vec<Vec<usize>> = spaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            (i + 1..spaces.len())
                .filter(|&j| spaces[j].dim() > s.dim() && spaces[j].contains(&field, s))
                .collect()
        })
        .collect();
    let classes: Vec<u32> = if oriented {
        field.pm_classes().collect()
    } else {
        vec![1]
    };
    let per = classes.len();
    let vertices: Vec<VertexLabel> = spaces
        .iter()
        .flat_map(|s| {
            classes.iter().map(move |&o| {
                if oriented {
                    VertexLabel::Oriented(OrientedSubspace {
                        space: s.clone(),
                        orient: Orientation(o),
                    })
                } else {
                    VertexLabel::Space(s.clone())
                }
            })
        })
        .collect();
    let mut levels: Vec<Vec<Simplex>> = vec![(0..vertices.len() as u32)
        .map(|v| Simplex::standard(vec![v]))
        .collect()];
    guard.add(vertices.len())?;
    let max_dim = opts.max_dim.unwrap_or(usize::MAX);
    while levels.len() <= max_dim {
        let mut next = Vec::new();
        for s in levels.last().unwrap() {
            let top = *s.vertices.last().unwrap() as usize / per;
            for &j in &supersets[top] {
                for o in 0..per {
                    let mut vertices = s.vertices.clone();
                    vertices.push((j * per + o) as u32);
                    next.push(Simplex::standard(vertices));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        guard.add(next.len())?;
        levels.push(next);
    }
    Ok(SimplicialComplex {
        family,
        n,
        m: 0,
        p,
        vertices,
        simplices: levels,
    })
}

/// Order complex of the proper nonzero subspaces of F_p^n.
pub fn build_tits(n: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build_flags(n, p, false, opts)
}

/// Order complex of ±-oriented proper nonzero subspaces, ordered by inclusion of the
/// underlying subspaces; orientations play no role in the order.
pub fn build_tits_oriented(n: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build_flags(n, p, true, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(k: &SimplicialComplex) -> Vec<u64> {
        k.stats().counts
    }

    #[test]
    fn examples() {
        let o = BuildOptions::default();
        assert_eq!(counts(&build_tits(2, 5, &o).unwrap()), vec![6]);
        assert_eq!(counts(&build_tits(3, 2, &o).unwrap()), vec![14, 21]);
        let empty = build_tits(1, 7, &o).unwrap();
        assert_eq!(empty.dim(), -1);
        assert_eq!(empty.stats().euler, 0.into());
        assert_eq!(counts(&build_tits_oriented(2, 5, &o).unwrap()), vec![12]);
        let k = build_tits_oriented(3, 5, &o).unwrap();
        assert_eq!(counts(&k), vec![124, 744]);
        assert_eq!(k.stats().euler, (-620).into());
    }

    #[test]
    fn orientation_is_trivial_exactly_for_small_primes() {
        let o = BuildOptions::default();
        for p in [2u64, 3, 5, 7] {
            for n in 2..=3 {
                let plain = build_tits(n, p, &o).unwrap();
                let oriented = build_tits_oriented(n, p, &o).unwrap();
                let same = plain.simplices == oriented.simplices;
                assert_eq!(same, p <= 3, "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn projections_match_builds() {
        let o = BuildOptions::default();
        for p in [2u64, 3, 5] {
            for n in 1..=4 {
                for oriented in [false, true] {
                    let k = build_flags(n, p, oriented, &o).unwrap();
                    let want: Vec<u128> = counts(&k).iter().map(|&c| c as u128).collect();
                    assert_eq!(projected_tits_size(n, p, oriented, None).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn skeleton_and_cap() {
        let k = build_tits(4, 2, &BuildOptions::skeleton(1)).unwrap();
        assert_eq!(k.dim(), 1);
        k.validate().unwrap();
        let tiny = BuildOptions {
            max_simplices: 10,
            max_dim: None,
        };
        assert!(matches!(build_tits(3, 2, &tiny), Err(Error::TooLarge { .. })));
    }
}
