use std::collections::BTreeSet;

use super::{Family, Simplex, SimplexKind, SimplicialComplex};
use crate::error::{Error, Result};

/// The link of `sigma` (sorted vertex ids) in `k`: all `η` disjoint from `sigma` with
/// `η ∪ sigma ∈ k`, vertices renumbered in increasing order of their old ids.
///
/// Classification is inherited from `η ∪ sigma`: standard stays standard; an additive
/// simplex whose core lies inside `η` is internally additive; one whose core reaches into
/// `sigma` is externally additive, with the core restricted to `η`.
pub fn link(k: &SimplicialComplex, sigma: &[u32]) -> Result<SimplicialComplex> {
    if !sigma.windows(2).all(|w| w[0] < w[1]) || !k.contains(sigma) {
        return Err(Error::NotASimplex(sigma.to_vec()));
    }
    if sigma.is_empty() {
        return Ok(k.clone());
    }
    let outside = |v: &u32| sigma.binary_search(v).is_err();
    let mut found: Vec<BTreeSet<Simplex>> = Vec::new();
    for level in k.simplices.iter().skip(sigma.len()) {
        let mut here = BTreeSet::new();
        for tau in level {
            if !sigma.iter().all(|v| tau.vertices.binary_search(v).is_ok()) {
                continue;
            }
            let eta: Vec<u32> = tau.vertices.iter().copied().filter(outside).collect();
            let (kind, core) = match &tau.core {
                None => (SimplexKind::Standard, None),
                Some(core) => {
                    let inner: Vec<u32> = core.iter().copied().filter(outside).collect();
                    if inner.is_empty() {
                        (SimplexKind::Standard, None)
                    } else if inner.len() == core.len() {
                        (tau.kind, Some(inner))
                    } else {
                        (SimplexKind::ExternallyAdditive, Some(inner))
                    }
                }
            };
            here.insert(Simplex {
                vertices: eta,
                kind,
                core,
            });
        }
        found.push(here);
    }
    let old_ids: Vec<u32> = found
        .first()
        .map(|l| l.iter().map(|s| s.vertices[0]).collect())
        .unwrap_or_default();
    let renumber = |v: u32| old_ids.binary_search(&v).expect("link vertex") as u32;
    let mut simplices: Vec<Vec<Simplex>> = found
        .into_iter()
        .map(|level| {
            let mut out: Vec<Simplex> = level
                .into_iter()
                .map(|s| Simplex {
                    vertices: s.vertices.iter().map(|&v| renumber(v)).collect(),
                    kind: s.kind,
                    core: s.core.map(|c| c.iter().map(|&v| renumber(v)).collect()),
                })
                .collect();
            out.sort();
            out
        })
        .collect();
    while simplices.len() > 1 && simplices.last().is_some_and(Vec::is_empty) {
        simplices.pop();
    }
    if simplices.is_empty() {
        simplices.push(Vec::new());
    }
    Ok(SimplicialComplex {
        family: Family::Link,
        n: k.n,
        m: k.m,
        p: k.p,
        vertices: old_ids.iter().map(|&v| k.vertices[v as usize].clone()).collect(),
        simplices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_b_pm, build_bda_pm, BuildOptions, VertexLabel};
    use crate::gfq::{canonicalize_pm, inverse, mat_mul, PrimeField, Vector};

    #[test]
    fn link_in_triangle_boundary() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let l = link(&k, &[0]).unwrap();
        assert_eq!(l.stats().counts, vec![2]);
        assert_eq!(l.vertices, vec![VertexLabel::Plain(1), VertexLabel::Plain(2)]);
        assert_eq!(link(&k, &[]).unwrap(), k);
        assert!(matches!(link(&k, &[0, 1, 2]), Err(Error::NotASimplex(_))));
    }

    #[test]
    fn link_of_e1_is_the_next_family_member() {
        let o = BuildOptions::default();
        let k = build_b_pm(2, 0, 5, &o).unwrap();
        let e1 = k.vertices.iter().position(|v| v.to_string() == "(1,0)").unwrap() as u32;
        let l = link(&k, &[e1]).unwrap();
        let target = build_b_pm(1, 1, 5, &o).unwrap();
        assert_eq!(l.vertices, target.vertices);
        assert_eq!(l.simplices, target.simplices);
    }

    /// Applies a linear map to every vertex label and returns the relabeled simplex sets.
    fn transported(k: &SimplicialComplex, field: &PrimeField, a: &[Vec<u32>]) -> Vec<Vec<Vec<Vector>>> {
        let image: Vec<Vector> = k
            .vertices
            .iter()
            .map(|v| {
                let VertexLabel::Pm(x) = v else { unreachable!() };
                let col: Vec<Vec<u32>> = x.rep().coords.iter().map(|&c| vec![c]).collect();
                let y = mat_mul(field, a, &col).into_iter().map(|r| r[0]).collect();
                canonicalize_pm(field, &Vector::new(y)).unwrap().into_rep()
            })
            .collect();
        k.simplices
            .iter()
            .map(|level| {
                let mut out: Vec<Vec<Vector>> = level
                    .iter()
                    .map(|s| {
                        let mut vs: Vec<Vector> =
                            s.vertices.iter().map(|&v| image[v as usize].clone()).collect();
                        vs.sort();
                        vs
                    })
                    .collect();
                out.sort();
                out
            })
            .collect()
    }

    fn labels(k: &SimplicialComplex) -> Vec<Vec<Vec<Vector>>> {
        let field = PrimeField::new(k.p).unwrap();
        let n = k.n + k.m;
        let id: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        transported(k, &field, &id)
    }

    #[test]
    fn links_of_standard_simplices_are_smaller_basis_complexes() {
        let o = BuildOptions::default();
        for p in [3u64, 5] {
            let field = PrimeField::new(p).unwrap();
            for (n, m) in [(3usize, 0usize), (2, 1)] {
                let k = build_b_pm(n, m, p, &o).unwrap();
                for d in 0..n - 1 {
                    let sigma = &k.level(d)[k.level(d).len() / 2];
                    let l = link(&k, &sigma.vertices).unwrap();
                    // a matrix sending e_1..e_m, σ to e_1..e_(m+d+1)
                    let mut cols: Vec<Vector> = (0..m).map(|i| Vector::unit(n + m, i)).collect();
                    for &v in &sigma.vertices {
                        let VertexLabel::Pm(x) = &k.vertices[v as usize] else { unreachable!() };
                        cols.push(x.rep().clone());
                    }
                    for i in 0..n + m {
                        let u = Vector::unit(n + m, i);
                        let mut trial = cols.clone();
                        trial.push(u.clone());
                        if crate::gfq::is_partial_basis(&field, &trial) && cols.len() < n + m {
                            cols.push(u);
                        }
                    }
                    let refs: Vec<&Vector> = cols.iter().collect();
                    let b = crate::gfq::columns_to_rows(&refs);
                    let a = inverse(&field, &b).unwrap();
                    let smaller = build_b_pm(n - d - 1, m + d + 1, p, &o).unwrap();
                    assert_eq!(transported(&l, &field, &a), labels(&smaller), "p={p} n={n} m={m} d={d}");
                }
            }
        }
    }

    #[test]
    fn links_in_bda_reclassify() {
        let k = build_bda_pm(3, 0, 3, &BuildOptions::default()).unwrap();
        let l = link(&k, &[0]).unwrap();
        l.validate().unwrap();
        assert!(l.simplices.iter().flatten().any(|s| s.kind == SimplexKind::ExternallyAdditive));
        assert!(l.simplices.iter().flatten().any(|s| s.kind == SimplexKind::InternallyAdditive));
        assert_eq!(l.dim(), 2);
    }
}
