use std::collections::HashMap;

use serde::Serialize;

use super::betti::{betti, HomologyOptions, HomologyReport};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};

/// Outcome of checking `H̃_k(K) = 0` for all `k <= through`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub through: i64,
    pub pass: bool,
    /// Some degree was certified by rank alone (its Smith normal form was over budget).
    pub rank_only: bool,
    /// Degrees with nonzero reduced homology, as `(degree, betti, torsion count)`.
    pub failures: Vec<(i64, u64, usize)>,
    pub homology: HomologyReport,
}

/// Checks that the reduced integral homology of `k` vanishes through degree `through`.
pub fn acyclicity_check(k: &SimplicialComplex, through: i64, opts: &HomologyOptions) -> Result<AcyclicityReport> {
    let opts = HomologyOptions {
        snf: true,
        max_degree: Some(through),
        ..*opts
    };
    let h = betti(k, true, &opts)?;
    let mut failures = Vec::new();
    let mut rank_only = false;
    for d in -1..=through.min(h.last_degree()) {
        let b = h.betti_at(d).unwrap_or(0);
        let t = match h.torsion_at(d) {
            Some(t) => t.len(),
            None => {
                rank_only = true;
                0
            }
        };
        if b != 0 || t != 0 {
            failures.push((d, b, t));
        }
    }
    Ok(AcyclicityReport {
        through,
        pass: failures.is_empty(),
        rank_only,
        failures,
        homology: h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub euler: i64,
    pub genus: u64,
    pub homology: HomologyReport,
}

fn not_surface(msg: impl Into<String>) -> Error {
    Error::NotAClosedSurface(msg.into())
}

/// Verifies that `k` triangulates a closed connected orientable surface and returns its genus.
pub fn surface_check(k: &SimplicialComplex) -> Result<SurfaceReport> {
    if k.dim() != 2 {
        return Err(not_surface(format!("dimension is {}, not 2", k.dim())));
    }
    let mut per_edge = vec![0u32; k.count(1)];
    // vertex -> edges of its link
    let mut link: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for t in k.level(2) {
        let [a, b, c] = t.vertices[..] else {
            return Err(Error::MalformedComplex("triangle without 3 vertices".into()));
        };
        for (e, opposite) in [([a, b], c), ([a, c], b), ([b, c], a)] {
            let i = k
                .index_of(&e)
                .ok_or_else(|| Error::MalformedComplex(format!("edge {e:?} missing")))?;
            per_edge[i] += 1;
            link.entry(opposite).or_default().push((e[0], e[1]));
        }
    }
    if let Some(i) = per_edge.iter().position(|&c| c != 2) {
        return Err(not_surface(format!(
            "edge {:?} lies in {} triangles",
            k.level(1)[i].vertices, per_edge[i]
        )));
    }
    for v in 0..k.count(0) as u32 {
        let edges = link.get(&v).map_or(&[][..], Vec::as_slice);
        if !is_single_cycle(edges) {
            return Err(not_surface(format!("link of vertex {v} is not a single cycle")));
        }
    }
    let h = betti(k, false, &HomologyOptions::default().with_snf())?;
    if h.betti_at(0) != Some(1) {
        return Err(not_surface(format!("{} components", h.betti_at(0).unwrap_or(0))));
    }
    if h.betti_at(2) != Some(1) {
        return Err(not_surface("no fundamental class, so not orientable"));
    }
    match h.torsion_at(1) {
        Some([]) => {}
        Some(_) => return Err(not_surface("H_1 has torsion, so not orientable")),
        None => return Err(not_surface("torsion of H_1 could not be certified")),
    }
    let b1 = h.betti_at(1).unwrap_or(0);
    if b1 % 2 != 0 {
        return Err(not_surface(format!("odd first Betti number {b1}")));
    }
    Ok(SurfaceReport {
        vertices: k.count(0),
        edges: k.count(1),
        triangles: k.count(2),
        euler: h.euler,
        genus: b1 / 2,
        homology: h,
    })
}

/// Whether the graph with these edges is one cycle through all of its vertices.
fn is_single_cycle(edges: &[(u32, u32)]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() != edges.len() || adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = edges[0].0;
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == edges.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_bd_pm, build_bda_pm, BuildOptions};

    #[test]
    fn cycles() {
        assert!(is_single_cycle(&[(0, 1), (1, 2), (0, 2)]));
        assert!(!is_single_cycle(&[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]));
        assert!(!is_single_cycle(&[(0, 1), (1, 2)]));
    }

    #[test]
    fn small_surfaces() {
        let o = BuildOptions::default();
        let s = surface_check(&build_bda_pm(2, 0, 5, &o).unwrap()).unwrap();
        assert_eq!(s.genus, 0);
        let s = surface_check(&build_bda_pm(2, 0, 7, &o).unwrap()).unwrap();
        assert_eq!((s.genus, s.euler), (3, -4));
        let tetra_boundary: Vec<Vec<u32>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        assert_eq!(surface_check(&SimplicialComplex::from_facets(4, &tetra_boundary).unwrap()).unwrap().genus, 0);
        let disc = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(surface_check(&disc), Err(Error::NotAClosedSurface(_))));
        let bd = build_bd_pm(2, 0, 5, &o).unwrap();
        assert!(matches!(surface_check(&bd), Err(Error::NotAClosedSurface(_))));
    }

    #[test]
    fn acyclicity_examples() {
        let o = BuildOptions::default();
        let h = HomologyOptions::default();
        assert!(acyclicity_check(&build_bda_pm(2, 0, 5, &o).unwrap(), 1, &h).unwrap().pass);
        assert!(acyclicity_check(&build_bd_pm(2, 0, 7, &o).unwrap(), 0, &h).unwrap().pass);
        let r = acyclicity_check(&build_bda_pm(2, 0, 7, &o).unwrap(), 1, &h).unwrap();
        assert!(!r.pass && !r.rank_only);
        assert_eq!(r.failures, vec![(1, 6, 0)]);
    }
}
