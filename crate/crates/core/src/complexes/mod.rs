//! Finite simplicial complexes over F_p, built exhaustively.
//!
//! Vertices are indices into a sorted canonical vertex table. Simplices are stored per
//! dimension, each level sorted lexicographically by vertex list, which keeps face lookup a
//! binary search and makes every export byte-identical across runs.

mod basis;
mod export;
mod link;
mod tits;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::{OrientedSubspace, PmVector, ProjVector, Subspace};

pub use basis::{
    build_b_pm, build_b_proj, build_ba_pm, build_bd_pm, build_bda_pm, build_bda_prime,
    classify_pm_set, projected_size,
};
pub use export::{parse_complex, write_complex};
pub use link::link;
pub use tits::{build_tits, build_tits_oriented, projected_tits_size};

/// Default cap on the total number of simplices a builder may produce.
pub const DEFAULT_MAX_SIMPLICES: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    BPm,
    BProj,
    BdPm,
    BaPm,
    BdaPm,
    BdaPrime,
    Tits,
    TitsOriented,
    /// A link taken inside another complex.
    Link,
    /// Built directly from a list of facets.
    Custom,
}

impl Family {
    pub const BUILDABLE: [Family; 8] = [
        Family::BPm,
        Family::BProj,
        Family::BdPm,
        Family::BaPm,
        Family::BdaPm,
        Family::BdaPrime,
        Family::Tits,
        Family::TitsOriented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BPm => "b-pm",
            Family::BProj => "b-proj",
            Family::BdPm => "bd-pm",
            Family::BaPm => "ba-pm",
            Family::BdaPm => "bda-pm",
            Family::BdaPrime => "bda-prime",
            Family::Tits => "tits",
            Family::TitsOriented => "tits-oriented",
            Family::Link => "link",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Family::Link, Family::Custom]
            .into_iter()
            .chain(Family::BUILDABLE)
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown complex family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplexKind {
    Standard,
    InternallyAdditive,
    ExternallyAdditive,
}

impl SimplexKind {
    pub fn code(self) -> &'static str {
        match self {
            SimplexKind::Standard => "s",
            SimplexKind::InternallyAdditive => "i",
            SimplexKind::ExternallyAdditive => "e",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "s" => Some(SimplexKind::Standard),
            "i" => Some(SimplexKind::InternallyAdditive),
            "e" => Some(SimplexKind::ExternallyAdditive),
            _ => None,
        }
    }

    pub fn is_additive(self) -> bool {
        self != SimplexKind::Standard
    }
}

/// A simplex: strictly increasing vertex ids plus its classification. For additive simplices
/// `core` lists the core vertices lying in the simplex (three when internal; two when the
/// relation also involves a vertex of the ambient link base).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Simplex {
    pub vertices: Vec<u32>,
    pub kind: SimplexKind,
    pub core: Option<Vec<u32>>,
}

impl Simplex {
    pub fn standard(vertices: Vec<u32>) -> Self {
        Self {
            vertices,
            kind: SimplexKind::Standard,
            core: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// What a vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexLabel {
    Pm(PmVector),
    Proj(ProjVector),
    Space(Subspace),
    Oriented(OrientedSubspace),
    /// An abstract vertex of a custom complex.
    Plain(u32),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Pm(v) => write!(f, "{}", v.rep()),
            VertexLabel::Proj(v) => write!(f, "{}", v.rep()),
            VertexLabel::Space(s) => write!(f, "{s}"),
            VertexLabel::Oriented(o) => write!(f, "{o}"),
            VertexLabel::Plain(i) => write!(f, "{i}"),
        }
    }
}

/// Builds a complex of any buildable family. `m` must be 0 for the families without it
/// (`bda-prime`, `tits`, `tits-oriented`).
pub fn build(family: Family, n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    let no_m = || -> Result<()> {
        if m != 0 {
            return Err(Error::Domain(format!("family {family} takes no m parameter")));
        }
        Ok(())
    };
    match family {
        Family::BPm => build_b_pm(n, m, p, opts),
        Family::BProj => build_b_proj(n, m, p, opts),
        Family::BdPm => build_bd_pm(n, m, p, opts),
        Family::BaPm => build_ba_pm(n, m, p, opts),
        Family::BdaPm => build_bda_pm(n, m, p, opts),
        Family::BdaPrime => no_m().and_then(|_| build_bda_prime(n, p, opts)),
        Family::Tits => no_m().and_then(|_| build_tits(n, p, opts)),
        Family::TitsOriented => no_m().and_then(|_| build_tits_oriented(n, p, opts)),
        Family::Link | Family::Custom => Err(Error::Domain(format!("family {family} cannot be built from parameters"))),
    }
}

/// Limits applied while building.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_simplices: u64,
    /// Stop after this dimension (a skeleton); `None` builds everything.
    pub max_dim: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_simplices: DEFAULT_MAX_SIMPLICES,
            max_dim: None,
        }
    }
}

impl BuildOptions {
    pub fn skeleton(max_dim: usize) -> Self {
        Self {
            max_dim: Some(max_dim),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub vertices: Vec<VertexLabel>,
    /// `simplices[d]` holds the d-simplices, sorted by vertex list.
    pub simplices: Vec<Vec<Simplex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub counts: Vec<u64>,
    pub facets: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub euler: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SimplicialComplex {
    /// A complex with the given facets over abstract vertices `0..num_vertices`; all faces
    /// are added and classified standard.
    pub fn from_facets(num_vertices: u32, facets: &[Vec<u32>]) -> Result<Self> {
        let mut levels: Vec<std::collections::BTreeSet<Vec<u32>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.len() != facet.len() {
                return Err(Error::MalformedComplex(format!("bad facet {facet:?}")));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::MalformedComplex(format!("vertex {v} out of range")));
            }
            if f.len() > 24 {
                return Err(Error::MalformedComplex("facet too large".into()));
            }
            for mask in 1u32..(1 << f.len()) {
                let face: Vec<u32> = (0..f.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                let d = face.len() - 1;
                if levels.len() <= d {
                    levels.resize_with(d + 1, Default::default);
                }
                levels[d].insert(face);
            }
        }
        if levels.is_empty() {
            levels.push(Default::default());
        }
        levels[0].extend((0..num_vertices).map(|v| vec![v]));
        Ok(Self {
            family: Family::Custom,
            n: 0,
            m: 0,
            p: 0,
            vertices: (0..num_vertices).map(VertexLabel::Plain).collect(),
            simplices: levels
                .into_iter()
                .map(|l| l.into_iter().map(Simplex::standard).collect())
                .collect(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices
            .iter()
            .rposition(|l| !l.is_empty())
            .map_or(-1, |d| d as i64)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn total(&self) -> u64 {
        self.simplices.iter().map(|l| l.len() as u64).sum()
    }

    pub fn level(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    /// Position of the simplex with these (sorted) vertices within its dimension level.
    pub fn index_of(&self, vertices: &[u32]) -> Option<usize> {
        let d = vertices.len().checked_sub(1)?;
        let level = self.simplices.get(d)?;
        level
            .binary_search_by(|s| s.vertices.as_slice().cmp(vertices))
            .ok()
    }

    pub fn find(&self, vertices: &[u32]) -> Option<&Simplex> {
        let i = self.index_of(vertices)?;
        Some(&self.simplices[vertices.len() - 1][i])
    }

    pub fn contains(&self, vertices: &[u32]) -> bool {
        vertices.is_empty() || self.index_of(vertices).is_some()
    }

    pub fn stats(&self) -> ComplexStats {
        let top = self.dim();
        let counts: Vec<u64> = self.simplices[..(top + 1) as usize]
            .iter()
            .map(|l| l.len() as u64)
            .collect();
        let euler = counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { BigInt::from(c) } else { -BigInt::from(c) })
            .sum();
        ComplexStats {
            facets: self.count_facets(),
            counts,
            euler,
        }
    }

    /// Simplices that are not a face of any larger simplex.
    pub fn count_facets(&self) -> u64 {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for skip in 0..s.vertices.len() {
                    let face = face_without(&s.vertices, skip);
                    if let Some(i) = self.index_of(&face) {
                        covered[d - 1][i] = true;
                    }
                }
            }
        }
        covered.iter().flatten().filter(|&&c| !c).count() as u64
    }

    /// Checks sortedness, vertex ranges, face closure and core consistency.
    pub fn validate(&self) -> Result<()> {
        let nv = self.vertices.len() as u32;
        for (d, level) in self.simplices.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                if s.vertices.len() != d + 1 {
                    return Err(Error::MalformedComplex(format!(
                        "simplex {:?} stored at dimension {d}",
                        s.vertices
                    )));
                }
                if !s.vertices.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::MalformedComplex(format!("unsorted simplex {:?}", s.vertices)));
                }
                if s.vertices.last().is_some_and(|&v| v >= nv) {
                    return Err(Error::MalformedComplex(format!("vertex out of range in {:?}", s.vertices)));
                }
                if i > 0 && level[i - 1].vertices >= s.vertices {
                    return Err(Error::MalformedComplex(format!(
                        "level {d} not strictly sorted at {:?}",
                        s.vertices
                    )));
                }
                match (&s.core, s.kind.is_additive()) {
                    (None, false) => {}
                    (Some(core), true) if core.iter().all(|c| s.vertices.contains(c)) => {}
                    _ => {
                        return Err(Error::MalformedComplex(format!(
                            "inconsistent core on {:?}",
                            s.vertices
                        )))
                    }
                }
                if d > 0 {
                    for skip in 0..s.vertices.len() {
                        let face = face_without(&s.vertices, skip);
                        if !self.contains(&face) {
                            return Err(Error::MalformedComplex(format!(
                                "face {face:?} of {:?} missing",
                                s.vertices
                            )));
                        }
                    }
                }
            }
        }
        if self.count(0) != self.vertices.len() && !self.vertices.is_empty() {
            return Err(Error::MalformedComplex("vertex table and 0-simplices differ".into()));
        }
        Ok(())
    }
}

pub(crate) fn face_without(vertices: &[u32], skip: usize) -> Vec<u32> {
    vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

/// Running size check shared by the builders.
pub(crate) struct SizeGuard {
    cap: u64,
    seen: u64,
    what: &'static str,
}

impl SizeGuard {
    pub(crate) fn new(what: &'static str, opts: &BuildOptions, projected: u128) -> Result<Self> {
        if projected > opts.max_simplices as u128 {
            return Err(Error::TooLarge {
                what,
                projected,
                cap: opts.max_simplices as u128,
            });
        }
        Ok(Self {
            cap: opts.max_simplices,
            seen: 0,
            what,
        })
    }

    pub(crate) fn add(&mut self, k: usize) -> Result<()> {
        self.seen += k as u64;
        if self.seen > self.cap {
            return Err(Error::TooLarge {
                what: self.what,
                projected: self.seen as u128,
                cap: self.cap as u128,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_facets_closes_downward() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.stats().counts, vec![3, 3, 1]);
        assert_eq!(k.stats().facets, 1);
        assert_eq!(k.stats().euler, BigInt::from(1));
        k.validate().unwrap();
        assert!(SimplicialComplex::from_facets(2, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn family_names_roundtrip() {
        for f in Family::BUILDABLE {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("bogus".parse::<Family>().is_err());
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::from_facets(0, &[]).unwrap();
        assert_eq!(k.dim(), -1);
        assert_eq!(k.stats().euler, BigInt::from(0));
    }
}
