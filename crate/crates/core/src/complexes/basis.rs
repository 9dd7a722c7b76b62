//! Complexes of partial bases, their determinant-±1 variants and the augmented versions,
//! all as links of `{e_1, ..., e_m}` inside F_p^(n+m).
//!
//! Every simplex is generated exactly once, from the face obtained by deleting its largest
//! vertex. If that vertex lies in the additive core, the face is standard and the vertex is
//! a `±a ± b` combination of a core pair; otherwise the face is already additive with the
//! same core.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{BuildOptions, Family, Simplex, SimplexKind, SimplicialComplex, SizeGuard, VertexLabel};
use crate::error::{Error, Result};
use crate::gfq::{
    canonicalize_pm, canonicalize_proj, det_unchecked, enumerate_pm_vectors, enumerate_proj_vectors,
    rref, PrimeField, Rows, Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Augment {
    None,
    /// `v0 = λ v1 + ν v2` with λ, ν units.
    Units,
    /// `v0 = ±v1 ± v2`.
    Signs,
}

#[derive(Clone, Copy, Debug)]
struct Rules {
    family: Family,
    proj: bool,
    det: bool,
    augment: Augment,
}

fn rules(family: Family) -> Result<Rules> {
    let (proj, det, augment) = match family {
        Family::BPm => (false, false, Augment::None),
        Family::BProj => (true, false, Augment::None),
        Family::BdPm => (false, true, Augment::None),
        Family::BaPm => (false, false, Augment::Units),
        Family::BdaPm | Family::BdaPrime => (false, true, Augment::Signs),
        other => return Err(Error::Domain(format!("{other} is not a basis family"))),
    };
    Ok(Rules {
        family,
        proj,
        det,
        augment,
    })
}

/// What a vertex may be added to a fixed independent set `base ∪ E`.
enum Extension {
    /// Room for more than one further vector: accept anything outside the span.
    Partial { rows: Rows, pivots: Vec<usize> },
    /// Exactly one slot left: `w ↦ det(base, E, w)` is this linear functional.
    Last { functional: Vec<u32> },
    /// Already a basis.
    Full,
}

impl Extension {
    fn new(field: &PrimeField, ambient: usize, base: &[&Vector]) -> Self {
        if base.len() >= ambient {
            return Extension::Full;
        }
        if base.len() + 1 == ambient {
            let functional = (0..ambient)
                .map(|i| {
                    let unit = Vector::unit(ambient, i);
                    let cols: Vec<&Vector> = base.iter().copied().chain([&unit]).collect();
                    det_unchecked(field, columns_to_rows(&cols))
                })
                .collect();
            return Extension::Last { functional };
        }
        let rows: Rows = base.iter().map(|v| v.coords.clone()).collect();
        let (rows, pivots) = rref(field, &rows);
        Extension::Partial { rows, pivots }
    }

    fn accepts(&self, field: &PrimeField, w: &Vector, det: bool) -> bool {
        match self {
            Extension::Full => false,
            Extension::Last { functional } => {
                let d = functional
                    .iter()
                    .zip(&w.coords)
                    .fold(0u32, |acc, (&c, &x)| field.add(acc, field.mul(c, x)));
                if det {
                    field.is_pm_one(d)
                } else {
                    d != 0
                }
            }
            Extension::Partial { rows, pivots } => {
                let mut r = w.coords.clone();
                for (row, &c) in rows.iter().zip(pivots) {
                    let f = r[c];
                    if f != 0 {
                        for (x, &b) in r.iter_mut().zip(row) {
                            *x = field.sub(*x, field.mul(f, b));
                        }
                    }
                }
                r.iter().any(|&x| x != 0)
            }
        }
    }
}

fn columns_to_rows(cols: &[&Vector]) -> Rows {
    crate::gfq::columns_to_rows(cols)
}

struct Table {
    field: PrimeField,
    ambient: usize,
    rules: Rules,
    basis_e: Vec<Vector>,
    reps: Vec<Vector>,
    ids: HashMap<Vec<u32>, u32>,
}

impl Table {
    fn new(rules: Rules, n: usize, m: usize, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let ambient = n + m;
        if ambient == 0 {
            return Err(Error::Domain("need n + m >= 1".into()));
        }
        let basis_e: Vec<Vector> = (0..m).map(|i| Vector::unit(ambient, i)).collect();
        let e_refs: Vec<&Vector> = basis_e.iter().collect();
        let ext = Extension::new(&field, ambient, &e_refs);
        let all: Vec<Vector> = if rules.proj {
            enumerate_proj_vectors(&field, ambient)
                .into_iter()
                .map(|v| v.rep().clone())
                .collect()
        } else {
            enumerate_pm_vectors(&field, ambient)
                .into_iter()
                .map(|v| v.into_rep())
                .collect()
        };
        let reps: Vec<Vector> = all
            .into_iter()
            .filter(|w| ext.accepts(&field, w, rules.det))
            .collect();
        let ids = reps
            .iter()
            .enumerate()
            .map(|(i, v)| (v.coords.clone(), i as u32))
            .collect();
        Ok(Self {
            field,
            ambient,
            rules,
            basis_e,
            reps,
            ids,
        })
    }

    fn canonical(&self, v: &Vector) -> Option<Vector> {
        if self.rules.proj {
            canonicalize_proj(&self.field, v).ok().map(|c| c.rep().clone())
        } else {
            canonicalize_pm(&self.field, v).ok().map(|c| c.into_rep())
        }
    }

    fn id_of(&self, v: &Vector) -> Option<u32> {
        let c = self.canonical(v)?;
        self.ids.get(&c.coords).copied()
    }

    fn extension(&self, base: impl Iterator<Item = u32>) -> Extension {
        let vs: Vec<&Vector> = self
            .basis_e
            .iter()
            .chain(base.map(|i| &self.reps[i as usize]))
            .collect();
        Extension::new(&self.field, self.ambient, &vs)
    }

    /// Coefficient pairs `(λ, ν)` giving each ±-class of `λa + νb` once.
    fn coefficient_pairs(&self) -> Vec<(u32, u32)> {
        let f = &self.field;
        let p = f.p();
        match self.rules.augment {
            Augment::None => Vec::new(),
            Augment::Signs if p == 2 => vec![(1, 1)],
            Augment::Signs => vec![(1, 1), (1, p - 1)],
            Augment::Units => f
                .pm_classes()
                .flat_map(|l| f.units().map(move |n| (l, n)))
                .collect(),
        }
    }

    /// All extensions `σ ∪ {w}` with `w > max(σ)`, sorted by `w`.
    fn extend(&self, sigma: &Simplex, coeffs: &[(u32, u32)]) -> Vec<Simplex> {
        let top = *sigma.vertices.last().expect("nonempty simplex");
        let start = top as usize + 1;
        let mut out = Vec::new();
        let base: Vec<u32> = match &sigma.core {
            None => sigma.vertices.clone(),
            Some(core) => {
                let drop = core[0];
                sigma.vertices.iter().copied().filter(|&v| v != drop).collect()
            }
        };
        let ext = self.extension(base.iter().copied());
        for w in start..self.reps.len() {
            if ext.accepts(&self.field, &self.reps[w], self.rules.det) {
                let mut vertices = sigma.vertices.clone();
                vertices.push(w as u32);
                out.push(Simplex {
                    vertices,
                    kind: sigma.kind,
                    core: sigma.core.clone(),
                });
            }
        }
        if sigma.kind == SimplexKind::Standard && !coeffs.is_empty() {
            let f = &self.field;
            let verts = &sigma.vertices;
            for (i, &a) in verts.iter().enumerate() {
                let va = &self.reps[a as usize];
                let partners = verts[i + 1..]
                    .iter()
                    .map(|&b| (Some(b), &self.reps[b as usize]))
                    .chain(self.basis_e.iter().map(|e| (None, e)));
                for (b, vb) in partners {
                    for &(l, n) in coeffs {
                        let c = va.combine(f, l, vb, n);
                        let Some(w) = self.id_of(&c) else {
                            debug_assert!(false, "augmentation left the vertex table");
                            continue;
                        };
                        if w <= top {
                            continue;
                        }
                        let mut vertices = verts.clone();
                        vertices.push(w);
                        let (kind, mut core) = match b {
                            Some(b) => (SimplexKind::InternallyAdditive, vec![a, b, w]),
                            None => (SimplexKind::ExternallyAdditive, vec![a, w]),
                        };
                        core.sort_unstable();
                        out.push(Simplex {
                            vertices,
                            kind,
                            core: Some(core),
                        });
                    }
                }
            }
            out.sort_by_key(|s| *s.vertices.last().unwrap());
        }
        out
    }
}

fn build(family: Family, n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    let r = rules(family)?;
    if r.augment != Augment::None && n == 0 {
        return Err(Error::Domain(format!("{family} needs n >= 1")));
    }
    let projected = projected_size(family, n, m, p, opts.max_dim)?;
    let mut guard = SizeGuard::new(family.name(), opts, projected.iter().sum())?;
    let table = Table::new(r, n, m, p)?;
    let coeffs = table.coefficient_pairs();
    let max_dim = opts.max_dim.unwrap_or(usize::MAX);
    let mut levels: Vec<Vec<Simplex>> =
        vec![(0..table.reps.len() as u32).map(|v| Simplex::standard(vec![v])).collect()];
    guard.add(levels[0].len())?;
    while levels.len() <= max_dim {
        let mut next = Vec::new();
        for s in levels.last().unwrap() {
            let ext = table.extend(s, &coeffs);
            guard.add(ext.len())?;
            next.extend(ext);
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let vertices = table
        .reps
        .iter()
        .map(|v| {
            if r.proj {
                VertexLabel::Proj(canonicalize_proj(&table.field, v).expect("nonzero"))
            } else {
                VertexLabel::Pm(canonicalize_pm(&table.field, v).expect("nonzero"))
            }
        })
        .collect();
    Ok(SimplicialComplex {
        family,
        n,
        m,
        p,
        vertices,
        simplices: levels,
    })
}

/// Complex of partial ±-bases `B^±_{n,m}(F_p)`.
pub fn build_b_pm(n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build(Family::BPm, n, m, p, opts)
}

/// Complex of partial projective bases `B^×_{n,m}(F_p)`.
pub fn build_b_proj(n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build(Family::BProj, n, m, p, opts)
}

/// Determinant-±1 partial ±-bases `BD^±_{n,m}(F_p)`.
pub fn build_bd_pm(n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build(Family::BdPm, n, m, p, opts)
}

/// Augmented partial ±-bases `BA^±_{n,m}(F_p)`, unit coefficients.
pub fn build_ba_pm(n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build(Family::BaPm, n, m, p, opts)
}

/// Augmented determinant-±1 partial ±-bases `BDA^±_{n,m}(F_p)`, coefficients ±1.
pub fn build_bda_pm(n: usize, m: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    build(Family::BdaPm, n, m, p, opts)
}

/// The subcomplex `BDA'_n(F_p)` of simplices of `BDA^±_n(F_p)` spanning a proper subspace.
pub fn build_bda_prime(n: usize, p: u64, opts: &BuildOptions) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::Domain("bda-prime needs n >= 2".into()));
    }
    let cut = opts.max_dim.map_or(n - 1, |d| d.min(n - 1));
    let inner = BuildOptions {
        max_dim: Some(cut),
        ..*opts
    };
    let mut k = build(Family::BdaPrime, n, 0, p, &inner)?;
    // full span: standard with n vertices, additive with n + 1 (the latter are cut off above)
    if let Some(level) = k.simplices.get_mut(n - 1) {
        level.retain(|s| s.kind.is_additive());
    }
    while k.simplices.len() > 1 && k.simplices.last().is_some_and(Vec::is_empty) {
        k.simplices.pop();
    }
    Ok(k)
}

/// Exact simplex counts per dimension for a basis family, computed without building.
pub fn projected_size(
    family: Family,
    n: usize,
    m: usize,
    p: u64,
    max_dim: Option<usize>,
) -> Result<Vec<u128>> {
    let r = rules(family)?;
    PrimeField::new(p)?;
    let ambient = (n + m) as u32;
    let pb = BigUint::from(p);
    let qn = pb.pow(ambient);
    let odd = p != 2;
    let per_vertex: BigUint = if r.proj {
        BigUint::from(p - 1)
    } else if odd {
        BigUint::from(2u32)
    } else {
        BigUint::one()
    };
    let coeff_classes: u64 = match r.augment {
        Augment::None => 0,
        Augment::Signs => {
            if odd {
                2
            } else {
                1
            }
        }
        Augment::Units => {
            if odd {
                (p - 1) * (p - 1) / 2
            } else {
                1
            }
        }
    };
    let mut counts = vec![BigUint::zero(); n + 2];
    let mut ordered = BigUint::one();
    let mut fact = BigUint::one();
    for s in 1..=n {
        ordered *= &qn - pb.pow((m + s - 1) as u32);
        fact *= BigUint::from(s) * &per_vertex;
        let mut full = ordered.clone();
        if r.det && s == n {
            let signs = if odd { 2u32 } else { 1 };
            full = full * signs / (p - 1);
        }
        let standard = full / &fact;
        if r.family == Family::BdaPrime && s == n {
            // full-span standard simplices are excluded
        } else {
            counts[s - 1] += &standard;
        }
        if coeff_classes > 0 && !(r.family == Family::BdaPrime && s == n) {
            let internal = &standard * BigUint::from(s * s.saturating_sub(1) / 2) * coeff_classes / 3u32;
            let external = &standard * BigUint::from(s * m) * coeff_classes / 2u32;
            counts[s] += internal + external;
        }
    }
    let top = max_dim.unwrap_or(usize::MAX);
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(d, _)| d <= top)
        .map(|(_, c)| c.to_u128().unwrap_or(u128::MAX))
        .rev()
        .skip_while(|&c| c == 0)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect())
}

/// Brute-force classification of a set of vectors (any representatives) as a simplex of a
/// basis family, straight from the definitions: `None` if it is not a simplex, else the kind
/// and the positions of the core within `vs` (the intrinsic core: those `v` whose removal
/// leaves a standard simplex).
pub fn classify_pm_set(
    family: Family,
    n: usize,
    m: usize,
    p: u64,
    vs: &[Vector],
) -> Result<Option<(SimplexKind, Vec<usize>)>> {
    let r = rules(family)?;
    let table = Table::new(r, n, m, p)?;
    let f = &table.field;
    if vs.iter().any(|v| v.dim() != table.ambient) {
        return Err(Error::Shape("vector dimension differs from n + m".into()));
    }
    let mut ids = Vec::new();
    for v in vs {
        match table.id_of(v) {
            Some(i) => ids.push(i),
            None => return Ok(None),
        }
    }
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ids.len() {
        return Ok(None);
    }
    let standard = |subset: &[usize]| -> bool {
        let mut placed: Vec<&Vector> = table.basis_e.iter().collect();
        for &i in subset {
            let ext = Extension::new(f, table.ambient, &placed);
            if !ext.accepts(f, &vs[i], r.det) {
                return false;
            }
            placed.push(&vs[i]);
        }
        true
    };
    let all: Vec<usize> = (0..vs.len()).collect();
    if standard(&all) {
        return Ok(Some((SimplexKind::Standard, Vec::new())));
    }
    if r.augment == Augment::None {
        return Ok(None);
    }
    let coeffs = table.coefficient_pairs();
    let same_class = |a: &Vector, b: &Vector| table.canonical(a) == table.canonical(b);
    for v0 in 0..vs.len() {
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != v0).collect();
        if !standard(&rest) {
            continue;
        }
        let mut found = None;
        for (ai, &a) in rest.iter().enumerate() {
            for &b in &rest[ai + 1..] {
                if coeffs.iter().any(|&(l, nu)| same_class(&vs[v0], &vs[a].combine(f, l, &vs[b], nu))) {
                    found = Some(SimplexKind::InternallyAdditive);
                }
            }
            for e in &table.basis_e {
                if coeffs.iter().any(|&(l, nu)| same_class(&vs[v0], &vs[a].combine(f, l, e, nu))) {
                    found.get_or_insert(SimplexKind::ExternallyAdditive);
                }
            }
        }
        if let Some(kind) = found {
            let core: Vec<usize> = all
                .iter()
                .copied()
                .filter(|&v| {
                    let without: Vec<usize> = all.iter().copied().filter(|&i| i != v).collect();
                    standard(&without)
                })
                .collect();
            return Ok(Some((kind, core)));
        }
    }
    Ok(None)
}
