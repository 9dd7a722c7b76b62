//! Line-oriented text format for complexes.
//!
//! ```text
//! bda-pm 2 0 5
//! vertices 12 pm
//! 0 (0,1)
//! ...
//! simplices 62
//! 0 s 0
//! ...
//! 2 i 0 3 7 [0 3 7]
//! ```
//!
//! The header is `family n m p`. Vertex labels are written as coordinate tuples, subspaces as
//! `;`-joined echelon rows, oriented subspaces with an `@class` suffix. Simplex lines are
//! `dim kind ids [core]` with kind `s`, `i` or `e`.

use std::fmt::Write as _;

use super::{Family, Simplex, SimplexKind, SimplicialComplex, VertexLabel};
use crate::error::{parse_err, Error, Result};
use crate::gfq::{
    canonicalize_pm, canonicalize_proj, span, Orientation, OrientedSubspace, PrimeField, Vector,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum LabelKind {
    Pm,
    Proj,
    Space,
    Oriented,
    Plain,
}

impl LabelKind {
    fn name(self) -> &'static str {
        match self {
            LabelKind::Pm => "pm",
            LabelKind::Proj => "proj",
            LabelKind::Space => "space",
            LabelKind::Oriented => "oriented",
            LabelKind::Plain => "plain",
        }
    }

    fn of(label: &VertexLabel) -> Self {
        match label {
            VertexLabel::Pm(_) => LabelKind::Pm,
            VertexLabel::Proj(_) => LabelKind::Proj,
            VertexLabel::Space(_) => LabelKind::Space,
            VertexLabel::Oriented(_) => LabelKind::Oriented,
            VertexLabel::Plain(_) => LabelKind::Plain,
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            LabelKind::Pm,
            LabelKind::Proj,
            LabelKind::Space,
            LabelKind::Oriented,
            LabelKind::Plain,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    let kind = k.vertices.first().map_or(LabelKind::Plain, LabelKind::of);
    writeln!(out, "{} {} {} {}", k.family, k.n, k.m, k.p).unwrap();
    writeln!(out, "vertices {} {}", k.vertices.len(), kind.name()).unwrap();
    for (i, v) in k.vertices.iter().enumerate() {
        writeln!(out, "{i} {v}").unwrap();
    }
    writeln!(out, "simplices {}", k.total()).unwrap();
    for (d, level) in k.simplices.iter().enumerate() {
        for s in level {
            write!(out, "{d} {}", s.kind.code()).unwrap();
            for v in &s.vertices {
                write!(out, " {v}").unwrap();
            }
            if let Some(core) = &s.core {
                let ids: Vec<String> = core.iter().map(u32::to_string).collect();
                write!(out, " [{}]", ids.join(" ")).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("bad {what} `{tok}`")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} out of range")))
}

fn parse_vector(s: &str, field: &PrimeField, line: usize) -> Result<Vector> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected a tuple, got `{s}`")))?;
    let mut coords = Vec::new();
    for c in inner.split(',') {
        let x = parse_usize(Some(c), line, "coordinate")?;
        if x >= field.p() as usize {
            return Err(parse_err(line, format!("coordinate {x} not reduced mod {}", field.p())));
        }
        coords.push(x as u32);
    }
    Ok(Vector::new(coords))
}

fn parse_label(
    kind: LabelKind,
    text: &str,
    field: Option<&PrimeField>,
    line: usize,
    ambient: &mut Option<usize>,
) -> Result<VertexLabel> {
    let field = match (kind, field) {
        (LabelKind::Plain, _) => {
            return Ok(VertexLabel::Plain(to_u32(parse_usize(Some(text), line, "label")?, line)?));
        }
        (_, Some(f)) => f,
        (_, None) => return Err(parse_err(line, "coordinate labels need a prime p")),
    };
    let mut check_dim = |d: usize| -> Result<()> {
        match *ambient {
            Some(a) if a != d => Err(parse_err(line, "label dimension differs from earlier labels")),
            _ => {
                *ambient = Some(d);
                Ok(())
            }
        }
    };
    match kind {
        LabelKind::Pm | LabelKind::Proj => {
            let v = parse_vector(text, field, line)?;
            check_dim(v.dim())?;
            let canon = if kind == LabelKind::Pm {
                canonicalize_pm(field, &v).map(|c| (c.rep().clone(), VertexLabel::Pm(c)))
            } else {
                canonicalize_proj(field, &v).map(|c| (c.rep().clone(), VertexLabel::Proj(c)))
            };
            match canon {
                Ok((rep, label)) if rep == v => Ok(label),
                _ => Err(parse_err(line, format!("`{text}` is not a canonical representative"))),
            }
        }
        LabelKind::Space | LabelKind::Oriented => {
            let (rows_text, orient) = if kind == LabelKind::Oriented {
                let (a, b) = text
                    .rsplit_once('@')
                    .ok_or_else(|| parse_err(line, "oriented label needs `@class`"))?;
                let o = parse_usize(Some(b), line, "orientation")?;
                if o == 0 || o >= field.p() as usize {
                    return Err(parse_err(line, format!("orientation {o} out of range")));
                }
                let o = o as u32;
                if field.pm_class(o) != o {
                    return Err(parse_err(line, format!("orientation {o} is not canonical")));
                }
                (a, Some(o))
            } else {
                (text, None)
            };
            let rows = rows_text
                .split(';')
                .map(|r| parse_vector(r, field, line))
                .collect::<Result<Vec<_>>>()?;
            let d = rows[0].dim();
            check_dim(d)?;
            let space = span(field, d, &rows).map_err(|e| parse_err(line, e.to_string()))?;
            if space.basis_vectors() != rows {
                return Err(parse_err(line, format!("`{rows_text}` is not a reduced echelon basis")));
            }
            Ok(match orient {
                Some(o) => VertexLabel::Oriented(OrientedSubspace {
                    space,
                    orient: Orientation(o),
                }),
                None => VertexLabel::Space(space),
            })
        }
        LabelKind::Plain => unreachable!(),
    }
}

fn parse_simplex(text: &str, line: usize) -> Result<(usize, Simplex)> {
    let (main, core) = match text.split_once('[') {
        Some((a, b)) => {
            let b = b
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, "unterminated core"))?;
            (a, Some(b))
        }
        None => (text, None),
    };
    let mut toks = main.split_whitespace();
    let d = parse_usize(toks.next(), line, "dimension")?;
    let kind_tok = toks.next().ok_or_else(|| parse_err(line, "missing kind"))?;
    let kind = SimplexKind::from_code(kind_tok)
        .ok_or_else(|| parse_err(line, format!("unknown kind `{kind_tok}`")))?;
    let vertices = toks
        .map(|t| parse_usize(Some(t), line, "vertex id").and_then(|v| to_u32(v, line)))
        .collect::<Result<Vec<u32>>>()?;
    if d.checked_add(1) != Some(vertices.len()) {
        return Err(parse_err(line, format!("dimension {d} with {} vertices", vertices.len())));
    }
    let core = core
        .map(|c| {
            c.split_whitespace()
                .map(|t| parse_usize(Some(t), line, "core id").and_then(|v| to_u32(v, line)))
                .collect::<Result<Vec<u32>>>()
        })
        .transpose()?;
    Ok((d, Simplex { vertices, kind, core }))
}

fn to_u32(v: usize, line: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| parse_err(line, "id out of range"))
}

/// Parses [`write_complex`] output and validates it (sorted levels, face closure, canonical
/// labels, consistent cores).
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut h = header.split(' ');
    let family: Family = h
        .next()
        .unwrap_or("")
        .parse()
        .map_err(|e: Error| parse_err(ln, e.to_string()))?;
    let n = parse_usize(h.next(), ln, "n")?;
    let m = parse_usize(h.next(), ln, "m")?;
    let p = parse_usize(h.next(), ln, "p")? as u64;
    if h.next().is_some() {
        return Err(parse_err(ln, "trailing header fields"));
    }
    let (ln, vline) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing vertex section"))?;
    let mut v = vline.split(' ');
    if v.next() != Some("vertices") {
        return Err(parse_err(ln, "expected `vertices`"));
    }
    let nv = parse_usize(v.next(), ln, "vertex count")?;
    let kind_tok = v.next().unwrap_or("");
    let kind = LabelKind::parse(kind_tok)
        .ok_or_else(|| parse_err(ln, format!("unknown label kind `{kind_tok}`")))?;
    let field = if kind == LabelKind::Plain {
        None
    } else {
        Some(PrimeField::new(p).map_err(|e| parse_err(ln, e.to_string()))?)
    };
    let mut ambient = None;
    let mut vertices = Vec::new();
    let mut last_ln = ln;
    for i in 0..nv {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(last_ln + 1, "vertex table ends early"))?;
        last_ln = ln;
        let (id, label) = l
            .split_once(' ')
            .ok_or_else(|| parse_err(ln, "expected `id label`"))?;
        if parse_usize(Some(id), ln, "vertex id")? != i {
            return Err(parse_err(ln, format!("expected vertex id {i}")));
        }
        vertices.push(parse_label(kind, label, field.as_ref(), ln, &mut ambient)?);
    }
    let distinct: std::collections::HashSet<&VertexLabel> = vertices.iter().collect();
    if distinct.len() != vertices.len() {
        return Err(parse_err(last_ln, "repeated vertex label"));
    }
    let (ln, sline) = lines
        .next()
        .ok_or_else(|| parse_err(last_ln + 1, "missing simplex section"))?;
    let total = sline
        .strip_prefix("simplices ")
        .ok_or_else(|| parse_err(ln, "expected `simplices`"))
        .and_then(|t| parse_usize(Some(t), ln, "simplex count"))?;
    let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new()];
    let mut seen = 0usize;
    for (ln, l) in lines {
        if l.is_empty() {
            continue;
        }
        let (d, s) = parse_simplex(l, ln)?;
        if d + 1 < simplices.len() {
            return Err(parse_err(ln, "simplices out of dimension order"));
        }
        if d >= simplices.len() + 1 {
            return Err(parse_err(ln, "dimension skipped"));
        }
        if d == simplices.len() {
            simplices.push(Vec::new());
        }
        simplices[d].push(s);
        seen += 1;
    }
    if seen != total {
        return Err(parse_err(last_ln, format!("declared {total} simplices, found {seen}")));
    }
    let k = SimplicialComplex {
        family,
        n,
        m,
        p,
        vertices,
        simplices,
    };
    k.validate().map_err(|e| parse_err(0, e.to_string()))?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{
        build_b_proj, build_bda_pm, build_tits, build_tits_oriented, link, BuildOptions,
    };

    #[test]
    fn roundtrip_every_label_kind() {
        let o = BuildOptions::default();
        let ks = vec![
            build_bda_pm(2, 1, 3, &o).unwrap(),
            build_b_proj(2, 1, 3, &o).unwrap(),
            build_tits(3, 3, &o).unwrap(),
            build_tits_oriented(3, 5, &o).unwrap(),
            build_tits(1, 5, &o).unwrap(),
            SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap(),
        ];
        let l = link(&ks[0], &[1]).unwrap();
        for k in ks.iter().chain([&l]) {
            let text = write_complex(k);
            let back = parse_complex(&text).unwrap();
            assert_eq!(&back, k);
            assert_eq!(write_complex(&back), text);
        }
    }

    #[test]
    fn small_export_is_stable() {
        let k = build_bda_pm(2, 0, 2, &BuildOptions::default()).unwrap();
        let expect = "bda-pm 2 0 2\nvertices 3 pm\n0 (0,1)\n1 (1,0)\n2 (1,1)\nsimplices 7\n\
                      0 s 0\n0 s 1\n0 s 2\n1 s 0 1\n1 s 0 2\n1 s 1 2\n2 i 0 1 2 [0 1 2]\n";
        assert_eq!(write_complex(&k), expect);
    }

    #[test]
    fn rejects_malformed() {
        let good = write_complex(&build_bda_pm(2, 0, 2, &BuildOptions::default()).unwrap());
        let bad = [
            "",
            "nonsense 1 2 3",
            "bda-pm 2 0 4\nvertices 0 pm\nsimplices 0\n",
            &good.replace("0 (0,1)", "0 (0,2)"),
            &good.replace("1 s 0 1\n", ""),
            &good.replace("simplices 7", "simplices 8"),
            &good.replace("[0 1 2]", "[0 1 2"),
            &good.replace("2 i", "2 q"),
            &good.replace("1 s 1 2", "1 s 2 1"),
        ];
        for b in bad {
            assert!(parse_complex(b).is_err(), "accepted:\n{b}");
        }
    }
}
