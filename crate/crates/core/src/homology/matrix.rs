use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

/// A sparse integer matrix stored by columns; each column lists `(row, value)` with
/// strictly increasing rows and no zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Result<Self> {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            columns[j].push((i as u32, v));
        }
        for col in &mut columns {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(i, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == i => {
                        last.1 = last
                            .1
                            .checked_add(v)
                            .ok_or_else(|| Error::Shape("entry overflows i64".into()))?;
                    }
                    _ => merged.push((i, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
        Ok(Self { rows, cols, columns })
    }

    pub fn from_dense(a: &[Vec<i64>]) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|j| {
                (0..rows)
                    .filter(|&i| a[i][j] != 0)
                    .map(|i| (i as u32, a[i][j]))
                    .collect()
            })
            .collect();
        Self { rows, cols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                a[i as usize][j] = v;
            }
        }
        a
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                columns[i as usize].push((j as u32, v));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// `self · other`, or `None` if an entry overflows.
    pub fn mul(&self, other: &SparseIntMatrix) -> Option<SparseIntMatrix> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut acc = vec![0i64; self.rows];
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            let mut touched = Vec::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    let slot = &mut acc[i as usize];
                    if *slot == 0 {
                        touched.push(i);
                    }
                    *slot = slot.checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for i in touched {
                let v = std::mem::take(&mut acc[i as usize]);
                if v != 0 {
                    out.push((i, v));
                }
            }
            columns.push(out);
        }
        Some(SparseIntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Coordinate-list text: a `rows cols nnz` header, then one `i j value` line per nonzero
/// entry (0-based), column by column.
pub fn write_coo(m: &SparseIntMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", m.rows, m.cols, m.nnz()).unwrap();
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            writeln!(out, "{i} {j} {v}").unwrap();
        }
    }
    out
}

/// Parses [`write_coo`] output. Entries may come in any order but positions must be
/// distinct and values nonzero.
pub fn parse_coo(text: &str) -> Result<SparseIntMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(parse_err(ln, "header must be `rows cols nnz`"));
    }
    let num = |s: &str, ln: usize| -> Result<usize> {
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(ln, format!("bad number `{s}`")));
        }
        s.parse().map_err(|_| parse_err(ln, format!("bad number `{s}`")))
    };
    let rows = num(h[0], ln)?;
    let cols = num(h[1], ln)?;
    let nnz = num(h[2], ln)?;
    if rows > u32::MAX as usize || cols > u32::MAX as usize {
        return Err(parse_err(ln, "dimensions exceed u32"));
    }
    if (nnz as u128) > rows as u128 * cols as u128 {
        return Err(parse_err(ln, "more nonzeros than entries"));
    }
    let mut triplets = Vec::new();
    for (ln, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(parse_err(ln, "entry must be `i j value`"));
        }
        let i = num(t[0], ln)?;
        let j = num(t[1], ln)?;
        let v: i64 = t[2]
            .parse()
            .map_err(|_| parse_err(ln, format!("bad value `{}`", t[2])))?;
        if i >= rows || j >= cols {
            return Err(parse_err(ln, format!("entry ({i}, {j}) out of range")));
        }
        if v == 0 {
            return Err(parse_err(ln, "explicit zero entry"));
        }
        triplets.push((i, j, v));
    }
    if triplets.len() != nnz {
        return Err(parse_err(0, format!("declared {nnz} entries, found {}", triplets.len())));
    }
    let mut seen: Vec<(usize, usize)> = triplets.iter().map(|&(i, j, _)| (j, i)).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(parse_err(0, "repeated position"));
    }
    SparseIntMatrix::from_triplets(rows, cols, &triplets)
}
