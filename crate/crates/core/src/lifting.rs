//! Constructive lifting along `SL_n(Z) → SL_n(F_p)`.
//!
//! A matrix of determinant 1 over F_p is written as a product of transvections
//! `E_ij(a) = I + a·e_ij`; lifting each coefficient to its least nonnegative residue gives an
//! integer matrix of determinant exactly 1 with the same reduction.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::gfq::{det, PmVector, PrimeField, Rows};

/// The elementary matrix `I + a·e_ij`, `i != j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub a: u32,
}

impl Transvection {
    pub fn to_matrix(self, n: usize) -> Rows {
        let mut m = identity_rows(n);
        m[self.i][self.j] = self.a;
        m
    }
}

fn identity_rows(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

fn check_square(m: &[Vec<u32>]) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("expected a nonempty square matrix, got {n} rows")));
    }
    Ok(n)
}

fn reduced(field: &PrimeField, m: &[Vec<u32>]) -> Rows {
    m.iter()
        .map(|r| r.iter().map(|&x| field.reduce(i64::from(x))).collect())
        .collect()
}

/// Writes `m` (determinant 1) as a product of transvections, in order. The word comes from
/// reducing `m` to the identity by row operations, column by column, so it has `O(n^2)`
/// letters.
pub fn decompose_elementary(field: &PrimeField, m: &[Vec<u32>]) -> Result<Vec<Transvection>> {
    let n = check_square(m)?;
    let mut a = reduced(field, m);
    let d = det(field, &a)?.value;
    if d != 1 {
        return Err(Error::NotSpecialLinear(d));
    }
    // row operations applied, each `row i += c·row j`
    let mut ops: Vec<Transvection> = Vec::new();
    let mut apply = |a: &mut Rows, i: usize, j: usize, c: u32| {
        if c == 0 {
            return;
        }
        for k in 0..n {
            let v = field.mul(c, a[j][k]);
            a[i][k] = field.add(a[i][k], v);
        }
        ops.push(Transvection { i, j, a: c });
    };
    for c in 0..n {
        if a[c][c] == 0 {
            let r = (c + 1..n)
                .find(|&r| a[r][c] != 0)
                .expect("an invertible trailing block has a nonzero entry in its first column");
            apply(&mut a, c, r, 1);
        }
        let d = a[c][c];
        if d != 1 {
            // c + 1 < n: in the last column the matrix is diag(1, ..., 1, d) and det = 1 forces d = 1
            let r = c + 1;
            if a[r][c] == 0 {
                apply(&mut a, r, c, 1);
            }
            let coeff = field.mul(field.sub(1, d), field.inv(a[r][c]));
            apply(&mut a, c, r, coeff);
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let coeff = field.neg(a[i][c]);
                apply(&mut a, i, c, coeff);
            }
        }
    }
    debug_assert_eq!(a, identity_rows(n));
    // E_k ⋯ E_1 m = I, so m = E_1^{-1} ⋯ E_k^{-1}
    Ok(ops
        .into_iter()
        .map(|t| Transvection {
            a: field.neg(t.a),
            ..t
        })
        .collect())
}

/// Product of a transvection word over the integers, each coefficient lifted to
/// `0..p`.
pub fn lift_word(n: usize, word: &[Transvection]) -> Vec<Vec<BigInt>> {
    let mut l: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // right multiplication by E_ij(a) adds a·(column i) to column j
    for t in word {
        let a = BigInt::from(t.a);
        for row in l.iter_mut() {
            let add = &a * &row[t.i];
            row[t.j] += add;
        }
    }
    l
}

/// An integer matrix of determinant exactly 1 reducing to `m` mod p.
pub fn lift_sl(field: &PrimeField, m: &[Vec<u32>]) -> Result<Vec<Vec<BigInt>>> {
    let word = decompose_elementary(field, m)?;
    Ok(lift_word(m.len(), &word))
}

/// Entrywise reduction mod p.
pub fn reduce(field: &PrimeField, l: &[Vec<BigInt>]) -> Rows {
    let p = BigInt::from(field.p());
    l.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = ((x % &p) + &p) % &p;
                    u32::try_from(&v).expect("residue below p")
                })
                .collect()
        })
        .collect()
}

/// Exact determinant of an integer matrix (fraction-free elimination).
pub fn det_integer(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                a[i][j] = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    sign * prev
}

/// An integer matrix of determinant exactly `±1` reducing to `m`, whose determinant must be
/// `±1` mod p. Determinant -1 is handled by negating the first column, lifting, and negating
/// it back.
pub fn lift_unimodular(field: &PrimeField, m: &[Vec<u32>]) -> Result<Vec<Vec<BigInt>>> {
    check_square(m)?;
    let mut m = reduced(field, m);
    let d = det(field, &m)?.value;
    let flip = if d == 1 {
        false
    } else if d == field.p() - 1 {
        true
    } else {
        return Err(Error::NotUnimodular(d));
    };
    if flip {
        for row in m.iter_mut() {
            row[0] = field.neg(row[0]);
        }
    }
    let mut l = lift_sl(field, &m)?;
    if flip {
        for row in l.iter_mut() {
            row[0] = -std::mem::take(&mut row[0]);
        }
    }
    Ok(l)
}

/// Lifts a ±-basis of F_p^n whose representatives have determinant ±1 to a basis of Z^n.
/// The returned vectors reduce exactly to the given representatives.
pub fn lift_pm_basis(field: &PrimeField, vs: &[PmVector]) -> Result<Vec<Vec<BigInt>>> {
    let n = vs.len();
    if vs.iter().any(|v| v.rep().dim() != n) {
        return Err(Error::Shape(format!("{n} vectors do not form a square matrix")));
    }
    let m: Rows = (0..n).map(|i| vs.iter().map(|v| v.rep().coords[i]).collect()).collect();
    let l = lift_unimodular(field, &m)?;
    Ok((0..n).map(|j| l.iter().map(|row| row[j].clone()).collect()).collect())
}

/// A uniformly random element of `SL_n(F_p)`: a uniform invertible matrix with its first
/// row rescaled by the inverse determinant.
pub fn random_sl<R: Rng + ?Sized>(field: &PrimeField, n: usize, rng: &mut R) -> Rows {
    let p = field.p();
    loop {
        let mut m: Rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        let d = crate::gfq::det(field, &m).expect("square").value;
        if d == 0 {
            continue;
        }
        let s = field.inv(d);
        for x in m[0].iter_mut() {
            *x = field.mul(*x, s);
        }
        return m;
    }
}

/// Largest accepted dimension for textual matrix input.
pub const MAX_TEXT_DIM: usize = 64;

/// Parses a square integer matrix: rows separated by newlines or `;`, entries by whitespace
/// or commas. Text after `#` on a line is ignored.
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for chunk in line.split(';') {
            let entries: Vec<&str> = chunk
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .collect();
            if entries.is_empty() {
                continue;
            }
            if entries.len() > MAX_TEXT_DIM || rows.len() >= MAX_TEXT_DIM {
                return Err(parse_err(ln + 1, format!("matrix larger than {MAX_TEXT_DIM}")));
            }
            let row = entries
                .iter()
                .map(|s| s.parse::<i64>().map_err(|_| parse_err(ln + 1, format!("bad entry `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
    }
    let n = rows.len();
    if n == 0 {
        return Err(parse_err(1, "empty matrix"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(parse_err(0, format!("row {} has {} entries, expected {n}", i + 1, rows[i].len())));
    }
    Ok(rows)
}

/// Reduces an integer matrix into F_p.
pub fn to_field(field: &PrimeField, m: &[Vec<i64>]) -> Rows {
    m.iter().map(|r| r.iter().map(|&x| field.reduce(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::{canonicalize_pm, mat_mul, Vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word_product(field: &PrimeField, n: usize, word: &[Transvection]) -> Rows {
        word.iter()
            .fold(identity_rows(n), |acc, t| mat_mul(field, &acc, &t.to_matrix(n)))
    }

    fn ints(m: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        m.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
    }

    #[test]
    fn decomposition_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert!(decompose_elementary(&f5, &identity_rows(3)).unwrap().is_empty());
        let e12 = vec![vec![1, 3], vec![0, 1]];
        assert_eq!(decompose_elementary(&f5, &e12).unwrap(), vec![Transvection { i: 0, j: 1, a: 3 }]);
        let rot = vec![vec![0, 4], vec![1, 0]];
        let w = decompose_elementary(&f5, &rot).unwrap();
        assert_eq!(
            w,
            vec![
                Transvection { i: 0, j: 1, a: 4 },
                Transvection { i: 1, j: 0, a: 1 },
                Transvection { i: 0, j: 1, a: 4 },
            ]
        );
        assert_eq!(word_product(&f5, 2, &w), rot);
        assert!(matches!(
            decompose_elementary(&f5, &[vec![2, 0], vec![0, 1]]),
            Err(Error::NotSpecialLinear(2))
        ));
    }

    #[test]
    fn lift_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(ints(&lift_sl(&f7, &identity_rows(2)).unwrap()), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ints(&lift_sl(&f7, &[vec![1, 1], vec![0, 1]]).unwrap()), vec![vec![1, 1], vec![0, 1]]);
        let f5 = PrimeField::new(5).unwrap();
        let d = vec![vec![2, 0], vec![0, 3]];
        let l = lift_sl(&f5, &d).unwrap();
        assert_eq!(reduce(&f5, &l), d);
        assert_eq!(det_integer(&l), BigInt::one());
    }

    #[test]
    fn pm_basis_lifts() {
        let f5 = PrimeField::new(5).unwrap();
        let pm = |c: &[i64]| canonicalize_pm(&f5, &Vector::from_ints(&f5, c)).unwrap();
        let std = lift_pm_basis(&f5, &[pm(&[1, 0]), pm(&[0, 1])]).unwrap();
        assert_eq!(ints(&std), vec![vec![1, 0], vec![0, 1]]);
        let l = lift_pm_basis(&f5, &[pm(&[1, 1]), pm(&[0, 1])]).unwrap();
        assert_eq!(ints(&l), vec![vec![1, 1], vec![0, 1]]);
        // ±(2,0), ±(0,3): representatives (2,0) and (0,2), det 4 = -1
        let vs = [pm(&[2, 0]), pm(&[0, 3])];
        let l = lift_pm_basis(&f5, &vs).unwrap();
        let m: Vec<Vec<BigInt>> = (0..2).map(|i| (0..2).map(|j| l[j][i].clone()).collect()).collect();
        assert_eq!(det_integer(&m).magnitude(), BigInt::one().magnitude());
        for (v, want) in l.iter().zip(&vs) {
            let back: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(&pm(&back), want);
        }
        assert!(matches!(lift_pm_basis(&f5, &[pm(&[1, 0]), pm(&[0, 2])]), Err(Error::NotUnimodular(2))));
        let l = lift_unimodular(&f5, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(det_integer(&l), BigInt::from(-1));
        assert_eq!(reduce(&f5, &l), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn sampled_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 7, 11] {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=4 {
                for _ in 0..50 {
                    let m = random_sl(&f, n, &mut rng);
                    let w = decompose_elementary(&f, &m).unwrap();
                    assert!(w.len() <= 3 * n * n);
                    assert_eq!(word_product(&f, n, &w), m);
                    let l = lift_word(n, &w);
                    assert_eq!(reduce(&f, &l), m);
                    assert_eq!(det_integer(&l), BigInt::one());
                }
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_int_matrix("1 2; 3 4").unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(parse_int_matrix("# m\n1,-2\n3, 4\n").unwrap(), vec![vec![1, -2], vec![3, 4]]);
        for bad in ["", "1 2", "1 2; 3", "a", "1 2;3 99999999999999999999"] {
            assert!(parse_int_matrix(bad).is_err(), "{bad:?}");
        }
    }
}
