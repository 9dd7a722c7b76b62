//! Exact big-integer evaluation of the rank formulas: Gaussian binomials, the recursion for
//! the ±-oriented building ranks `t_n`, Paraschivescu's bound `t'_n`, Steinberg ranks and the
//! top-cohomology lower bound. No floating point anywhere.

mod gaussian;
mod io;
mod sequences;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

pub use gaussian::{gaussian_binomial, GaussianTable};
pub use io::{parse_sequence_csv, parse_sequence_document, SequenceDocument};
pub use sequences::{
    compare_bounds, kernel_coefficient, lower_bound_sequence, modular_genus,
    paraschivescu_sequence, steinberg_rank, steinberg_sequence, t_sequence,
    top_cohomology_lower_bound, BoundComparison, BoundRow,
};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    T,
    TPrime,
    LowerBound,
    Steinberg,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::T => "t",
            SequenceKind::TPrime => "t-prime",
            SequenceKind::LowerBound => "lower-bound",
            SequenceKind::Steinberg => "steinberg",
        }
    }
}

/// An exact integer sequence indexed from `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSequence {
    pub p: u64,
    pub kind: SequenceKind,
    pub values: Vec<BigUint>,
}

impl RankSequence {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn max_n(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// `n,value` lines with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }

    pub fn to_document(&self) -> SequenceDocument {
        SequenceDocument {
            p: self.p,
            kind: self.kind,
            values: self.values.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// One row of the `ranks` table: every formula evaluated at a single `n`.
#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub n: usize,
    #[serde(serialize_with = "ser_decimal")]
    pub t: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub t_prime: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub steinberg: BigUint,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub lower_bound: Option<BigUint>,
}

pub fn rank_table(p: u64, max_n: usize) -> Result<Vec<RankRow>> {
    let t = t_sequence(p, max_n.max(1))?;
    rank_table_from(&t, max_n)
}

/// Same as [`rank_table`] but reusing an already computed `t` sequence.
pub fn rank_table_from(t: &RankSequence, max_n: usize) -> Result<Vec<RankRow>> {
    let p = t.p;
    let tp = paraschivescu_sequence(p, max_n.max(1))?;
    (1..=max_n)
        .map(|n| {
            Ok(RankRow {
                n,
                t: t.values[n].clone(),
                t_prime: tp.values[n].clone(),
                steinberg: steinberg_rank(p, n as u64),
                lower_bound: if n >= 3 {
                    Some(sequences::lower_bound_from(t, n)?)
                } else {
                    None
                },
            })
        })
        .collect()
}

pub(crate) fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_opt_decimal<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let rows = rank_table(3, 3).unwrap();
        let t: Vec<String> = rows.iter().map(|r| r.t.to_string()).collect();
        assert_eq!(t, vec!["1", "3", "27"]);
        assert!(rows[1].lower_bound.is_none());
        assert_eq!(rows[2].lower_bound.as_ref().unwrap().to_string(), "27");
        assert!(rank_table(4, 3).is_err());
    }

    #[test]
    fn csv_shape() {
        let csv = t_sequence(5, 3).unwrap().to_csv();
        assert_eq!(csv, "n,value\n0,1\n1,1\n2,11\n3,621\n");
    }
}
