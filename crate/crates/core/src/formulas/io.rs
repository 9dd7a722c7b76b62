use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{RankSequence, SequenceKind};
use crate::error::{parse_err, Error, Result};
use crate::gfq::is_prime;

/// Self-describing form of a [`RankSequence`]; values are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub p: u64,
    pub kind: SequenceKind,
    pub values: Vec<String>,
}

fn parse_decimal(s: &str, line: usize) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("not a decimal integer: {s:?}")));
    }
    s.parse().map_err(|_| parse_err(line, format!("not a decimal integer: {s:?}")))
}

/// Parses `n,value` CSV (header required, `n` consecutive from 0).
pub fn parse_sequence_csv(text: &str) -> Result<Vec<BigUint>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "n,value" => {}
        _ => return Err(parse_err(1, "expected header `n,value`")),
    }
    let mut values = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (n, v) = line
            .split_once(',')
            .ok_or_else(|| parse_err(lineno, "expected `n,value`"))?;
        let n: usize = n
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad index {n:?}")))?;
        if n != values.len() {
            return Err(parse_err(lineno, format!("expected index {}, got {n}", values.len())));
        }
        values.push(parse_decimal(v, lineno)?);
    }
    Ok(values)
}

/// Parses and validates a JSON [`SequenceDocument`].
pub fn parse_sequence_document(text: &str) -> Result<RankSequence> {
    let doc: SequenceDocument =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if !is_prime(doc.p) {
        return Err(Error::NotPrime(doc.p));
    }
    let values = doc
        .values
        .iter()
        .map(|v| parse_decimal(v, 0))
        .collect::<Result<Vec<_>>>()?;
    if doc.kind == SequenceKind::T
        && (values.len() < 2 || !values[0].is_one() || !values[1].is_one())
    {
        return Err(parse_err(0, "t sequences start 1, 1"));
    }
    Ok(RankSequence {
        p: doc.p,
        kind: doc.kind,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::t_sequence;
    use proptest::prelude::*;

    #[test]
    fn rejects_garbage() {
        assert!(parse_sequence_csv("").is_err());
        assert!(parse_sequence_csv("n,value\n1,3\n").is_err());
        assert!(parse_sequence_csv("n,value\n0,-3\n").is_err());
        assert!(parse_sequence_csv("n,value\n0,+3\n").is_err());
        assert!(parse_sequence_document("{\"p\":4,\"kind\":\"t\",\"values\":[\"1\",\"1\"]}").is_err());
        assert!(parse_sequence_document("{\"p\":5,\"kind\":\"t\",\"values\":[\"2\",\"1\"]}").is_err());
        assert!(parse_sequence_document("[]").is_err());
    }

    proptest! {
        #[test]
        fn csv_and_document_roundtrip(p in prop::sample::select(vec![3u64, 5, 7, 11]), n in 1usize..40) {
            let t = t_sequence(p, n).unwrap();
            prop_assert_eq!(parse_sequence_csv(&t.to_csv()).unwrap(), t.values.clone());
            let json = serde_json::to_string(&t.to_document()).unwrap();
            prop_assert_eq!(parse_sequence_document(&json).unwrap(), t);
        }
    }
}
