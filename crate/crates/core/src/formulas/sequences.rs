use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::gaussian::{gaussian_binomial, GaussianTable};
use super::{RankSequence, SequenceKind};
use crate::error::{Error, Result};
use crate::gfq::is_prime;

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(p, "the rank recursion needs p >= 3"));
    }
    Ok(())
}

/// `p^(n choose 2)`: the rank of the Steinberg module of SL_n(F_p).
pub fn steinberg_rank(p: u64, n: u64) -> BigUint {
    let e = n * n.saturating_sub(1) / 2;
    BigUint::from(p).pow(e as u32)
}

/// Ranks `t_0 = 1, t_1, ..., t_max_n` of the top reduced homology of the ±-oriented
/// Tits building over F_p, by the exact recursion
///
/// ```text
/// t_n = ((p-3)/2 + (p-1)/2 · p^(n-1)) t_(n-1)
///     + (p-1)(p-3)/4 · Σ_{k=1}^{n-2} p^k [n-1 choose k]_p t_k t_(n-k-1).
/// ```
///
/// Terms `k` and `n-1-k` share the same Gaussian binomial, so they are summed in pairs.
pub fn t_sequence(p: u64, max_n: usize) -> Result<RankSequence> {
    require_odd_prime(p)?;
    if max_n < 1 {
        return Err(Error::Domain("t_sequence needs max_n >= 1".into()));
    }
    let half_pm3 = BigUint::from((p - 3) / 2);
    let half_pm1 = BigUint::from((p - 1) / 2);
    let cross = BigUint::from((p - 1) * (p - 3) / 4);
    let mut gr = GaussianTable::new(p);
    let mut t: Vec<BigUint> = vec![BigUint::one(), BigUint::one()];
    for n in 2..=max_n {
        let lead = &half_pm3 + &half_pm1 * gr.power(n - 1);
        let mut acc = lead * &t[n - 1];
        if !cross.is_zero() && n >= 3 {
            let m = n - 1;
            gr.row(m);
            let powers = gr.powers();
            let row = gr.cached_row(m).expect("row computed above");
            let mut sum = BigUint::zero();
            // pair k with m - k
            for k in 1..=(m / 2) {
                let j = m - k;
                let weight = if k == j {
                    powers[k].clone()
                } else {
                    &powers[k] + &powers[j]
                };
                sum += weight * &row[k] * (&t[k] * &t[j]);
            }
            acc += cross.clone() * sum;
        }
        t.push(acc);
    }
    t.truncate(max_n + 1);
    Ok(RankSequence {
        p,
        kind: SequenceKind::T,
        values: t,
    })
}

/// Paraschivescu's lower bound `t'_n = ((p-1)/2)^(n-1) p^(n choose 2)`, computed both in
/// closed form and by the recursion `t'_n = (p-1)/2 · p^(n-1) · t'_(n-1)`; the two are
/// required to agree. `values[0]` is set to 1.
pub fn paraschivescu_sequence(p: u64, max_n: usize) -> Result<RankSequence> {
    require_odd_prime(p)?;
    let half = BigUint::from((p - 1) / 2);
    let pb = BigUint::from(p);
    let mut values = vec![BigUint::one()];
    let mut rec = BigUint::one();
    let mut pn = BigUint::one(); // p^(n-1)
    for n in 1..=max_n {
        if n >= 2 {
            pn *= &pb;
            rec = &half * &pn * rec;
        }
        let closed = half.pow((n - 1) as u32) * steinberg_rank(p, n as u64);
        if closed != rec {
            return Err(Error::AssertionFailure(format!(
                "paraschivescu closed form and recursion differ at n = {n}"
            )));
        }
        values.push(closed);
    }
    Ok(RankSequence {
        p,
        kind: SequenceKind::TPrime,
        values,
    })
}

/// Genus `(p+2)(p-3)(p-5)/24` of the level-p modular curve.
pub fn modular_genus(p: u64) -> Result<BigUint> {
    require_odd_prime(p).map_err(|e| match e {
        Error::UnsupportedPrime(..) => {
            Error::Domain("modular genus formula covers odd primes only".into())
        }
        other => other,
    })?;
    if p < 5 {
        return Ok(BigUint::zero());
    }
    let prod = BigUint::from((p + 2) * (p - 3) * (p - 5));
    exact_div(prod, 24, "modular genus")
}

/// The integer `(p+2)(p-3)(p-5)(p-1)/24`, i.e. genus times `p-1`.
pub fn kernel_coefficient(p: u64) -> Result<BigUint> {
    require_odd_prime(p)?;
    if p < 5 {
        return Ok(BigUint::zero());
    }
    exact_div(BigUint::from((p + 2) * (p - 3) * (p - 5) * (p - 1)), 24, "kernel coefficient")
}

fn exact_div(num: BigUint, den: u64, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigUint::from(den));
    if !r.is_zero() {
        return Err(Error::AssertionFailure(format!("{what}: division by {den} is inexact")));
    }
    Ok(q)
}

/// `t_n + (p+2)(p-3)(p-5)(p-1)/24 · [n choose 2]_p · t_(n-2)` for `n >= 3`: a lower bound on
/// the rank of the top cohomology, attained for p = 3 and p = 5.
pub fn top_cohomology_lower_bound(p: u64, n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::Domain(format!("lower bound needs n >= 3, got {n}")));
    }
    let t = t_sequence(p, n)?;
    lower_bound_from(&t, n)
}

pub(crate) fn lower_bound_from(t: &RankSequence, n: usize) -> Result<BigUint> {
    let coeff = kernel_coefficient(t.p)?;
    let gr2 = gaussian_binomial(n as u64, 2, t.p)?;
    Ok(&t.values[n] + coeff * gr2 * &t.values[n - 2])
}

/// Lower bounds on the top cohomology rank for `n = 0..=max_n`. For `n >= 3` this is
/// [`top_cohomology_lower_bound`]; `n = 2` uses the exact value `t_2 + 2·genus`, and
/// `n <= 1` the trivial rank 1.
pub fn lower_bound_sequence(p: u64, max_n: usize) -> Result<RankSequence> {
    let t = t_sequence(p, max_n.max(1))?;
    let mut values = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let v = match n {
            0 | 1 => t.values[n].clone(),
            2 => &t.values[2] + BigUint::from(2u32) * modular_genus(p)?,
            _ => lower_bound_from(&t, n)?,
        };
        values.push(v);
    }
    Ok(RankSequence {
        p,
        kind: SequenceKind::LowerBound,
        values,
    })
}

pub fn steinberg_sequence(p: u64, max_n: usize) -> Result<RankSequence> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(RankSequence {
        p,
        kind: SequenceKind::Steinberg,
        values: (0..=max_n as u64).map(|n| steinberg_rank(p, n)).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub n: usize,
    #[serde(serialize_with = "super::ser_decimal")]
    pub t: BigUint,
    #[serde(serialize_with = "super::ser_decimal")]
    pub t_prime: BigUint,
    /// `t_n / t'_n` in lowest terms.
    pub ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundComparison {
    pub p: u64,
    pub rows: Vec<BoundRow>,
    /// Set when the strict comparison does not apply (p < 5).
    pub skipped: Option<String>,
}

/// Checks `t_n > t'_n` for `2 <= n <= max_n`.
pub fn compare_bounds(p: u64, max_n: usize) -> Result<BoundComparison> {
    require_odd_prime(p)?;
    let t = t_sequence(p, max_n.max(1))?;
    let tp = paraschivescu_sequence(p, max_n.max(1))?;
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let (a, b) = (&t.values[n], &tp.values[n]);
        let g = a.gcd(b);
        rows.push(BoundRow {
            n,
            t: a.clone(),
            t_prime: b.clone(),
            ratio: format!("{}/{}", a / &g, b / &g),
        });
    }
    if p < 5 {
        return Ok(BoundComparison {
            p,
            rows,
            skipped: Some(format!("strict dominance needs p >= 5; p = {p}")),
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.t <= r.t_prime) {
        return Err(Error::AssertionFailure(format!(
            "t_{} = {} does not exceed t'_{} = {}",
            bad.n, bad.t, bad.n, bad.t_prime
        )));
    }
    Ok(BoundComparison {
        p,
        rows,
        skipped: None,
    })
}
