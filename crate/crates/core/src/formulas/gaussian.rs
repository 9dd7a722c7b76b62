use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Number of `k`-dimensional subspaces of F_q^n, via the product formula
/// `∏_{i<k} (q^n - q^i) / (q^k - q^i)`. The final division is checked to be exact.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::Domain(format!("gaussian binomial with k = {k} > n = {n}")));
    }
    if q < 2 {
        return Err(Error::Domain(format!("gaussian binomial base {q} < 2")));
    }
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let qk = q.pow(k as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..k {
        num *= &qn - &qi;
        den *= &qk - &qi;
        qi *= &q;
    }
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::AssertionFailure(format!(
            "inexact gaussian binomial division for n={n}, k={k}"
        )));
    }
    Ok(quot)
}

/// Rows of Gaussian binomials `[n choose k]_q`, `0 <= k <= n`, grown one row at a time by
/// the q-Pascal rule `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
#[derive(Clone, Debug)]
pub struct GaussianTable {
    powers: Vec<BigUint>,
    rows: Vec<Vec<BigUint>>,
    q: BigUint,
}

impl GaussianTable {
    pub fn new(q: u64) -> Self {
        Self {
            powers: vec![BigUint::one()],
            rows: vec![vec![BigUint::one()]],
            q: BigUint::from(q),
        }
    }

    /// `q^k`, cached.
    pub fn power(&mut self, k: usize) -> &BigUint {
        while self.powers.len() <= k {
            let next = self.powers.last().unwrap() * &self.q;
            self.powers.push(next);
        }
        &self.powers[k]
    }

    /// The row `[n choose k]_q` for `k = 0..=n`.
    pub fn row(&mut self, n: usize) -> &[BigUint] {
        self.power(n);
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let m = prev.len();
            let mut next = Vec::with_capacity(m + 1);
            next.push(BigUint::one());
            for k in 1..m {
                next.push(&prev[k - 1] + &self.powers[k] * &prev[k]);
            }
            next.push(BigUint::one());
            self.rows.push(next);
        }
        &self.rows[n]
    }

    /// Powers computed so far (`q^0..`); call [`Self::power`] first to extend.
    pub fn powers(&self) -> &[BigUint] {
        &self.powers
    }

    /// A row computed earlier by [`Self::row`].
    pub fn cached_row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&mut self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.row(n)[k].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(gaussian_binomial(2, 1, 5).unwrap(), 6u32.into());
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35u32.into());
        for n in 0..6 {
            assert_eq!(gaussian_binomial(n, 0, 7).unwrap(), 1u32.into());
        }
        assert!(gaussian_binomial(2, 3, 5).is_err());
    }

    #[test]
    fn table_matches_product_formula() {
        for q in [2u64, 3, 5, 7] {
            let mut t = GaussianTable::new(q);
            for n in 0..=40usize {
                let row = t.row(n).to_vec();
                for k in 0..=n {
                    assert_eq!(row[k], gaussian_binomial(n as u64, k as u64, q).unwrap());
                }
            }
        }
    }
}
