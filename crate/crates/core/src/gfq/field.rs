use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField`]. Products of two residues fit in a `u64`
/// with plenty of headroom, and every exhaustive enumeration is tiny at this scale anyway.
pub const MAX_PRIME: u32 = 1 << 16;

/// Deterministic trial-division primality test, fine for the field moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME as u64 {
            return Err(Error::Domain(format!("prime {p} exceeds supported bound {MAX_PRIME}")));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(v),
            modulus: self.p,
        }
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p as u64 - 2)
    }

    /// Canonical representative of the class of `a` in F_p^× / {±1}: the smaller of `a` and `-a`.
    #[inline]
    pub fn pm_class(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        a.min(self.neg(a))
    }

    #[inline]
    pub fn is_pm_one(&self, a: u32) -> bool {
        a == 1 || a == self.p - 1
    }

    /// Number of classes in F_p^× / {±1}.
    pub fn pm_class_count(&self) -> u32 {
        if self.p == 2 {
            1
        } else {
            (self.p - 1) / 2
        }
    }

    /// The canonical class representatives, ascending.
    pub fn pm_classes(&self) -> impl Iterator<Item = u32> {
        1..=self.pm_class_count()
    }

    /// Nonzero elements, ascending.
    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.p
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElem {
    pub value: u32,
    pub modulus: u32,
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
