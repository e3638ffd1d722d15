//! Arithmetic of torsion points on (Q/Z)^2 and small number-theoretic
//! helpers: factorisation, Euler phi, prime-power tests, the quadratic
//! Bernoulli polynomial, and partition-count tables.
//!
//! A torsion point is stored as a pair of numerators modulo its level n; it
//! must be nonzero but need not have exact order n.  The q-order constant
//! `ell` attached to a point depends only on its first coordinate through
//! B2(x) = x^2 - x + 1/6.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest k accepted by [`partition_counts`].
pub const PARTITION_CAP: u64 = 400;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Prime factorisation by trial division; fine for the desk-scale levels
/// and norms this crate works with.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut result = n;
    for (p, _) in factor(n) {
        result = result / p * (p - 1);
    }
    result
}

/// Returns (p, k) when n = p^k with k >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factor(n);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Smallest multiple of n among {2n, 3n} that is not a prime power.
///
/// 2n is a prime power only when n is a power of two, and then 3n is
/// divisible by exactly the primes 2 and 3.
pub fn raise_level(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("raise_level needs n >= 2, got {n}")));
    }
    let m = if n.is_power_of_two() { 3 * n } else { 2 * n };
    debug_assert!(prime_power(m).is_none());
    Ok(m)
}

/// B2(t) = t^2 - t + 1/6, the second Bernoulli polynomial.
pub fn bernoulli_b2(t: &Rational) -> Rational {
    t * t - t + rational(1, 6)
}

/// A nonzero point of (Q/Z)^2 with denominator dividing n, stored as
/// numerators mod n.  Its additive order is n / gcd(c1, c2, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionPoint {
    n: u32,
    c: (u32, u32),
}

impl TorsionPoint {
    pub fn new(n: u32, c1: i64, c2: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("torsion level must be >= 2, got {n}")));
        }
        let c1 = c1.rem_euclid(n as i64) as u32;
        let c2 = c2.rem_euclid(n as i64) as u32;
        if c1 == 0 && c2 == 0 {
            return Err(Error::InvalidInput(
                "the zero point carries no Siegel unit".into(),
            ));
        }
        Ok(TorsionPoint { n, c: (c1, c2) })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// Numerators (c1, c2) with the point being (c1/n, c2/n).
    pub fn numerators(&self) -> (u32, u32) {
        self.c
    }

    /// Additive order in (Q/Z)^2.
    pub fn order(&self) -> u32 {
        (self.n as u64 / gcd3(self.c.0 as u64, self.c.1 as u64, self.n as u64)) as u32
    }

    pub fn is_exact_order(&self) -> bool {
        self.order() == self.n
    }

    pub fn coords(&self) -> (Rational, Rational) {
        (
            rational(self.c.0 as i64, self.n as i64),
            rational(self.c.1 as i64, self.n as i64),
        )
    }
}

impl std::fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}/{}, {}/{})", self.c.0, self.n, self.c.1, self.n)
    }
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    num_integer::gcd(num_integer::gcd(a, b), c)
}

/// q-order constant of the Siegel unit attached to `a`: B2(a1)/2.
///
/// Always lies in [-1/24, 1/12]; the extremes are attained at a1 = 1/2 and
/// a1 = 0.
pub fn ell(a: &TorsionPoint) -> Rational {
    let a1 = rational(a.c.0 as i64, a.n as i64);
    bernoulli_b2(&a1) / rational(2, 1)
}

/// All points of exact order n, sorted lexicographically by numerators.
pub fn enumerate_an(n: u32) -> Vec<TorsionPoint> {
    let mut out = Vec::new();
    for c1 in 0..n {
        for c2 in 0..n {
            if gcd3(c1 as u64, c2 as u64, n as u64) == 1 {
                out.push(TorsionPoint { n, c: (c1, c2) });
            }
        }
    }
    out
}

/// All nonzero points with denominator dividing n, sorted lexicographically.
pub fn enumerate_nonzero(n: u32) -> Vec<TorsionPoint> {
    let mut out = Vec::new();
    for c1 in 0..n {
        for c2 in 0..n {
            if c1 != 0 || c2 != 0 {
                out.push(TorsionPoint { n, c: (c1, c2) });
            }
        }
    }
    out
}

/// |A_n| in closed form: n^2 * prod_{p | n} (1 - p^-2).
pub fn an_count(n: u64) -> u64 {
    let mut num = n * n;
    for (p, _) in factor(n) {
        num = num / (p * p) * (p * p - 1);
    }
    num
}

/// Phi_n(1): n for n = 1 is 0, p for prime powers p^k, and 1 otherwise.
pub fn cyclotomic_at_one(n: u64) -> BigInt {
    if n == 1 {
        return BigInt::zero();
    }
    match prime_power(n) {
        Some((p, _)) => BigInt::from(p),
        None => BigInt::one(),
    }
}

/// Table of partition counts p_l(k) (partitions of k into exactly l parts)
/// for all k up to the requested size, plus row sums |P_k|.
pub struct PartitionTable {
    max: usize,
    /// rows[k][l] = number of partitions of k into exactly l parts, l <= k.
    rows: Vec<Vec<BigUint>>,
}

impl PartitionTable {
    /// p_l(k); zero outside the table's triangular support.
    pub fn exact_parts(&self, l: usize, k: usize) -> BigUint {
        assert!(k <= self.max);
        if l > k {
            return BigUint::zero();
        }
        self.rows[k][l].clone()
    }

    /// |P_k|, the number of partitions of k.
    pub fn total(&self, k: usize) -> BigUint {
        assert!(k <= self.max);
        self.rows[k].iter().sum()
    }
}

/// Builds the p_l(k) table via p_l(k) = p_{l-1}(k-1) + p_l(k-l).
pub fn partition_counts(k: u64) -> Result<PartitionTable> {
    if k > PARTITION_CAP {
        return Err(Error::ResourceCap(format!(
            "partition table capped at k <= {PARTITION_CAP}, requested {k}"
        )));
    }
    let k = k as usize;
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let mut row = vec![BigUint::zero(); m + 1];
        if m == 0 {
            row[0] = BigUint::one();
        } else {
            for l in 1..=m {
                // p_l(m) = p_{l-1}(m-1) + p_l(m-l): split on whether a part
                // equals 1; the second term is zero once l exceeds m - l.
                let mut v = rows[m - 1][l - 1].clone();
                if l <= m - l {
                    v += rows[m - l][l].clone();
                }
                row[l] = v;
            }
        }
        rows.push(row);
    }
    Ok(PartitionTable { max: k, rows })
}

/// Sum of ell over all of A_n; vanishes identically (distribution relation),
/// used as a structural guard by callers.
pub fn ell_sum_over_an(n: u32) -> Rational {
    enumerate_an(n)
        .iter()
        .map(ell)
        .fold(Rational::zero(), |acc, x| acc + x)
}

pub fn is_rational_integer(r: &Rational) -> bool {
    r.denom().abs().is_one()
}
