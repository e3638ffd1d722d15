//! Exact arithmetic in cyclotomic fields Q(zeta_L).
//!
//! Elements are stored as sparse Laurent-free polynomials in zeta_L with the
//! exponent reduced mod L only (i.e. modulo x^L - 1, not modulo Phi_L).  This
//! keeps products of short sums of roots of unity short: multiplying two
//! elements supported on n-th roots (n | L) never leaves that support, whereas
//! the canonical degree-< phi(L) form is dense.  Canonical reduction modulo
//! Phi_L happens lazily, for equality / zero tests / rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::Rational;

/// Largest permitted conductor; 2 * 60^2 covers every level the group code
/// accepts, with headroom.
pub const CONDUCTOR_CAP: u32 = 8192;

/// Coefficients of the n-th cyclotomic polynomial, ascending, monic.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut rem = vec![BigInt::zero(); (n + 1) as usize];
    rem[0] = -BigInt::one();
    rem[n as usize] = BigInt::one();
    let mut memo: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = memo
                .remove(&d)
                .unwrap_or_else(|| cyclotomic_polynomial(d));
            rem = poly_div_exact(&rem, &phi_d);
            memo.insert(d, phi_d);
        }
    }
    rem
}

/// Exact division of integer polynomials (panics on a nonzero remainder:
/// callers only divide x^n - 1 by known factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut work = num.to_vec();
    let mut quot = vec![BigInt::zero(); work.len() - dd];
    for i in (dd..work.len()).rev() {
        if work[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut work[i]);
        for (j, d) in den[..dd].iter().enumerate() {
            let t = &c * d;
            work[i - dd + j] -= t;
        }
        quot[i - dd] = c;
    }
    assert!(
        work[..dd].iter().all(|c| c.is_zero()),
        "division was not exact"
    );
    quot
}

/// A fixed cyclotomic field Q(zeta_L): the conductor, phi(L), and Phi_L.
#[derive(Debug, Clone)]
pub struct CycField {
    conductor: u32,
    dim: usize,
    min_poly: Vec<BigInt>,
}

impl CycField {
    pub fn new(conductor: u32) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        if conductor > CONDUCTOR_CAP {
            return Err(Error::ResourceCap(format!(
                "conductor {conductor} exceeds cap {CONDUCTOR_CAP}"
            )));
        }
        let min_poly = cyclotomic_polynomial(conductor);
        let dim = min_poly.len() - 1;
        Ok(CycField {
            conductor,
            dim,
            min_poly,
        })
    }

    /// The field housing level-n expansion coefficients: conductor 2n^2.
    pub fn for_level(n: u32) -> Result<Self> {
        let c = 2 * (n as u64) * (n as u64);
        if c > CONDUCTOR_CAP as u64 {
            return Err(Error::ResourceCap(format!(
                "level {n} needs conductor {c} beyond cap {CONDUCTOR_CAP}"
            )));
        }
        Self::new(c as u32)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree phi(L) of the field over Q.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> CycNumber {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> CycNumber {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        CycNumber {
            conductor: self.conductor,
            terms,
        }
    }

    pub fn from_integer(&self, v: i64) -> CycNumber {
        self.from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// zeta_L^k, any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycNumber {
        let e = k.rem_euclid(self.conductor as i64) as u32;
        let mut terms = BTreeMap::new();
        terms.insert(e, Rational::one());
        CycNumber {
            conductor: self.conductor,
            terms,
        }
    }

    /// Representatives of (Z/L)^*, i.e. the archimedean embeddings up to
    /// conjugation pairing being left explicit.
    pub fn galois_exponents(&self) -> Vec<u32> {
        (1..=self.conductor)
            .filter(|t| num_integer::gcd(*t as u64, self.conductor as u64) == 1)
            .collect()
    }
}

/// An element of Q(zeta_L), exponents reduced mod L, zero coefficients pruned.
/// Equality and zero tests reduce modulo Phi_L; arithmetic does not.
#[derive(Debug, Clone)]
pub struct CycNumber {
    conductor: u32,
    terms: BTreeMap<u32, Rational>,
}

impl CycNumber {
    fn assert_field(&self, f: &CycField) {
        debug_assert_eq!(self.conductor, f.conductor(), "mixed conductors");
    }

    /// Sparse view: (exponent, coefficient) pairs of the working form.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &CycNumber, f: &CycField) -> CycNumber {
        self.assert_field(f);
        rhs.assert_field(f);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            merge_term(&mut terms, *e, c.clone());
        }
        CycNumber {
            conductor: self.conductor,
            terms,
        }
    }

    pub fn sub(&self, rhs: &CycNumber, f: &CycField) -> CycNumber {
        self.add(&rhs.neg(), f)
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> CycNumber {
        if s.is_zero() {
            return CycNumber {
                conductor: self.conductor,
                terms: BTreeMap::new(),
            };
        }
        CycNumber {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &CycNumber, f: &CycField) -> CycNumber {
        self.assert_field(f);
        rhs.assert_field(f);
        let l = self.conductor;
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = (e1 + e2) % l;
                merge_term(&mut terms, e, c1 * c2);
            }
        }
        CycNumber {
            conductor: l,
            terms,
        }
    }

    pub fn pow(&self, mut e: u64, f: &CycField) -> CycNumber {
        let mut base = self.clone();
        let mut acc = f.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// The Galois map zeta |-> zeta^t; t must be a unit mod L.
    pub fn galois(&self, t: u32, f: &CycField) -> CycNumber {
        self.assert_field(f);
        let l = self.conductor as u64;
        assert_eq!(
            num_integer::gcd(t as u64, l),
            1,
            "galois exponent must be a unit"
        );
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e2 = ((*e as u64) * (t as u64) % l) as u32;
            merge_term(&mut terms, e2, c.clone());
        }
        CycNumber {
            conductor: self.conductor,
            terms,
        }
    }

    /// Sum of |coefficients| of the working form; an upper bound for the
    /// modulus of every archimedean embedding by the triangle inequality.
    pub fn one_norm(&self) -> Rational {
        let mut s = Rational::zero();
        for c in self.terms.values() {
            s += c.abs();
        }
        s
    }

    /// Canonical coordinates: the residue modulo Phi_L, degree < phi(L).
    pub fn canonical(&self, f: &CycField) -> Vec<Rational> {
        self.assert_field(f);
        let dim = f.dim();
        let mut dense = vec![Rational::zero(); self.conductor as usize];
        for (e, c) in &self.terms {
            dense[*e as usize] += c;
        }
        for i in (dim..dense.len()).rev() {
            if dense[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[i], Rational::zero());
            for (j, m) in f.min_poly[..dim].iter().enumerate() {
                if !m.is_zero() {
                    let t = &c * m;
                    dense[i - dim + j] -= t;
                }
            }
        }
        dense.truncate(dim.max(1));
        dense
    }

    pub fn is_zero(&self, f: &CycField) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        self.canonical(f).iter().all(|c| c.is_zero())
    }

    pub fn eq(&self, rhs: &CycNumber, f: &CycField) -> bool {
        self.sub(rhs, f).is_zero(f)
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self, f: &CycField) -> Option<Rational> {
        let can = self.canonical(f);
        if can[1..].iter().all(|c| c.is_zero()) {
            Some(can[0].clone())
        } else {
            None
        }
    }

    /// Canonical polynomial string in z (z a primitive L-th root of unity),
    /// ascending powers; used by the expansion dump format.
    pub fn render(&self, f: &CycField) -> String {
        let can = self.canonical(f);
        let mut out = String::new();
        for (k, c) in can.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                let _ = write!(out, "{mag}");
            }
            if k > 0 {
                if !unit_coeff {
                    out.push('*');
                }
                out.push('z');
                if k > 1 {
                    let _ = write!(out, "^{k}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn merge_term(terms: &mut BTreeMap<u32, Rational>, e: u32, c: Rational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}
