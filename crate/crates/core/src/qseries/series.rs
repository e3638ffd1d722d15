//! Truncated q-expansions with cyclotomic coefficients.
//!
//! Exponents are integers in units of 1/(12 n^2): this grid houses both the
//! q^{k/n} steps of the series and the q^{B2/2} prefactors, so no rational
//! exponent bookkeeping is needed.  Every expansion carries its truncation
//! order `trunc` (largest reliable exponent, in units); multiplication
//! truncates to min(f.trunc + ord g, g.trunc + ord f), so reliability is
//! tracked instead of silently extended.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::cyc::{CycField, CycNumber};
use crate::error::{Error, Result};

/// Hard ceiling for truncation orders (in 1/(12 n^2) units).
pub const TRUNC_CAP: i64 = 1 << 23;

pub fn check_trunc(trunc: i64) -> Result<()> {
    if trunc < 0 {
        return Err(Error::InvalidInput("truncation order must be >= 0".into()));
    }
    if trunc > TRUNC_CAP {
        return Err(Error::ResourceCap(format!(
            "truncation order {trunc} exceeds cap {TRUNC_CAP}"
        )));
    }
    Ok(())
}

/// Exponent denominator for level n.
pub fn exponent_denominator(n: u32) -> i64 {
    12 * (n as i64) * (n as i64)
}

#[derive(Debug, Clone)]
pub struct QExpansion {
    level: u32,
    coeffs: BTreeMap<i64, CycNumber>,
    trunc: i64,
}

impl QExpansion {
    pub fn constant(level: u32, c: CycNumber, trunc: i64) -> QExpansion {
        let mut coeffs = BTreeMap::new();
        if c.term_count() > 0 {
            coeffs.insert(0, c);
        }
        QExpansion {
            level,
            coeffs,
            trunc,
        }
    }

    pub fn one(level: u32, f: &CycField, trunc: i64) -> QExpansion {
        Self::constant(level, f.one(), trunc)
    }

    /// c * q^(e / 12n^2).
    pub fn monomial(level: u32, e: i64, c: CycNumber, trunc: i64) -> QExpansion {
        let mut coeffs = BTreeMap::new();
        if c.term_count() > 0 && e <= trunc {
            coeffs.insert(e, c);
        }
        QExpansion {
            level,
            coeffs,
            trunc,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Exponent denominator: exponent e means q^(e / denominator).
    pub fn denominator(&self) -> i64 {
        exponent_denominator(self.level)
    }

    pub fn coeff(&self, e: i64) -> Option<&CycNumber> {
        self.coeffs.get(&e)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Least exponent with a (canonically) nonzero coefficient, or None when
    /// the expansion vanishes up to its truncation order.
    pub fn ord(&self, f: &CycField) -> Option<i64> {
        self.coeffs
            .iter()
            .find(|(_, c)| !c.is_zero(f))
            .map(|(e, _)| *e)
    }

    pub fn add(&self, rhs: &QExpansion, f: &CycField) -> QExpansion {
        assert_eq!(self.level, rhs.level, "mixed levels");
        let trunc = self.trunc.min(rhs.trunc);
        let mut coeffs = self.coeffs.clone();
        coeffs.retain(|e, _| *e <= trunc);
        for (e, c) in &rhs.coeffs {
            if *e > trunc {
                break;
            }
            let entry = coeffs.entry(*e).or_insert_with(|| f.zero());
            *entry = entry.add(c, f);
            if entry.term_count() == 0 {
                coeffs.remove(e);
            }
        }
        QExpansion {
            level: self.level,
            coeffs,
            trunc,
        }
    }

    pub fn neg(&self) -> QExpansion {
        QExpansion {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, rhs: &QExpansion, f: &CycField) -> QExpansion {
        self.add(&rhs.neg(), f)
    }

    pub fn scale(&self, s: &CycNumber, f: &CycField) -> QExpansion {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = c.mul(s, f);
            if v.term_count() > 0 {
                coeffs.insert(*e, v);
            }
        }
        QExpansion {
            level: self.level,
            coeffs,
            trunc: self.trunc,
        }
    }

    /// Shift exponents by e (multiply by q^(e/12n^2)).
    pub fn shift(&self, e: i64) -> QExpansion {
        QExpansion {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(x, c)| (x + e, c.clone())).collect(),
            trunc: self.trunc + e,
        }
    }

    /// Product with the reliability contract
    /// trunc = min(self.trunc + ord rhs, rhs.trunc + ord self),
    /// where a vanishing factor contributes its truncation order instead.
    pub fn mul(&self, rhs: &QExpansion, f: &CycField) -> QExpansion {
        assert_eq!(self.level, rhs.level, "mixed levels");
        let ord_l = self.ord(f).unwrap_or(self.trunc);
        let ord_r = rhs.ord(f).unwrap_or(rhs.trunc);
        let trunc = (self.trunc + ord_r).min(rhs.trunc + ord_l);
        let mut coeffs: BTreeMap<i64, CycNumber> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            if e1 + ord_r > trunc {
                break;
            }
            for (e2, c2) in &rhs.coeffs {
                let e = e1 + e2;
                if e > trunc {
                    break;
                }
                let term = c1.mul(c2, f);
                if term.term_count() == 0 {
                    continue;
                }
                use std::collections::btree_map::Entry;
                match coeffs.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(term);
                    }
                    Entry::Occupied(mut o) => {
                        let s = o.get().add(&term, f);
                        if s.term_count() == 0 {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        QExpansion {
            level: self.level,
            coeffs,
            trunc,
        }
    }

    pub fn pow(&self, e: u32, f: &CycField) -> QExpansion {
        let mut acc = Self::one(self.level, f, self.trunc);
        let mut base = self.clone();
        let mut e = e;
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

    /// Coefficient-wise canonical equality up to the common truncation order.
    pub fn eq_to_common_trunc(&self, rhs: &QExpansion, f: &CycField) -> bool {
        if self.level != rhs.level {
            return false;
        }
        let t = self.trunc.min(rhs.trunc);
        let zero = f.zero();
        let mut exps: Vec<i64> = self.coeffs.keys().chain(rhs.coeffs.keys()).copied().collect();
        exps.sort_unstable();
        exps.dedup();
        for e in exps {
            if e > t {
                break;
            }
            let a = self.coeffs.get(&e).unwrap_or(&zero);
            let b = rhs.coeffs.get(&e).unwrap_or(&zero);
            if !a.eq(b, f) {
                return false;
            }
        }
        true
    }

    /// Is the expansion exactly 1 up to its truncation order?
    pub fn is_one(&self, f: &CycField) -> bool {
        self.eq_to_common_trunc(&Self::one(self.level, f, self.trunc), f)
    }

    /// Text serialization: one line per (canonically nonzero) coefficient,
    /// "exponent_num/exponent_den : polynomial", ascending exponents.
    pub fn dump(&self, f: &CycField) -> String {
        let den = self.denominator();
        let mut out = String::new();
        for (e, c) in &self.coeffs {
            if c.is_zero(f) {
                continue;
            }
            let g = e.gcd(&den);
            let (num, d) = if *e == 0 { (0, 1) } else { (e / g, den / g) };
            out.push_str(&format!("{}/{} : {}\n", num, d, c.render(f)));
        }
        out
    }
}
