//! Report objects with deterministic rendering: every certified-upper value
//! is emitted both as a log10 decimal (30 significant digits, rounded
//! toward +infinity) and as the exact dyadic rational of the natural-log
//! upper endpoint, so identical inputs reproduce identical bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::interval::{bf_to_rational, Interval, RealCtx};
use crate::numtheory::Rational;

/// One rendered value: base-10 logarithm as a decimal string, natural log
/// as an exact numerator/denominator pair in hex (denominator a power of 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportValue {
    pub log10: String,
    pub ln_exact: String,
}

impl ReportValue {
    /// v encloses the natural log of the bound; the upper endpoint is taken.
    pub fn from_ln(v: &Interval, cx: &mut RealCtx) -> ReportValue {
        let ln_up = bf_to_rational(v.hi()).expect("bound logs are finite");
        let log10_up = bf_to_rational(v.div(&Interval::ln_10(cx), cx).hi()).expect("finite");
        ReportValue {
            log10: decimal_up(&log10_up, 30),
            ln_exact: dyadic_hex(&ln_up),
        }
    }
}

/// A single bound evaluation: the certified value, its factor breakdown,
/// and enough input echo to reproduce the run.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub theorem: String,
    pub bound: ReportValue,
    pub breakdown: BTreeMap<String, ReportValue>,
    pub inputs: BTreeMap<String, String>,
    pub constants: BTreeMap<String, String>,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Exact rendering of a dyadic rational as sign + hex numerator / hex
/// denominator.
pub fn dyadic_hex(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    format!("{}0x{:x}/0x{:x}", sign, num, r.denom())
}

fn digits10(x: &BigInt) -> i64 {
    x.abs().to_string().len() as i64
}

fn pow10(k: u64) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

/// |r| compared with 10^e (e may be negative).
fn cmp_pow10(r: &Rational, e: i64) -> std::cmp::Ordering {
    let num = r.numer().abs();
    let den = r.denom().clone();
    if e >= 0 {
        num.cmp(&(den * pow10(e as u64)))
    } else {
        (num * pow10((-e) as u64)).cmp(&den)
    }
}

/// Decimal rendering of r to `sig` significant digits, rounded toward
/// +infinity, always in the form d.dd...de{+-}k.
pub fn decimal_up(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".into();
    }
    // find e with 10^e <= |r| < 10^{e+1}
    let mut e = digits10(r.numer()) - digits10(r.denom());
    while cmp_pow10(r, e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    while cmp_pow10(r, e + 1) != std::cmp::Ordering::Less {
        e += 1;
    }
    // scale to sig digits and take the ceiling
    let shift = sig as i64 - 1 - e;
    let (sn, sd) = if shift >= 0 {
        (r.numer() * pow10(shift as u64), r.denom().clone())
    } else {
        (r.numer().clone(), r.denom() * pow10((-shift) as u64))
    };
    let mut m = sn.div_ceil(&sd);
    // ceiling may carry 999... over to 1000...
    if m.abs() >= pow10(sig as u64) {
        m = m / BigInt::from(10u32);
        e += 1;
    }
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    debug_assert_eq!(digits.len(), sig);
    let (head, tail) = digits.split_at(1);
    format!(
        "{}{}.{}e{}{}",
        if neg { "-" } else { "" },
        head,
        tail,
        if e < 0 { "-" } else { "+" },
        e.abs()
    )
}
