//! Directed-rounding interval arithmetic over arbitrary-precision floats.
//!
//! Every operation rounds the lower endpoint toward -inf and the upper
//! endpoint toward +inf, so an [`Interval`] always encloses the exact real
//! value it stands for.  Bound evaluation reports upper endpoints, which
//! makes every printed bound a certified one at the working precision.
//!
//! Invariant violations (NaN endpoints, division by a range containing
//! zero, logarithms of nonpositive ranges) panic: callers validate their
//! inputs, so reaching such a state is a programming error, not bad input.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::Rational;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// Smallest accepted working precision in bits.
pub const MIN_PRECISION: usize = 64;
/// Largest accepted working precision in bits.
pub const MAX_PRECISION: usize = 1 << 16;

/// Working precision plus the shared cache of computed constants.
pub struct RealCtx {
    prec: usize,
    cc: Consts,
}

impl RealCtx {
    pub fn new(prec: usize) -> Result<Self> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&prec) {
            return Err(Error::InvalidInput(format!(
                "precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {prec}"
            )));
        }
        let cc = Consts::new()
            .map_err(|e| Error::Consistency(format!("constants cache init failed: {e:?}")))?;
        Ok(RealCtx { prec, cc })
    }

    pub fn precision(&self) -> usize {
        self.prec
    }
}

fn assert_finite(x: &BigFloat, what: &str) {
    assert!(!x.is_nan() && !x.is_inf(), "non-finite value in {what}");
}

fn bf_cmp(a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
    let s = a.cmp(b).expect("NaN in comparison");
    s.cmp(&0)
}

fn bf_min(a: BigFloat, b: BigFloat) -> BigFloat {
    if bf_cmp(&a, &b).is_le() {
        a
    } else {
        b
    }
}

fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    if bf_cmp(&a, &b).is_ge() {
        a
    } else {
        b
    }
}

/// Exact value of a finite float as a rational: mantissa * 2^(exponent - bits).
pub fn bf_to_rational(x: &BigFloat) -> Option<Rational> {
    let (words, _, sign, exponent, _) = x.as_raw_parts()?;
    let mut bytes = Vec::with_capacity(words.len() * WORD_BIT_SIZE / 8);
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    let mantissa = BigUint::from_bytes_le(&bytes);
    let total_bits = (words.len() * WORD_BIT_SIZE) as i64;
    let mut num = BigInt::from(mantissa);
    if sign == Sign::Neg {
        num = -num;
    }
    let shift = exponent as i64 - total_bits;
    let value = if shift >= 0 {
        Rational::from(num << shift as usize)
    } else {
        Rational::new(num, BigInt::one() << (-shift) as usize)
    };
    Some(value)
}

/// A closed real interval with outward-rounded endpoints.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    fn check(self, what: &str) -> Interval {
        assert_finite(&self.lo, what);
        assert_finite(&self.hi, what);
        assert!(
            bf_cmp(&self.lo, &self.hi).is_le(),
            "inverted interval in {what}"
        );
        self
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn from_i64(v: i64, cx: &mut RealCtx) -> Interval {
        let x = BigFloat::from_i64(v, cx.prec.max(MIN_PRECISION));
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_u64(v: u64, cx: &mut RealCtx) -> Interval {
        let x = BigFloat::from_u64(v, cx.prec.max(MIN_PRECISION));
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_bigint(v: &BigInt, cx: &mut RealCtx) -> Interval {
        let s = v.to_string();
        let lo = BigFloat::parse(&s, Radix::Dec, cx.prec, DOWN, &mut cx.cc);
        let hi = BigFloat::parse(&s, Radix::Dec, cx.prec, UP, &mut cx.cc);
        Interval { lo, hi }.check("integer conversion")
    }

    pub fn from_rational(v: &Rational, cx: &mut RealCtx) -> Interval {
        if v.is_zero() {
            return Interval::from_i64(0, cx);
        }
        let num = Interval::from_bigint(v.numer(), cx);
        let den = Interval::from_bigint(v.denom(), cx);
        num.div(&den, cx)
    }

    pub fn zero(cx: &mut RealCtx) -> Interval {
        Interval::from_i64(0, cx)
    }

    pub fn one(cx: &mut RealCtx) -> Interval {
        Interval::from_i64(1, cx)
    }

    pub fn pi(cx: &mut RealCtx) -> Interval {
        let lo = cx.cc.pi(cx.prec, DOWN);
        let hi = cx.cc.pi(cx.prec, UP);
        Interval { lo, hi }.check("pi")
    }

    pub fn euler_e(cx: &mut RealCtx) -> Interval {
        let lo = cx.cc.e(cx.prec, DOWN);
        let hi = cx.cc.e(cx.prec, UP);
        Interval { lo, hi }.check("e")
    }

    pub fn ln_10(cx: &mut RealCtx) -> Interval {
        let lo = cx.cc.ln_10(cx.prec, DOWN);
        let hi = cx.cc.ln_10(cx.prec, UP);
        Interval { lo, hi }.check("ln 10")
    }

    pub fn ln_2(cx: &mut RealCtx) -> Interval {
        let lo = cx.cc.ln_2(cx.prec, DOWN);
        let hi = cx.cc.ln_2(cx.prec, UP);
        Interval { lo, hi }.check("ln 2")
    }

    pub fn add(&self, rhs: &Interval, cx: &mut RealCtx) -> Interval {
        Interval {
            lo: self.lo.add(&rhs.lo, cx.prec, DOWN),
            hi: self.hi.add(&rhs.hi, cx.prec, UP),
        }
        .check("add")
    }

    pub fn sub(&self, rhs: &Interval, cx: &mut RealCtx) -> Interval {
        Interval {
            lo: self.lo.sub(&rhs.hi, cx.prec, DOWN),
            hi: self.hi.sub(&rhs.lo, cx.prec, UP),
        }
        .check("sub")
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, rhs: &Interval, cx: &mut RealCtx) -> Interval {
        let p = cx.prec;
        let corners = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in corners {
            let down = a.mul(b, p, DOWN);
            let up = a.mul(b, p, UP);
            lo = Some(match lo {
                None => down,
                Some(c) => bf_min(c, down),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => bf_max(c, up),
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
        .check("mul")
    }

    pub fn div(&self, rhs: &Interval, cx: &mut RealCtx) -> Interval {
        assert!(
            !rhs.contains_zero(),
            "interval division by a range containing zero"
        );
        let p = cx.prec;
        let corners = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in corners {
            let down = a.div(b, p, DOWN);
            let up = a.div(b, p, UP);
            lo = Some(match lo {
                None => down,
                Some(c) => bf_min(c, down),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => bf_max(c, up),
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
        .check("div")
    }

    /// Integer power with sign and parity handled by cases.
    pub fn powi(&self, k: u32, cx: &mut RealCtx) -> Interval {
        if k == 0 {
            return Interval::one(cx);
        }
        if k == 1 {
            return self.clone();
        }
        let p = cx.prec;
        let k = k as usize;
        let pow_pos = |x: &BigFloat, rm: RoundingMode| x.powi(k, p, rm);
        if !self.lo.is_negative() {
            Interval {
                lo: pow_pos(&self.lo, DOWN),
                hi: pow_pos(&self.hi, UP),
            }
            .check("powi")
        } else if !self.hi.is_positive() {
            // reflect to the positive axis, raise, reflect back if odd
            let alo = self.hi.neg();
            let ahi = self.lo.neg();
            if k % 2 == 0 {
                Interval {
                    lo: pow_pos(&alo, DOWN),
                    hi: pow_pos(&ahi, UP),
                }
                .check("powi")
            } else {
                Interval {
                    lo: pow_pos(&ahi, UP).neg(),
                    hi: pow_pos(&alo, DOWN).neg(),
                }
                .check("powi")
            }
        } else if k % 2 == 1 {
            Interval {
                lo: pow_pos(&self.lo.neg(), UP).neg(),
                hi: pow_pos(&self.hi, UP),
            }
            .check("powi")
        } else {
            let m = bf_max(self.lo.neg(), self.hi.clone());
            Interval {
                lo: BigFloat::from_i64(0, p.max(MIN_PRECISION)),
                hi: pow_pos(&m, UP),
            }
            .check("powi")
        }
    }

    pub fn sqrt(&self, cx: &mut RealCtx) -> Interval {
        assert!(
            !self.lo.is_negative(),
            "square root of a range with negative lower endpoint"
        );
        Interval {
            lo: self.lo.sqrt(cx.prec, DOWN),
            hi: self.hi.sqrt(cx.prec, UP),
        }
        .check("sqrt")
    }

    pub fn ln(&self, cx: &mut RealCtx) -> Interval {
        assert!(
            self.lo.is_positive(),
            "logarithm of a range not strictly positive"
        );
        Interval {
            lo: self.lo.ln(cx.prec, DOWN, &mut cx.cc),
            hi: self.hi.ln(cx.prec, UP, &mut cx.cc),
        }
        .check("ln")
    }

    pub fn exp(&self, cx: &mut RealCtx) -> Interval {
        Interval {
            lo: self.lo.exp(cx.prec, DOWN, &mut cx.cc),
            hi: self.hi.exp(cx.prec, UP, &mut cx.cc),
        }
        .check("exp")
    }

    pub fn atan(&self, cx: &mut RealCtx) -> Interval {
        Interval {
            lo: self.lo.atan(cx.prec, DOWN, &mut cx.cc),
            hi: self.hi.atan(cx.prec, UP, &mut cx.cc),
        }
        .check("atan")
    }

    /// Hull of |x| over the interval.
    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = bf_max(self.lo.neg(), self.hi.clone());
            Interval {
                lo: BigFloat::from_i64(0, MIN_PRECISION),
                hi: m,
            }
        }
    }

    /// Convex hull of the two ranges.
    pub fn hull(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: bf_min(self.lo.clone(), rhs.lo.clone()),
            hi: bf_max(self.hi.clone(), rhs.hi.clone()),
        }
        .check("hull")
    }

    /// Pointwise max hull.
    pub fn max(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: bf_max(self.lo.clone(), rhs.lo.clone()),
            hi: bf_max(self.hi.clone(), rhs.hi.clone()),
        }
    }

    /// Pointwise min hull.
    pub fn min(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: bf_min(self.lo.clone(), rhs.lo.clone()),
            hi: bf_min(self.hi.clone(), rhs.hi.clone()),
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Every point of self is <= every point of rhs.
    pub fn certainly_le(&self, rhs: &Interval) -> bool {
        bf_cmp(&self.hi, &rhs.lo).is_le()
    }

    pub fn certainly_lt(&self, rhs: &Interval) -> bool {
        bf_cmp(&self.hi, &rhs.lo).is_lt()
    }

    /// Exact enclosure test against a rational value.
    pub fn encloses_rational(&self, r: &Rational) -> bool {
        let lo = bf_to_rational(&self.lo).expect("finite endpoint");
        let hi = bf_to_rational(&self.hi).expect("finite endpoint");
        lo <= *r && *r <= hi
    }

    pub fn width(&self, cx: &mut RealCtx) -> BigFloat {
        self.hi.sub(&self.lo, cx.prec, UP)
    }

    /// cos(2 pi theta) for exact rational theta, by a 1-Lipschitz hull
    /// around the lower endpoint of the argument range.
    pub fn cos2pi_frac(theta: &Rational, cx: &mut RealCtx) -> Interval {
        Self::circ2pi_frac(theta, cx, false)
    }

    /// sin(2 pi theta) for exact rational theta.
    pub fn sin2pi_frac(theta: &Rational, cx: &mut RealCtx) -> Interval {
        Self::circ2pi_frac(theta, cx, true)
    }

    fn circ2pi_frac(theta: &Rational, cx: &mut RealCtx, sine: bool) -> Interval {
        let reduced = theta - theta.floor();
        let two = Interval::from_i64(2, cx);
        let arg = Interval::from_rational(&reduced, cx)
            .mul(&Interval::pi(cx), cx)
            .mul(&two, cx);
        let p = cx.prec;
        let (at_lo_down, at_lo_up) = if sine {
            (
                arg.lo.sin(p, DOWN, &mut cx.cc),
                arg.lo.sin(p, UP, &mut cx.cc),
            )
        } else {
            (
                arg.lo.cos(p, DOWN, &mut cx.cc),
                arg.lo.cos(p, UP, &mut cx.cc),
            )
        };
        // |f(x) - f(arg.lo)| <= x - arg.lo <= w for both sin and cos
        let w = arg.hi.sub(&arg.lo, p, UP);
        let one = BigFloat::from_i64(1, p.max(MIN_PRECISION));
        let lo = bf_max(at_lo_down.sub(&w, p, DOWN), one.neg());
        let hi = bf_min(at_lo_up.add(&w, p, UP), one);
        Interval { lo, hi }.check("cos/sin")
    }
}

/// A rectangular complex enclosure.
#[derive(Clone, Debug)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn from_real(re: Interval, cx: &mut RealCtx) -> CInterval {
        CInterval {
            re,
            im: Interval::zero(cx),
        }
    }

    pub fn zero(cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: Interval::zero(cx),
            im: Interval::zero(cx),
        }
    }

    pub fn one(cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: Interval::one(cx),
            im: Interval::zero(cx),
        }
    }

    /// modulus * exp(2 pi i theta) with exact rational modulus and theta.
    pub fn from_polar_frac(modulus: &Rational, theta: &Rational, cx: &mut RealCtx) -> CInterval {
        let r = Interval::from_rational(modulus, cx);
        Self::from_polar(&r, theta, cx)
    }

    /// modulus * exp(2 pi i theta) with an enclosed modulus and exact rational theta.
    pub fn from_polar(modulus: &Interval, theta: &Rational, cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: modulus.mul(&Interval::cos2pi_frac(theta, cx), cx),
            im: modulus.mul(&Interval::sin2pi_frac(theta, cx), cx),
        }
    }

    pub fn add(&self, rhs: &CInterval, cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: self.re.add(&rhs.re, cx),
            im: self.im.add(&rhs.im, cx),
        }
    }

    pub fn sub(&self, rhs: &CInterval, cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: self.re.sub(&rhs.re, cx),
            im: self.im.sub(&rhs.im, cx),
        }
    }

    pub fn mul(&self, rhs: &CInterval, cx: &mut RealCtx) -> CInterval {
        let ac = self.re.mul(&rhs.re, cx);
        let bd = self.im.mul(&rhs.im, cx);
        let ad = self.re.mul(&rhs.im, cx);
        let bc = self.im.mul(&rhs.re, cx);
        CInterval {
            re: ac.sub(&bd, cx),
            im: ad.add(&bc, cx),
        }
    }

    pub fn scale(&self, s: &Interval, cx: &mut RealCtx) -> CInterval {
        CInterval {
            re: self.re.mul(s, cx),
            im: self.im.mul(s, cx),
        }
    }

    pub fn norm_sqr(&self, cx: &mut RealCtx) -> Interval {
        self.re.powi(2, cx).add(&self.im.powi(2, cx), cx)
    }

    /// Hull of |z| over the rectangle.
    pub fn abs(&self, cx: &mut RealCtx) -> Interval {
        self.norm_sqr(cx).sqrt(cx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::rational;
    use proptest::prelude::*;

    fn ctx() -> RealCtx {
        RealCtx::new(192).unwrap()
    }

    #[test]
    fn precision_range_is_validated() {
        assert!(RealCtx::new(63).is_err());
        assert!(RealCtx::new(MAX_PRECISION + 1).is_err());
        assert!(RealCtx::new(256).is_ok());
    }

    #[test]
    fn exact_conversion_roundtrips() {
        let cx = &mut ctx();
        for v in [0i64, 1, -1, 7, -1023, i64::MAX / 7] {
            let iv = Interval::from_i64(v, cx);
            assert_eq!(bf_to_rational(iv.lo()).unwrap(), rational(v, 1));
            assert_eq!(bf_to_rational(iv.hi()).unwrap(), rational(v, 1));
        }
        // dyadic rationals convert exactly
        let half = Interval::from_rational(&rational(1, 2), cx);
        assert_eq!(bf_to_rational(half.lo()).unwrap(), rational(1, 2));
        assert_eq!(bf_to_rational(half.hi()).unwrap(), rational(1, 2));
        // non-dyadic rationals straddle strictly
        let third = Interval::from_rational(&rational(1, 3), cx);
        assert!(bf_to_rational(third.lo()).unwrap() < rational(1, 3));
        assert!(bf_to_rational(third.hi()).unwrap() > rational(1, 3));
        assert!(third.encloses_rational(&rational(1, 3)));
    }

    #[test]
    fn arithmetic_encloses_exact_values() {
        let cx = &mut ctx();
        let a = Interval::from_rational(&rational(22, 7), cx);
        let b = Interval::from_rational(&rational(-5, 3), cx);
        assert!(a.add(&b, cx).encloses_rational(&rational(31, 21)));
        assert!(a.sub(&b, cx).encloses_rational(&rational(101, 21)));
        assert!(a.mul(&b, cx).encloses_rational(&rational(-110, 21)));
        assert!(a.div(&b, cx).encloses_rational(&rational(-66, 35)));
        assert!(a.powi(3, cx).encloses_rational(&rational(10648, 343)));
        assert!(b.powi(2, cx).encloses_rational(&rational(25, 9)));
        assert!(b.powi(3, cx).encloses_rational(&rational(-125, 27)));
    }

    #[test]
    fn straddling_powers() {
        let cx = &mut ctx();
        let lo = Interval::from_i64(-2, cx);
        let hi = Interval::from_i64(3, cx);
        let x = Interval {
            lo: lo.lo().clone(),
            hi: hi.hi().clone(),
        };
        let sq = x.powi(2, cx);
        assert!(sq.encloses_rational(&rational(0, 1)));
        assert!(sq.encloses_rational(&rational(9, 1)));
        assert!(sq.encloses_rational(&rational(4, 1)));
        assert!(!sq.lo().is_negative());
        let cube = x.powi(3, cx);
        assert!(cube.encloses_rational(&rational(-8, 1)));
        assert!(cube.encloses_rational(&rational(27, 1)));
    }

    #[test]
    fn elementary_functions() {
        let cx = &mut ctx();
        let one = Interval::one(cx);
        let e = one.exp(cx);
        // exp(1) agrees with the cached constant
        let cached = Interval::euler_e(cx);
        assert!(bf_cmp(e.lo(), cached.hi()).is_le());
        assert!(bf_cmp(cached.lo(), e.hi()).is_le());
        // ln inverts exp
        let back = e.ln(cx);
        assert!(back.encloses_rational(&rational(1, 1)));
        let four = Interval::from_i64(4, cx);
        assert!(four.sqrt(cx).encloses_rational(&rational(2, 1)));
        // ln(10) agrees with the cached constant
        let ten = Interval::from_i64(10, cx);
        let l = ten.ln(cx);
        let cached = Interval::ln_10(cx);
        assert!(bf_cmp(l.lo(), cached.hi()).is_le());
        assert!(bf_cmp(cached.lo(), l.hi()).is_le());
    }

    #[test]
    fn trigonometry_at_rational_angles() {
        let cx = &mut ctx();
        assert!(Interval::cos2pi_frac(&rational(0, 1), cx).encloses_rational(&rational(1, 1)));
        assert!(Interval::cos2pi_frac(&rational(1, 2), cx).encloses_rational(&rational(-1, 1)));
        assert!(Interval::sin2pi_frac(&rational(1, 4), cx).encloses_rational(&rational(1, 1)));
        assert!(Interval::cos2pi_frac(&rational(1, 4), cx).contains_zero());
        assert!(Interval::sin2pi_frac(&rational(7, 2), cx).contains_zero());
        // angle reduction handles values outside [0, 1)
        assert!(Interval::cos2pi_frac(&rational(-3, 1), cx).encloses_rational(&rational(1, 1)));
        // the hull stays inside [-1, 1]
        let c = Interval::cos2pi_frac(&rational(1, 7), cx);
        assert!(bf_to_rational(c.hi()).unwrap() <= rational(1, 1));
    }

    #[test]
    fn complex_rectangle_operations() {
        let cx = &mut ctx();
        let i_unit = CInterval::from_polar_frac(&rational(1, 1), &rational(1, 4), cx);
        let sq = i_unit.mul(&i_unit, cx);
        assert!(sq.re.encloses_rational(&rational(-1, 1)));
        assert!(sq.im.contains_zero());
        let z = CInterval::from_polar_frac(&rational(3, 5), &rational(1, 3), cx);
        assert!(z.norm_sqr(cx).encloses_rational(&rational(9, 25)));
        assert!(z.abs(cx).encloses_rational(&rational(3, 5)));
        let sum = z.sub(&z, cx);
        assert!(sum.re.contains_zero());
        assert!(sum.im.contains_zero());
    }

    #[test]
    fn ordering_predicates() {
        let cx = &mut ctx();
        let a = Interval::from_rational(&rational(1, 3), cx);
        let b = Interval::from_rational(&rational(1, 2), cx);
        assert!(a.certainly_lt(&b));
        assert!(a.certainly_le(&b));
        assert!(!b.certainly_le(&a));
        assert!(!a.certainly_lt(&a));
        assert!(a.is_strictly_positive());
        assert!(a.neg().hi().is_negative());
        assert!(a.sub(&a, cx).contains_zero());
    }

    proptest! {
        #[test]
        fn sum_encloses_exact(an in -1000i64..1000, ad in 1i64..200, bn in -1000i64..1000, bd in 1i64..200) {
            let cx = &mut ctx();
            let a = rational(an, ad);
            let b = rational(bn, bd);
            let ia = Interval::from_rational(&a, cx);
            let ib = Interval::from_rational(&b, cx);
            prop_assert!(ia.add(&ib, cx).encloses_rational(&(a.clone() + b.clone())));
            prop_assert!(ia.mul(&ib, cx).encloses_rational(&(a.clone() * b.clone())));
            prop_assert!(ia.sub(&ib, cx).encloses_rational(&(a.clone() - b.clone())));
            if bn != 0 {
                prop_assert!(ia.div(&ib, cx).encloses_rational(&(a / b)));
            }
        }

        #[test]
        fn powers_enclose_exact(n in -50i64..50, d in 1i64..40, k in 0u32..8) {
            let cx = &mut ctx();
            let a = rational(n, d);
            let exact = {
                let mut acc = rational(1, 1);
                for _ in 0..k {
                    acc *= a.clone();
                }
                acc
            };
            prop_assert!(Interval::from_rational(&a, cx).powi(k, cx).encloses_rational(&exact));
        }

        #[test]
        fn unit_circle_identity(n in -30i64..30, d in 1i64..30) {
            let cx = &mut ctx();
            let theta = rational(n, d);
            let c = Interval::cos2pi_frac(&theta, cx);
            let s = Interval::sin2pi_frac(&theta, cx);
            let total = c.powi(2, cx).add(&s.powi(2, cx), cx);
            prop_assert!(total.encloses_rational(&rational(1, 1)));
        }
    }
}
