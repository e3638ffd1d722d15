//! Certified numeric evaluation: complex embeddings of cyclotomic numbers,
//! absolute logarithmic heights, and interval verification of the expansion
//! identities at sample points inside the disc of convergence.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval, RealCtx};
use crate::numtheory::{rational, Rational, TorsionPoint};

use super::cyc::{CycField, CycNumber};
use super::siegel::{factor_list, point_expansion};

/// sigma_t(x): the embedding zeta_L -> exp(2 pi i t / L) applied to the
/// working representation of x. t must be coprime to the conductor (t = 1
/// gives the principal embedding).
pub fn embed(f: &CycField, x: &CycNumber, t: u32, cx: &mut RealCtx) -> CInterval {
    let l = f.conductor() as i64;
    let mut acc = CInterval::zero(cx);
    for (e, c) in x.terms() {
        let k = (e as i64 * t as i64).rem_euclid(l);
        let ang = rational(k, l);
        let coeff = Interval::from_rational(c, cx);
        let term = CInterval {
            re: Interval::cos2pi_frac(&ang, cx).mul(&coeff, cx),
            im: Interval::sin2pi_frac(&ang, cx).mul(&coeff, cx),
        };
        acc = acc.add(&term, cx);
    }
    acc
}

/// Hull of |sigma_t(x)| over every embedding of the field.
pub fn max_embedding_abs(f: &CycField, x: &CycNumber, cx: &mut RealCtx) -> Interval {
    let mut best: Option<Interval> = None;
    for t in f.galois_exponents() {
        let a = embed(f, x, t, cx).abs(cx);
        best = Some(match best {
            Some(b) => b.max(&a),
            None => a,
        });
    }
    best.expect("a cyclotomic field has at least one embedding")
}

/// Absolute logarithmic height of a nonzero algebraic integer x: the mean of
/// log^+ |sigma_t(x)| over the embeddings of Q(zeta_L). Callers are
/// responsible for x actually being an algebraic integer; for a general
/// element this is only the archimedean part of the height.
pub fn algebraic_height(f: &CycField, x: &CycNumber, cx: &mut RealCtx) -> Result<Interval> {
    if x.is_zero(f) {
        return Err(Error::InvalidInput("height of zero is undefined".into()));
    }
    let one = Interval::one(cx);
    let ts = f.galois_exponents();
    let mut sum = Interval::zero(cx);
    for &t in &ts {
        let m = embed(f, x, t, cx).abs(cx).max(&one);
        sum = sum.add(&m.ln(cx), cx);
    }
    Ok(sum.div(&Interval::from_u64(ts.len() as u64, cx), cx))
}

/// Certify that every |sigma_t(x)| <= e^k. Tries the 1-norm of the working
/// representation first (a triangle-inequality bound valid for all
/// embeddings at once) and falls back to direct enclosures.
pub fn phi_bound_certified(f: &CycField, x: &CycNumber, k: i64, cx: &mut RealCtx) -> bool {
    let target = Interval::from_i64(k, cx).exp(cx);
    if Interval::from_rational(&x.one_norm(), cx).certainly_le(&target) {
        return true;
    }
    max_embedding_abs(f, x, cx).certainly_le(&target)
}

/// Certify that every |sigma_t(x)| <= bound for an exact rational bound.
pub fn lambda_bound_certified(
    f: &CycField,
    x: &CycNumber,
    bound: &Rational,
    cx: &mut RealCtx,
) -> bool {
    if x.one_norm() <= *bound {
        return true;
    }
    let target = Interval::from_rational(bound, cx);
    max_embedding_abs(f, x, cx).certainly_le(&target)
}

/// A sample point q = modulus * exp(2 pi i angle) with exact rational data.
#[derive(Debug, Clone)]
pub struct QSample {
    pub modulus: Rational,
    pub angle: Rational,
}

impl QSample {
    pub fn new(modulus: Rational, angle: Rational) -> QSample {
        QSample { modulus, angle }
    }
}

/// Outcome of evaluating one normalized expansion at one sample point.
/// All fields are rigorous enclosures; the booleans record certified
/// comparisons (an interval overlap is a failure, not a pass).
#[derive(Debug)]
pub struct NumericCheck {
    /// Truncated series evaluated by summation.
    pub series_value: CInterval,
    /// The binomial factors within the truncation order, multiplied out.
    pub product_value: CInterval,
    /// |series - product|.
    pub difference: Interval,
    /// Geometric bound (e|w|)^{K+1} / (1 - e|w|) on everything dropped past
    /// the truncation order, where w = q^{1/n}.
    pub tail_bound: Interval,
    pub tail_ok: bool,
    /// |series - 1| + tail, to be compared with 4 |q|^{1/n}.
    pub near_one_lhs: Interval,
    pub near_one_rhs: Interval,
    pub near_one_ok: bool,
    /// | log|gamma| + log|series value| |, enclosing the deviation of
    /// log|g_a(q)| from its leading term, to be compared with log n.
    pub log_margin: Interval,
    pub log_margin_bound: Interval,
    pub log_margin_ok: bool,
    /// Winding correction (sum of principal factor logs minus principal log
    /// of the product) / 2 pi i, when it can be pinned to an integer.
    pub branch_integer: Option<i64>,
}

fn q_power(e: i64, n: u32, ln_rho: &Interval, angle: &Rational, cx: &mut RealCtx) -> CInterval {
    let den = 12 * n as i64 * n as i64;
    let scale = rational(e, den);
    let modulus = ln_rho
        .mul(&Interval::from_rational(&scale, cx), cx)
        .exp(cx);
    let ang = angle * &scale;
    CInterval::from_polar(&modulus, &ang, cx)
}

fn principal_arg_if_right_half(v: &CInterval, cx: &mut RealCtx) -> Option<Interval> {
    if !v.re.is_strictly_positive() {
        return None;
    }
    Some(v.im.div(&v.re, cx).atan(cx))
}

/// Evaluate the normalized expansion of the point a at q = sample, keeping
/// k_terms powers of w = q^{1/n}, and certify the tail, near-one, and
/// logarithmic-margin comparisons. Requires |q| <= 10^{-n} and at least 128
/// bits of working precision.
pub fn numeric_eval(
    f: &CycField,
    a: &TorsionPoint,
    sample: &QSample,
    k_terms: i64,
    cx: &mut RealCtx,
) -> Result<NumericCheck> {
    let n = a.level();
    if cx.precision() < 128 {
        return Err(Error::InvalidInput(
            "sampling requires at least 128 bits of precision".into(),
        ));
    }
    if !sample.modulus.is_positive() {
        return Err(Error::InvalidInput("sample modulus must be positive".into()));
    }
    let radius = Rational::new(BigInt::one(), BigInt::from(10u32).pow(n));
    if sample.modulus > radius {
        return Err(Error::InvalidInput(format!(
            "sample modulus exceeds the guaranteed radius 10^-{n}"
        )));
    }
    if k_terms < 1 {
        return Err(Error::InvalidInput("k_terms must be at least 1".into()));
    }
    let trunc = 12 * n as i64 * k_terms;
    let sc = point_expansion(f, a, trunc)?;
    let (k1, k2) = a.numerators();

    let ln_rho = Interval::from_rational(&sample.modulus, cx).ln(cx);

    let mut series_value = CInterval::zero(cx);
    for (e, c) in sc.series().support() {
        let term = embed(f, c, 1, cx).mul(&q_power(e, n, &ln_rho, &sample.angle, cx), cx);
        series_value = series_value.add(&term, cx);
    }

    let one_c = CInterval::one(cx);
    let mut product_value = one_c.clone();
    let mut factor_values = Vec::new();
    for fac in factor_list(n, k1, k2, trunc) {
        let zeta = f.zeta_pow(2 * n as i64 * fac.zeta_n_power);
        let z = embed(f, &zeta, 1, cx)
            .mul(&q_power(fac.exponent_units, n, &ln_rho, &sample.angle, cx), cx);
        let value = one_c.sub(&z, cx);
        product_value = product_value.mul(&value, cx);
        factor_values.push(value);
    }

    let one = Interval::one(cx);
    let w_abs = ln_rho
        .div(&Interval::from_u64(n as u64, cx), cx)
        .exp(cx);
    let t = Interval::euler_e(cx).mul(&w_abs, cx);
    if !t.certainly_lt(&one) {
        return Err(Error::InvalidInput(
            "sample too large for a convergent tail bound".into(),
        ));
    }
    let tail_bound = t
        .powi((k_terms + 1) as u32, cx)
        .div(&one.sub(&t, cx), cx);

    let difference = series_value.sub(&product_value, cx).abs(cx);
    let tail_ok = difference.certainly_le(&tail_bound);

    let near_one_lhs = series_value
        .sub(&one_c, cx)
        .abs(cx)
        .add(&tail_bound, cx);
    let near_one_rhs = Interval::from_i64(4, cx).mul(&w_abs, cx);
    let near_one_ok = near_one_lhs.certainly_le(&near_one_rhs);

    let gamma_abs = embed(f, sc.gamma(), 1, cx).abs(cx);
    if !gamma_abs.is_strictly_positive() {
        return Err(Error::InvalidInput(
            "precision too low to separate the constant from zero".into(),
        ));
    }
    let series_abs = series_value.abs(cx);
    let norm_range = series_abs
        .sub(&tail_bound, cx)
        .hull(&series_abs.add(&tail_bound, cx));
    if !norm_range.is_strictly_positive() {
        return Err(Error::InvalidInput(
            "sample too large to certify the logarithmic margin".into(),
        ));
    }
    let log_margin = gamma_abs.ln(cx).add(&norm_range.ln(cx), cx).abs();
    let log_margin_bound = Interval::from_u64(n as u64, cx).ln(cx);
    let log_margin_ok = log_margin.certainly_le(&log_margin_bound);

    let branch_integer = (|| {
        let mut sum = Interval::zero(cx);
        for v in &factor_values {
            sum = sum.add(&principal_arg_if_right_half(v, cx)?, cx);
        }
        let arg_product = principal_arg_if_right_half(&product_value, cx)?;
        let two_pi = Interval::pi(cx).mul(&Interval::from_i64(2, cx), cx);
        let frac = sum.sub(&arg_product, cx).div(&two_pi, cx);
        let half = rational(1, 2);
        let mid = (crate::interval::bf_to_rational(frac.lo())?
            + crate::interval::bf_to_rational(frac.hi())?)
            / rational(2, 1);
        let k = (mid + &half).floor().to_integer();
        let kq = Rational::from(k.clone());
        let below = Interval::from_rational(&(&kq - &half), cx);
        let above = Interval::from_rational(&(&kq + &half), cx);
        if below.certainly_lt(&frac) && frac.certainly_lt(&above) {
            k.to_i64()
        } else {
            None
        }
    })();

    Ok(NumericCheck {
        series_value,
        product_value,
        difference,
        tail_bound,
        tail_ok,
        near_one_lhs,
        near_one_rhs,
        near_one_ok,
        log_margin,
        log_margin_bound,
        log_margin_ok,
        branch_integer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::siegel::unit_orbit_expansion;

    fn ctx() -> RealCtx {
        RealCtx::new(256).unwrap()
    }

    fn assert_encloses_within(value: &Interval, target: &Interval, eps: &Rational, cx: &mut RealCtx) {
        let diff = value.sub(target, cx).abs();
        let eps = Interval::from_rational(eps, cx);
        assert!(
            diff.certainly_le(&eps),
            "difference {:?} exceeds tolerance",
            diff
        );
    }

    #[test]
    fn embedding_of_one_minus_zeta8() {
        let mut cx = ctx();
        let f = CycField::new(8).unwrap();
        let x = f.one().sub(&f.zeta_pow(1), &f);
        // |1 - e^{i pi/4}| = sqrt(2 - sqrt 2) = 0.76536686473...
        let v = embed(&f, &x, 1, &mut cx).abs(&mut cx);
        let approx = rational(76536686473i64, 100000000000i64);
        let diff = v.sub(&Interval::from_rational(&approx, &mut cx), &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rational(1, 10_000_000_000), &mut cx)));

        // the norm (product over all embeddings) is exactly 2
        let mut norm = Interval::one(&mut cx);
        for t in f.galois_exponents() {
            let a = embed(&f, &x, t, &mut cx).abs(&mut cx);
            norm = norm.mul(&a, &mut cx);
        }
        assert!(norm.encloses_rational(&rational(2, 1)));
    }

    #[test]
    fn height_of_root_of_unity_is_zero() {
        let mut cx = ctx();
        let f = CycField::new(12).unwrap();
        let h = algebraic_height(&f, &f.zeta_pow(5), &mut cx).unwrap();
        assert!(h.encloses_rational(&rational(0, 1)));
        let eps = Interval::from_rational(
            &Rational::new(BigInt::one(), BigInt::from(10u32).pow(40)),
            &mut cx,
        );
        assert!(h.certainly_le(&eps));
    }

    #[test]
    fn height_of_one_minus_i() {
        let mut cx = ctx();
        let f = CycField::new(4).unwrap();
        let x = f.one().sub(&f.zeta_pow(1), &f);
        let h = algebraic_height(&f, &x, &mut cx).unwrap();
        // h(1 - i) = (1/2) log 2
        let target = Interval::ln_2(&mut cx).div(&Interval::from_i64(2, &mut cx), &mut cx);
        assert_encloses_within(
            &h,
            &target,
            &Rational::new(BigInt::one(), BigInt::from(10u32).pow(40)),
            &mut cx,
        );
    }

    #[test]
    fn height_rejects_zero() {
        let mut cx = ctx();
        let f = CycField::new(4).unwrap();
        assert!(algebraic_height(&f, &f.zero(), &mut cx).is_err());
    }

    #[test]
    fn height_of_unit_gamma_level_two() {
        let mut cx = ctx();
        let f = CycField::for_level(2).unwrap();
        let pt = TorsionPoint::new(2, 0, 1).unwrap();
        let u = unit_orbit_expansion(&f, 2, &[pt], 48).unwrap();
        // gamma_{(0,1/2)} = 2 zeta_8^6, so gamma^{24} = 2^{24} and the height
        // is 24 log 2.
        let h = algebraic_height(&f, u.gamma(), &mut cx).unwrap();
        let target = Interval::ln_2(&mut cx).mul(&Interval::from_i64(24, &mut cx), &mut cx);
        assert_encloses_within(
            &h,
            &target,
            &Rational::new(BigInt::one(), BigInt::from(10u32).pow(30)),
            &mut cx,
        );
    }

    #[test]
    fn bound_certifiers() {
        let mut cx = ctx();
        let f = CycField::new(8).unwrap();
        // 7 <= e^2 but 8 > e^2
        assert!(phi_bound_certified(&f, &f.from_integer(7), 2, &mut cx));
        assert!(!phi_bound_certified(&f, &f.from_integer(8), 2, &mut cx));
        assert!(lambda_bound_certified(
            &f,
            &f.from_integer(99),
            &rational(99, 1),
            &mut cx
        ));
        assert!(!lambda_bound_certified(
            &f,
            &f.from_integer(100),
            &rational(99, 1),
            &mut cx
        ));
        // the 1-norm overestimates zeta + zeta^5 = zeta(1 + zeta^4), whose
        // embeddings all vanish; the fallback must still certify it
        let ghost = f.zeta_pow(1).add(&f.zeta_pow(5), &f);
        assert!(lambda_bound_certified(&f, &ghost, &rational(1, 1), &mut cx));
    }

    #[test]
    fn numeric_sample_level_two() {
        let mut cx = ctx();
        let f = CycField::for_level(2).unwrap();
        let a = TorsionPoint::new(2, 0, 1).unwrap();
        let sample = QSample::new(rational(1, 200), rational(1, 2));
        let check = numeric_eval(&f, &a, &sample, 40, &mut cx).unwrap();
        assert!(check.tail_ok, "tail: {:?}", check);
        assert!(check.near_one_ok, "near-one: {:?}", check);
        assert!(check.log_margin_ok, "margin: {:?}", check);
        assert_eq!(check.branch_integer, Some(0));
    }

    #[test]
    fn numeric_sample_level_three() {
        let mut cx = ctx();
        let f = CycField::for_level(3).unwrap();
        let a = TorsionPoint::new(3, 1, 0).unwrap();
        let sample = QSample::new(rational(1, 2000), rational(0, 1));
        let check = numeric_eval(&f, &a, &sample, 40, &mut cx).unwrap();
        assert!(check.tail_ok);
        assert!(check.near_one_ok);
        assert!(check.log_margin_ok);
        assert_eq!(check.branch_integer, Some(0));
    }

    #[test]
    fn numeric_rejects_large_modulus() {
        let mut cx = ctx();
        let f = CycField::for_level(2).unwrap();
        let a = TorsionPoint::new(2, 0, 1).unwrap();
        let sample = QSample::new(rational(1, 50), rational(1, 2));
        assert!(numeric_eval(&f, &a, &sample, 10, &mut cx).is_err());
    }
}
