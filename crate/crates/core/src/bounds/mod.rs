//! Closed-form height-bound formulas, evaluated as interval enclosures.
//!
//! Every bound is assembled in natural-log space (or in linear space when
//! the magnitudes stay representable) with outward rounding, and reports
//! quote the upper endpoint: rounding can loosen a bound, never tighten it.
//! Inner `log log` compositions are floored at e(1 + 2^-20) when a toy input
//! would make them non-positive; each application raises a report flag.

pub mod report;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::{Interval, RealCtx};
use crate::numtheory::{euler_phi, prime_power, raise_level, rational, Rational};

pub use report::{BoundReport, ReportValue};

pub const FLAG_LOGLOG_FLOOR: &str = "loglog_floor";
pub const FLAG_S_LIFTED: &str = "s_lifted";
pub const FLAG_LOG_DISC_FLOOR: &str = "log_disc_floor";

/// Warning flags raised while evaluating (sorted and deduplicated).
pub type Flags = BTreeSet<&'static str>;

/// Ground-field data entering the bound formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldData {
    /// Degree of K0 over the rationals.
    pub d0: u64,
    /// Absolute value of the discriminant of K0.
    pub abs_disc: u64,
    /// Number of places in S0, archimedean places included.
    pub s0: u64,
    /// Absolute norms of the finite places of S0, each a prime power.
    pub finite_norms: Vec<u64>,
    /// Largest rational prime below a finite place of S0, or 1 if none.
    pub p: u64,
}

fn underlying_prime(q: u64) -> u64 {
    prime_power(q).map(|(p, _)| p).unwrap_or(q)
}

impl FieldData {
    /// Build and validate, computing p from the norms.
    pub fn new(d0: u64, abs_disc: u64, s0: u64, finite_norms: Vec<u64>) -> Result<FieldData> {
        let p = finite_norms
            .iter()
            .map(|&q| underlying_prime(q))
            .max()
            .unwrap_or(1);
        let data = FieldData {
            d0,
            abs_disc,
            s0,
            finite_norms,
            p,
        };
        data.validate()?;
        Ok(data)
    }

    /// The rationals with S0 = {infinity}.
    pub fn rationals() -> FieldData {
        FieldData {
            d0: 1,
            abs_disc: 1,
            s0: 1,
            finite_norms: Vec::new(),
            p: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d0 < 1 {
            return Err(Error::InvalidInput("field degree must be at least 1".into()));
        }
        if self.abs_disc < 1 {
            return Err(Error::InvalidInput(
                "the absolute discriminant is a positive integer".into(),
            ));
        }
        if self.s0 < 1 {
            return Err(Error::InvalidInput(
                "S0 contains at least one archimedean place".into(),
            ));
        }
        if (self.s0 as usize) < self.finite_norms.len() {
            return Err(Error::InvalidInput(
                "s0 must count every listed finite place".into(),
            ));
        }
        for &q in &self.finite_norms {
            if prime_power(q).is_none() {
                return Err(Error::InvalidInput(format!(
                    "finite-place norm {q} is not a prime power"
                )));
            }
        }
        let expected = self
            .finite_norms
            .iter()
            .map(|&q| underlying_prime(q))
            .max()
            .unwrap_or(1);
        if self.p != expected {
            return Err(Error::InvalidInput(format!(
                "p must be the largest rational prime below S0 ({expected}), got {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// Working data for K = K0(zeta_N): degrees and place counts replaced by
/// their upper estimates, discriminant and norm product by certified
/// log-space upper bounds.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub d: u64,
    pub s: u64,
    pub r: u64,
    pub d_prime: u64,
    pub s_lifted: bool,
    /// Upper estimate of log|D(K)|: d0 N log N + phi(N) log|D0|.
    pub log_disc: Interval,
    /// Upper estimate of log prod_v log N(v) over the finite places of S:
    /// s0 phi(N) log 4 + phi(N) sum log log N0(v).
    pub log_norm_prod: Interval,
}

/// User-supplied absolute constants. The unit preset sets all of them to 1
/// and marks every report as structural rather than a validity claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub c_baker: Rational,
    pub c_siegel: Rational,
    pub c_hp: Rational,
    pub preset_unit: bool,
}

impl Constants {
    pub fn unit() -> Constants {
        Constants {
            c_baker: rational(1, 1),
            c_siegel: rational(1, 1),
            c_hp: rational(1, 1),
            preset_unit: true,
        }
    }

    pub fn custom(c_baker: Rational, c_siegel: Rational, c_hp: Rational) -> Result<Constants> {
        let c = Constants {
            c_baker,
            c_siegel,
            c_hp,
            preset_unit: false,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c_baker", &self.c_baker),
            ("c_siegel", &self.c_siegel),
            ("c_hp", &self.c_hp),
        ] {
            if !v.is_positive() {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// Caller attestations for hypotheses the library cannot decide from the
/// numeric inputs alone; they are echoed into reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Attestation {
    pub nu_infty_ge_3: bool,
    pub k0_in_cyclotomic: bool,
    pub s0_infinite_only: bool,
}

/// log log x for an integer x, with the inner value floored at e(1 + 2^-20)
/// when x <= e. The comparison is exact: e is irrational, so an integer is
/// never ambiguous at interval precision.
fn loglog_floored_int(x: u64, flags: &mut Flags, cx: &mut RealCtx) -> Interval {
    let xi = Interval::from_u64(x, cx);
    let e = Interval::euler_e(cx);
    let inner = if xi.certainly_lt(&e) {
        flags.insert(FLAG_LOGLOG_FLOOR);
        e.mul(
            &Interval::from_rational(&rational((1 << 20) + 1, 1 << 20), cx),
            cx,
        )
    } else {
        xi
    };
    inner.ln(cx).ln(cx)
}

/// zeta = 1201 (log d' / log log d')^3 with d' = max(d, 3).
pub fn zeta_quantity(d: u64, cx: &mut RealCtx) -> Interval {
    let dp = d.max(3);
    let l = Interval::from_u64(dp, cx).ln(cx);
    let ratio = l.div(&l.ln(cx), cx);
    ratio
        .powi(3, cx)
        .mul(&Interval::from_u64(1201, cx), cx)
}

/// phi(N) log C + ((3/2)phi(N) + 10) log N + ((5/2)phi(N) - 2) log log N.
pub fn theorem1_log(n: u64, c_baker: &Rational, flags: &mut Flags, cx: &mut RealCtx) -> Interval {
    let phi = euler_phi(n) as i64;
    let ln_c = Interval::from_rational(c_baker, cx).ln(cx);
    let ln_n = Interval::from_u64(n, cx).ln(cx);
    let lln = loglog_floored_int(n, flags, cx);
    let t1 = ln_c.mul(&Interval::from_i64(phi, cx), cx);
    let t2 = ln_n.mul(&Interval::from_rational(&rational(3 * phi + 20, 2), cx), cx);
    let t3 = lln.mul(&Interval::from_rational(&rational(5 * phi - 4, 2), cx), cx);
    t1.add(&t2, cx).add(&t3, cx)
}

/// log Delta = -d0 log d0 + L/2 + d0 phi(N) log L + phi(N) sum log log N(v),
/// where L = log(N^{d0 N} |D0|^{phi(N)}).
pub fn delta_quantity(field: &FieldData, n: u64, flags: &mut Flags, cx: &mut RealCtx) -> Interval {
    let phi = euler_phi(n);
    let ln_n = Interval::from_u64(n, cx).ln(cx);
    let ln_disc = Interval::from_u64(field.abs_disc, cx).ln(cx);
    let l = ln_n
        .mul(&Interval::from_u64(field.d0 * n, cx), cx)
        .add(&ln_disc.mul(&Interval::from_u64(phi, cx), cx), cx);
    let d0i = Interval::from_u64(field.d0, cx);
    let mut out = d0i
        .ln(cx)
        .mul(&d0i, cx)
        .neg()
        .add(&l.div(&Interval::from_i64(2, cx), cx), cx)
        .add(
            &l.ln(cx)
                .mul(&Interval::from_u64(field.d0 * phi, cx), cx),
            cx,
        );
    let phii = Interval::from_u64(phi, cx);
    for &q in &field.finite_norms {
        out = out.add(&loglog_floored_int(q, flags, cx).mul(&phii, cx), cx);
    }
    out
}

/// 2 s0 N log(C d0 s0 N^2) + 3 s0 N log log(d0 N) + d0 N log p + log Delta.
pub fn theorem2_log(
    field: &FieldData,
    n: u64,
    c_baker: &Rational,
    flags: &mut Flags,
    cx: &mut RealCtx,
) -> Interval {
    let inner = c_baker * Rational::from(BigInt::from(field.d0 * field.s0 * n * n));
    let t1 = Interval::from_rational(&inner, cx)
        .ln(cx)
        .mul(&Interval::from_u64(2 * field.s0 * n, cx), cx);
    let t2 = loglog_floored_int(field.d0 * n, flags, cx)
        .mul(&Interval::from_u64(3 * field.s0 * n, cx), cx);
    let t3 = Interval::from_u64(field.p, cx)
        .ln(cx)
        .mul(&Interval::from_u64(field.d0 * n, cx), cx);
    t1.add(&t2, cx)
        .add(&t3, cx)
        .add(&delta_quantity(field, n, flags, cx), cx)
}

/// Degree, place count, and the log-space discriminant/norm estimates for
/// K = K0(zeta_N); s is lifted to 2 when the extension has a single place.
pub fn extension_estimates(
    field: &FieldData,
    n: u64,
    flags: &mut Flags,
    cx: &mut RealCtx,
) -> Result<ExtensionData> {
    field.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("the level must be at least 2".into()));
    }
    let phi = euler_phi(n);
    let d = field.d0 * phi;
    let mut s = field.s0 * phi;
    let mut s_lifted = false;
    if s < 2 {
        s = 2;
        s_lifted = true;
        flags.insert(FLAG_S_LIFTED);
    }
    let ln_n = Interval::from_u64(n, cx).ln(cx);
    let log_disc = ln_n
        .mul(&Interval::from_u64(field.d0 * n, cx), cx)
        .add(
            &Interval::from_u64(field.abs_disc, cx)
                .ln(cx)
                .mul(&Interval::from_u64(phi, cx), cx),
            cx,
        );
    let mut norm_sum = Interval::zero(cx);
    for &q in &field.finite_norms {
        norm_sum = norm_sum.add(&loglog_floored_int(q, flags, cx), cx);
    }
    let log_norm_prod = Interval::from_i64(4, cx)
        .ln(cx)
        .mul(&Interval::from_u64(field.s0 * phi, cx), cx)
        .add(&norm_sum.mul(&Interval::from_u64(phi, cx), cx), cx);
    Ok(ExtensionData {
        d,
        s,
        r: s - 1,
        d_prime: d.max(3),
        s_lifted,
        log_disc,
        log_norm_prod,
    })
}

/// log|D| for a directly given |D|, floored at 1 when |D| < 3 (flagged).
pub fn log_disc_from_abs(abs_disc: u64, flags: &mut Flags, cx: &mut RealCtx) -> Interval {
    if abs_disc < 3 {
        flags.insert(FLAG_LOG_DISC_FLOOR);
        Interval::one(cx)
    } else {
        Interval::from_u64(abs_disc, cx).ln(cx)
    }
}

/// The S-regulator range: Friedman's lower bound 0.1 and the Siegel-style
/// upper estimate c d^{-d} sqrt|D| (log|D|)^{d-1} prod log N(v).
#[derive(Debug, Clone)]
pub struct RegulatorBounds {
    pub lower: Rational,
    pub upper_log: Interval,
    pub upper: Interval,
}

pub fn s_regulator_bounds(
    d: u64,
    log_disc: &Interval,
    log_norm_prod: &Interval,
    c_siegel: &Rational,
    cx: &mut RealCtx,
) -> RegulatorBounds {
    let di = Interval::from_u64(d, cx);
    let upper_log = Interval::from_rational(c_siegel, cx)
        .ln(cx)
        .sub(&di.ln(cx).mul(&di, cx), cx)
        .add(&log_disc.div(&Interval::from_i64(2, cx), cx), cx)
        .add(
            &log_disc
                .ln(cx)
                .mul(&Interval::from_u64(d - 1, cx), cx),
            cx,
        )
        .add(log_norm_prod, cx);
    RegulatorBounds {
        lower: rational(1, 10),
        upper: upper_log.exp(cx),
        upper_log,
    }
}

/// Height bounds for a fundamental S-unit system: the product bound
/// d^{-r} r^{2r} R_S, the per-unit range [(zeta d)^{-1}, d^{-1} r^{2r}
/// zeta^{r-1} R_S], and the factor 2 d r^{2r} zeta multiplying h(eta).
#[derive(Debug, Clone)]
pub struct SUnitHeightBounds {
    pub product_upper: Interval,
    pub per_unit_lower: Interval,
    pub per_unit_upper: Interval,
    pub bstar_factor: Interval,
}

pub fn sunit_height_bounds(
    ext: &ExtensionData,
    rs_upper: &Interval,
    cx: &mut RealCtx,
) -> SUnitHeightBounds {
    let zeta = zeta_quantity(ext.d, cx);
    let d = Interval::from_u64(ext.d, cx);
    let one = Interval::one(cx);
    let r2r = Interval::from_u64(ext.r, cx).powi(2 * ext.r as u32, cx);
    let product_upper = r2r
        .mul(rs_upper, cx)
        .div(&d.powi(ext.r as u32, cx), cx);
    let per_unit_lower = one.div(&zeta.mul(&d, cx), cx);
    let per_unit_upper = r2r
        .mul(&zeta.powi(ext.r as u32 - 1, cx), cx)
        .mul(rs_upper, cx)
        .div(&d, cx);
    let bstar_factor = d
        .mul(&r2r, cx)
        .mul(&zeta, cx)
        .mul(&Interval::from_i64(2, cx), cx);
    SUnitHeightBounds {
        product_upper,
        per_unit_lower,
        per_unit_upper,
        bstar_factor,
    }
}

/// Place kind for Baker's inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceKind {
    Archimedean,
    Finite(u64),
}

/// Upsilon from Baker's inequality: C^r d^2 log(2d) at an archimedean place,
/// (C d)^{2r+6} p^d at a finite place above p.
pub fn baker_upsilon(
    c_baker: &Rational,
    r: u64,
    d: u64,
    place: PlaceKind,
    cx: &mut RealCtx,
) -> Result<Interval> {
    if r < 1 || d < 1 {
        return Err(Error::InvalidInput("Baker's inequality needs r >= 1, d >= 1".into()));
    }
    let c = Interval::from_rational(c_baker, cx);
    let di = Interval::from_u64(d, cx);
    match place {
        PlaceKind::Archimedean => Ok(c
            .powi(r as u32, cx)
            .mul(&di.powi(2, cx), cx)
            .mul(&Interval::from_u64(2 * d, cx).ln(cx), cx)),
        PlaceKind::Finite(p) => {
            if prime_power(p) != Some((p, 1)) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            Ok(c
                .mul(&di, cx)
                .powi(2 * r as u32 + 6, cx)
                .mul(&Interval::from_u64(p, cx).powi(d as u32, cx), cx))
        }
    }
}

/// Upsilon for the pipeline: the unknown place may be archimedean or
/// finite, so take the worst case over the places S0 can contain.
fn upsilon_for_pipeline(
    c_baker: &Rational,
    r: u64,
    d: u64,
    p: u64,
    cx: &mut RealCtx,
) -> Interval {
    let arch = baker_upsilon(c_baker, r, d, PlaceKind::Archimedean, cx)
        .expect("validated arguments");
    if p <= 1 {
        return arch;
    }
    let fin = baker_upsilon(c_baker, r, d, PlaceKind::Finite(p), cx)
        .expect("validated arguments");
    arch.max(&fin)
}

/// 2 s N^8 log|q_w^{-1}| + 94 s N^8 log N.
pub fn hw_bound(s: u64, n: u64, log_qinv: &Rational, cx: &mut RealCtx) -> Result<Interval> {
    if s < 2 || n < 2 {
        return Err(Error::InvalidInput("hW bound needs s >= 2 and N >= 2".into()));
    }
    if log_qinv.is_negative() {
        return Err(Error::InvalidInput(
            "log|q^-1| must be nonnegative inside the unit disc".into(),
        ));
    }
    let n8 = Interval::from_u64(n, cx).powi(8, cx);
    let t1 = n8
        .mul(&Interval::from_u64(2 * s, cx), cx)
        .mul(&Interval::from_rational(log_qinv, cx), cx);
    let t2 = n8
        .mul(&Interval::from_u64(94 * s, cx), cx)
        .mul(&Interval::from_u64(n, cx).ln(cx), cx);
    Ok(t1.add(&t2, cx))
}

/// Place kind for the local normalization constant rho_v.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoPlace {
    Archimedean,
    /// Finite with |N|_v = 1.
    FiniteUnit,
    /// Finite above the prime ell dividing N.
    FiniteDividing(u64),
}

/// rho_v: 12 N^3 log N (archimedean), 0 (finite away from N),
/// 12 N^3 log(ell) / (ell - 1) (finite above ell | N).
pub fn rho_v(n: u64, place: RhoPlace, cx: &mut RealCtx) -> Result<Interval> {
    if n < 2 {
        return Err(Error::InvalidInput("the level must be at least 2".into()));
    }
    let n3 = Interval::from_u64(n, cx).powi(3, cx);
    let twelve = Interval::from_i64(12, cx);
    match place {
        RhoPlace::Archimedean => Ok(n3
            .mul(&twelve, cx)
            .mul(&Interval::from_u64(n, cx).ln(cx), cx)),
        RhoPlace::FiniteUnit => Ok(Interval::zero(cx)),
        RhoPlace::FiniteDividing(ell) => {
            if prime_power(ell) != Some((ell, 1)) || n % ell != 0 {
                return Err(Error::InvalidInput(format!(
                    "{ell} must be a prime dividing the level {n}"
                )));
            }
            Ok(n3
                .mul(&twelve, cx)
                .mul(&Interval::from_u64(ell, cx).ln(cx), cx)
                .div(&Interval::from_u64(ell - 1, cx), cx))
        }
    }
}

/// Every intermediate of the explicit pipeline chain, in linear space, plus
/// the natural log of the final height bound.
#[derive(Debug, Clone)]
pub struct PipelineParts {
    pub zeta: Interval,
    pub upsilon: Interval,
    pub theta0: Interval,
    pub theta_prod: Interval,
    pub alpha: Interval,
    pub beta: Interval,
    pub c1: Interval,
    pub c2: Interval,
    pub h_log: Interval,
}

/// Theta_0 = 24 d N^7 log 2, alpha = 4 d s r^{2r} zeta N^8,
/// Theta_1..Theta_r product bounded by r^{2r} zeta^r R(S),
/// beta = that product + 188 d s r^{2r} zeta N^8 log N,
/// C1 = alpha N Upsilon Theta_0 (Theta_1..Theta_r),
/// C2 = 48 alpha N^8 log 2 + beta,
/// h(P) <= 2 s alpha^{-1} C1 log C1 + s alpha^{-1} (2 C2 - beta) + s log 2.
pub fn pipeline_parts(
    field: &FieldData,
    ext: &ExtensionData,
    n: u64,
    rs_upper: &Interval,
    constants: &Constants,
    cx: &mut RealCtx,
) -> PipelineParts {
    let zeta = zeta_quantity(ext.d, cx);
    let upsilon = upsilon_for_pipeline(&constants.c_baker, ext.r, ext.d, field.p, cx);
    let ln2 = Interval::ln_2(cx);
    let ni = Interval::from_u64(n, cx);
    let n7 = ni.powi(7, cx);
    let n8 = ni.powi(8, cx);
    let d = Interval::from_u64(ext.d, cx);
    let s = Interval::from_u64(ext.s, cx);
    let r2r = Interval::from_u64(ext.r, cx).powi(2 * ext.r as u32, cx);
    let theta0 = d
        .mul(&n7, cx)
        .mul(&ln2, cx)
        .mul(&Interval::from_i64(24, cx), cx);
    let alpha = d
        .mul(&s, cx)
        .mul(&r2r, cx)
        .mul(&zeta, cx)
        .mul(&n8, cx)
        .mul(&Interval::from_i64(4, cx), cx);
    let theta_prod = r2r
        .mul(&zeta.powi(ext.r as u32, cx), cx)
        .mul(rs_upper, cx);
    let beta = theta_prod.add(
        &d.mul(&s, cx)
            .mul(&r2r, cx)
            .mul(&zeta, cx)
            .mul(&n8, cx)
            .mul(&ni.ln(cx), cx)
            .mul(&Interval::from_i64(188, cx), cx),
        cx,
    );
    let c1 = alpha
        .mul(&ni, cx)
        .mul(&upsilon, cx)
        .mul(&theta0, cx)
        .mul(&theta_prod, cx);
    let c2 = alpha
        .mul(&n8, cx)
        .mul(&ln2, cx)
        .mul(&Interval::from_i64(48, cx), cx)
        .add(&beta, cx);
    let h = c1
        .mul(&c1.ln(cx), cx)
        .mul(&s, cx)
        .mul(&Interval::from_i64(2, cx), cx)
        .div(&alpha, cx)
        .add(
            &c2.mul(&Interval::from_i64(2, cx), cx)
                .sub(&beta, cx)
                .mul(&s, cx)
                .div(&alpha, cx),
            cx,
        )
        .add(&s.mul(&ln2, cx), cx);
    let h_log = h.ln(cx);
    PipelineParts {
        zeta,
        upsilon,
        theta0,
        theta_prod,
        alpha,
        beta,
        c1,
        c2,
        h_log,
    }
}

/// log of s0 N (N phi(N) log(24 N^14 + 24 N^9) + N log(48 N^2 (N^6 + N + 1))
/// + log 2).
pub fn lambda_one_log(s0: u64, n: u64, cx: &mut RealCtx) -> Interval {
    let phi = euler_phi(n);
    let nb = BigInt::from(n);
    let arg1 = (nb.pow(14) + nb.pow(9)) * BigInt::from(24u32);
    let arg2 = (nb.pow(6) + &nb + BigInt::from(1u32)) * nb.pow(2) * BigInt::from(48u32);
    let t1 = Interval::from_bigint(&arg1, cx)
        .ln(cx)
        .mul(&Interval::from_u64(n * phi, cx), cx);
    let t2 = Interval::from_bigint(&arg2, cx)
        .ln(cx)
        .mul(&Interval::from_u64(n, cx), cx);
    let h = t1
        .add(&t2, cx)
        .add(&Interval::ln_2(cx), cx)
        .mul(&Interval::from_u64(s0 * n, cx), cx);
    h.ln(cx)
}

/// The shallow-point regime bound 3 s N (exact integer).
pub fn trivial_regime_bound(s: u64, n: u64) -> u64 {
    3 * s * n
}

/// Natural log of the shallow-point bound.
pub fn trivial_regime_log(s: u64, n: u64, cx: &mut RealCtx) -> Interval {
    Interval::from_u64(trivial_regime_bound(s, n), cx).ln(cx)
}

fn base_inputs(n: u64) -> std::collections::BTreeMap<String, String> {
    let mut m = std::collections::BTreeMap::new();
    m.insert("n".into(), n.to_string());
    m
}

fn field_inputs(map: &mut std::collections::BTreeMap<String, String>, field: &FieldData) {
    map.insert("d0".into(), field.d0.to_string());
    map.insert("abs_disc".into(), field.abs_disc.to_string());
    map.insert("s0".into(), field.s0.to_string());
    map.insert(
        "finite_norms".into(),
        field
            .finite_norms
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    map.insert("p".into(), field.p.to_string());
}

fn attest_notes(attest: &Attestation, notes: &mut Vec<String>) {
    notes.push(format!(
        "attested: nu_infty >= 3: {}, K0 in cyclotomic field: {}, S0 infinite only: {}",
        attest.nu_infty_ge_3, attest.k0_in_cyclotomic, attest.s0_infinite_only
    ));
}

fn finish_report(
    theorem: &str,
    value: &Interval,
    breakdown: Vec<(&str, &Interval)>,
    inputs: std::collections::BTreeMap<String, String>,
    constants: &Constants,
    flags: &Flags,
    mut notes: Vec<String>,
    cx: &mut RealCtx,
) -> BoundReport {
    if constants.preset_unit {
        notes.insert(0, "structural - not a validity claim (unit constants)".into());
    }
    let mut consts = std::collections::BTreeMap::new();
    consts.insert("c_baker".into(), constants.c_baker.to_string());
    consts.insert("c_siegel".into(), constants.c_siegel.to_string());
    consts.insert("c_hp".into(), constants.c_hp.to_string());
    consts.insert(
        "preset".into(),
        if constants.preset_unit { "unit" } else { "custom" }.to_string(),
    );
    BoundReport {
        theorem: theorem.to_string(),
        bound: ReportValue::from_ln(value, cx),
        breakdown: breakdown
            .into_iter()
            .map(|(k, v)| (k.to_string(), ReportValue::from_ln(v, cx)))
            .collect(),
        inputs,
        constants: consts,
        flags: flags.iter().map(|s| s.to_string()).collect(),
        notes,
    }
}

/// Theorem-1-shape report: cyclotomic ground field, infinite-only S0,
/// level not a prime power.
pub fn theorem1_bound(
    n: u64,
    constants: &Constants,
    attest: &Attestation,
    cx: &mut RealCtx,
) -> Result<BoundReport> {
    constants.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("the level must be at least 2".into()));
    }
    if prime_power(n).is_some() {
        return Err(Error::InvalidInput(format!(
            "level {n} is a prime power; use the raised-level route"
        )));
    }
    let mut flags = Flags::new();
    let value = theorem1_log(n, &constants.c_baker, &mut flags, cx);
    let mut notes = Vec::new();
    attest_notes(attest, &mut notes);
    notes.push(format!(
        "shallow points (every |q_w| > 10^-{n}): h(P) < 3 s N"
    ));
    Ok(finish_report(
        "main1",
        &value,
        Vec::new(),
        base_inputs(n),
        constants,
        &flags,
        notes,
        cx,
    ))
}

/// Theorem-2-shape report: arbitrary number field data, level not a prime
/// power.
pub fn theorem2_bound(
    field: &FieldData,
    n: u64,
    constants: &Constants,
    attest: &Attestation,
    cx: &mut RealCtx,
) -> Result<BoundReport> {
    constants.validate()?;
    field.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("the level must be at least 2".into()));
    }
    if prime_power(n).is_some() {
        return Err(Error::InvalidInput(format!(
            "level {n} is a prime power; use the raised-level route"
        )));
    }
    let mut flags = Flags::new();
    let delta = delta_quantity(field, n, &mut flags, cx);
    let value = theorem2_log(field, n, &constants.c_baker, &mut flags, cx);
    let mut inputs = base_inputs(n);
    field_inputs(&mut inputs, field);
    let mut notes = Vec::new();
    attest_notes(attest, &mut notes);
    let ext = extension_estimates(field, n, &mut flags, cx)?;
    notes.push(format!(
        "shallow points (every |q_w| > 10^-{n}): h(P) < 3 s N = {}",
        trivial_regime_bound(ext.s, n)
    ));
    Ok(finish_report(
        "main2",
        &value,
        vec![("log_delta", &delta)],
        inputs,
        constants,
        &flags,
        notes,
        cx,
    ))
}

/// Prime-power levels: both theorem shapes evaluated at the raised level
/// M (2N, or 3N for powers of two). The reported bound is the shape-2
/// value, which applies to arbitrary field data; the shape-1 value is
/// carried in the breakdown and applies only under the theorem-1
/// attestations at level M.
pub fn theorem3_bound(
    field: &FieldData,
    n: u64,
    constants: &Constants,
    attest: &Attestation,
    cx: &mut RealCtx,
) -> Result<BoundReport> {
    constants.validate()?;
    field.validate()?;
    if prime_power(n).is_none() {
        return Err(Error::InvalidInput(format!(
            "level {n} is not a prime power; use the direct theorems"
        )));
    }
    let m = raise_level(n)?;
    let mut flags = Flags::new();
    let shape1 = theorem1_log(m, &constants.c_baker, &mut flags, cx);
    let shape2 = theorem2_log(field, m, &constants.c_baker, &mut flags, cx);
    let mut inputs = base_inputs(n);
    field_inputs(&mut inputs, field);
    inputs.insert("m_raised".into(), m.to_string());
    let mut notes = vec![format!("level raised from {n} to {m}")];
    attest_notes(attest, &mut notes);
    let ext = extension_estimates(field, m, &mut flags, cx)?;
    notes.push(format!(
        "shallow points (every |q_w| > 10^-{m}): h(P) < 3 s N = {}",
        trivial_regime_bound(ext.s, m)
    ));
    Ok(finish_report(
        "main3",
        &shape2,
        vec![("shape1_log", &shape1), ("shape2_log", &shape2)],
        inputs,
        constants,
        &flags,
        notes,
        cx,
    ))
}

/// Full pipeline report with every intermediate in the breakdown.
pub fn pipeline_bound(
    field: &FieldData,
    ext: &ExtensionData,
    n: u64,
    rs_upper: &Interval,
    constants: &Constants,
    attest: &Attestation,
    flags: &Flags,
    cx: &mut RealCtx,
) -> Result<BoundReport> {
    constants.validate()?;
    field.validate()?;
    if ext.s < 2 {
        return Err(Error::InvalidInput("the pipeline needs s >= 2".into()));
    }
    let parts = pipeline_parts(field, ext, n, rs_upper, constants, cx);
    let zeta_log = parts.zeta.ln(cx);
    let upsilon_log = parts.upsilon.ln(cx);
    let theta0_log = parts.theta0.ln(cx);
    let theta_prod_log = parts.theta_prod.ln(cx);
    let alpha_log = parts.alpha.ln(cx);
    let beta_log = parts.beta.ln(cx);
    let c1_log = parts.c1.ln(cx);
    let c2_log = parts.c2.ln(cx);
    let rs_log = rs_upper.ln(cx);
    let mut inputs = base_inputs(n);
    field_inputs(&mut inputs, field);
    inputs.insert("d".into(), ext.d.to_string());
    inputs.insert("s".into(), ext.s.to_string());
    inputs.insert("r".into(), ext.r.to_string());
    let mut notes = Vec::new();
    attest_notes(attest, &mut notes);
    if ext.s_lifted {
        notes.push("s was lifted to 2 by adjoining a valuation".into());
    }
    notes.push(format!(
        "shallow points (every |q_w| > 10^-{n}): h(P) < 3 s N = {}",
        trivial_regime_bound(ext.s, n)
    ));
    Ok(finish_report(
        "pipeline",
        &parts.h_log,
        vec![
            ("log_zeta", &zeta_log),
            ("log_upsilon", &upsilon_log),
            ("log_theta0", &theta0_log),
            ("log_theta_prod", &theta_prod_log),
            ("log_alpha", &alpha_log),
            ("log_beta", &beta_log),
            ("log_c1", &c1_log),
            ("log_c2", &c2_log),
            ("log_rs_upper", &rs_log),
        ],
        inputs,
        constants,
        flags,
        notes,
        cx,
    ))
}

/// Report for the polynomial bound available when the level is the smallest
/// index with a nonvanishing expansion coefficient.
pub fn lambda_one_bound(s0: u64, n: u64, cx: &mut RealCtx) -> Result<BoundReport> {
    if n < 2 || s0 < 1 {
        return Err(Error::InvalidInput("need N >= 2 and s0 >= 1".into()));
    }
    let value = lambda_one_log(s0, n, cx);
    let mut inputs = base_inputs(n);
    inputs.insert("s0".into(), s0.to_string());
    let constants = Constants::unit();
    let flags = Flags::new();
    let notes = vec![format!(
        "shallow points (every |q_w| > 10^-{n}): h(P) < 3 s N"
    )];
    Ok(finish_report(
        "lambda_one",
        &value,
        Vec::new(),
        inputs,
        &constants,
        &flags,
        notes,
        cx,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::bf_to_rational;
    use num_traits::{One, Signed};

    fn ctx() -> RealCtx {
        RealCtx::new(256).unwrap()
    }

    /// Parse a plain decimal string (as frozen in the reference data).
    fn parse_decimal(s: &str) -> Rational {
        let neg = s.starts_with('-');
        let body = s.trim_start_matches('-');
        let (int_part, frac_part) = match body.split_once('.') {
            Some((a, b)) => (a, b),
            None => (body, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().unwrap();
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = Rational::new(num, den);
        if neg {
            -r
        } else {
            r
        }
    }

    fn assert_close(value: &Interval, reference: &Rational, rel: &Rational) {
        let hi = bf_to_rational(value.hi()).unwrap();
        let lo = bf_to_rational(value.lo()).unwrap();
        let tol = (reference * rel).abs();
        assert!(
            (&hi - reference).abs() <= tol && (&lo - reference).abs() <= tol,
            "value [{lo}, {hi}] not within {rel} of {reference}"
        );
    }

    fn rel(p: u32) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(10u32).pow(p))
    }

    #[test]
    fn zeta_clamps_below_three() {
        let mut cx = ctx();
        let z1 = zeta_quantity(1, &mut cx);
        let z3 = zeta_quantity(3, &mut cx);
        assert_eq!(
            bf_to_rational(z1.hi()).unwrap(),
            bf_to_rational(z3.hi()).unwrap()
        );
        // log d / log log d dips before d reaches e^e and grows after, so
        // the clamp value dominates nearby degrees
        let z4 = zeta_quantity(4, &mut cx);
        assert!(z4.certainly_lt(&z3));
        let z20 = zeta_quantity(20, &mut cx);
        let z100 = zeta_quantity(100, &mut cx);
        assert!(z20.certainly_lt(&z100));
        // frozen reference: zeta(1) = 1201 (log 3 / log log 3)^3
        let golden = parse_decimal("1914388.4263049027131897378705329210691222085705046");
        assert_close(&zeta_quantity(1, &mut cx), &golden, &rel(40));
    }

    #[test]
    fn regulator_upper_matches_direct_evaluation() {
        let mut cx = ctx();
        let mut flags = Flags::new();
        // d = 2, |D| = 8, no finite places: (1/4) sqrt(8) log 8
        let log_disc = log_disc_from_abs(8, &mut flags, &mut cx);
        assert!(flags.is_empty());
        let zero = Interval::zero(&mut cx);
        let rb = s_regulator_bounds(2, &log_disc, &zero, &rational(1, 1), &mut cx);
        let golden = parse_decimal("1.4703872152028207875708525854528500719371910486486");
        assert_close(&rb.upper, &golden, &rel(40));
        assert_eq!(rb.lower, rational(1, 10));
        // |D| < 3 floors the log at 1
        let floored = log_disc_from_abs(2, &mut flags, &mut cx);
        assert!(flags.contains(FLAG_LOG_DISC_FLOOR));
        assert!(floored.encloses_rational(&rational(1, 1)));
    }

    #[test]
    fn upsilon_goldens_and_validation() {
        let mut cx = ctx();
        let one = rational(1, 1);
        let arch = baker_upsilon(&one, 1, 1, PlaceKind::Archimedean, &mut cx).unwrap();
        let golden = parse_decimal("0.69314718055994530941723212145817656807550013436026");
        assert_close(&arch, &golden, &rel(40));
        let fin = baker_upsilon(&one, 1, 1, PlaceKind::Finite(2), &mut cx).unwrap();
        assert!(fin.encloses_rational(&rational(2, 1)));
        assert!(baker_upsilon(&one, 1, 1, PlaceKind::Finite(4), &mut cx).is_err());
        assert!(baker_upsilon(&one, 0, 1, PlaceKind::Archimedean, &mut cx).is_err());
    }

    #[test]
    fn hw_bound_golden_and_shape() {
        let mut cx = ctx();
        let v = hw_bound(2, 2, &rational(1, 1), &mut cx).unwrap();
        let golden = parse_decimal("34383.787505989047851632547541539121868337670466490");
        assert_close(&v, &golden, &rel(40));
        // intercept at log_qinv = 0 is 94 s N^8 log N
        let v0 = hw_bound(2, 2, &rational(0, 1), &mut cx).unwrap();
        let slope = hw_bound(2, 2, &rational(2, 1), &mut cx)
            .unwrap()
            .sub(&v0, &mut cx)
            .div(&Interval::from_i64(2, &mut cx), &mut cx);
        assert!(slope.encloses_rational(&rational(2 * 2 * 256, 1)));
        assert!(hw_bound(1, 2, &rational(1, 1), &mut cx).is_err());
        assert!(hw_bound(2, 2, &rational(-1, 1), &mut cx).is_err());
    }

    #[test]
    fn rho_v_cases() {
        let mut cx = ctx();
        let zero = rho_v(6, RhoPlace::FiniteUnit, &mut cx).unwrap();
        assert!(zero.encloses_rational(&rational(0, 1)));
        // archimedean at N=6: 12 * 216 * log 6
        let arch = rho_v(6, RhoPlace::Archimedean, &mut cx).unwrap();
        let expected = Interval::from_u64(6, &mut cx)
            .ln(&mut cx)
            .mul(&Interval::from_i64(2592, &mut cx), &mut cx);
        let diff = arch.sub(&expected, &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rel(40), &mut cx)));
        assert!(rho_v(6, RhoPlace::FiniteDividing(5), &mut cx).is_err());
        assert!(rho_v(6, RhoPlace::FiniteDividing(3), &mut cx).is_ok());
    }

    #[test]
    fn delta_golden_for_rationals_level_six() {
        let mut cx = ctx();
        let mut flags = Flags::new();
        let v = delta_quantity(&FieldData::rationals(), 6, &mut flags, &mut cx);
        assert!(flags.is_empty());
        let golden = parse_decimal("24964.085917539889094870332204010124593983025581364");
        assert_close(&v.exp(&mut cx), &golden, &rel(38));
    }

    #[test]
    fn theorem1_doubling_c_adds_phi_log2() {
        let mut cx = ctx();
        let mut flags = Flags::new();
        let base = theorem1_log(6, &rational(1, 1), &mut flags, &mut cx);
        let doubled = theorem1_log(6, &rational(2, 1), &mut flags, &mut cx);
        let gap = doubled.sub(&base, &mut cx);
        let expected = Interval::ln_2(&mut cx).mul(&Interval::from_i64(2, &mut cx), &mut cx);
        let diff = gap.sub(&expected, &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rel(40), &mut cx)));
    }

    #[test]
    fn theorem2_monotone_in_p_and_disc() {
        let mut cx = ctx();
        let c = rational(1, 1);
        let mut prev: Option<Rational> = None;
        for p in [1u64, 2, 3, 5, 7] {
            let norms = if p == 1 { vec![] } else { vec![p] };
            let field = FieldData::new(2, 8, 3, norms).unwrap();
            assert_eq!(field.p, p);
            let mut flags = Flags::new();
            let v = theorem2_log(&field, 6, &c, &mut flags, &mut cx);
            let lo = bf_to_rational(v.lo()).unwrap();
            if let Some(prev) = prev {
                assert!(prev <= lo, "theorem2 must be nondecreasing in p");
            }
            prev = Some(bf_to_rational(v.hi()).unwrap());
        }
        let mut prev: Option<Rational> = None;
        for disc in [1u64, 8, 81, 257, 1000003] {
            let field = FieldData::new(2, disc, 3, vec![]).unwrap();
            let mut flags = Flags::new();
            let v = theorem2_log(&field, 6, &c, &mut flags, &mut cx);
            let lo = bf_to_rational(v.lo()).unwrap();
            if let Some(prev) = prev {
                assert!(prev <= lo, "theorem2 must be nondecreasing in |D0|");
            }
            prev = Some(bf_to_rational(v.hi()).unwrap());
        }
    }

    #[test]
    fn sunit_bounds_are_ordered() {
        let mut cx = ctx();
        let mut flags = Flags::new();
        for (d0, s0, n) in [(1u64, 1u64, 6u64), (2, 2, 5), (3, 2, 12), (1, 4, 10)] {
            let field = FieldData::new(d0, 8, s0, vec![]).unwrap();
            let ext = extension_estimates(&field, n, &mut flags, &mut cx).unwrap();
            let rb = s_regulator_bounds(
                ext.d,
                &ext.log_disc,
                &ext.log_norm_prod,
                &rational(1, 1),
                &mut cx,
            );
            let su = sunit_height_bounds(&ext, &rb.upper, &mut cx);
            assert!(
                su.per_unit_lower.certainly_le(&su.per_unit_upper),
                "per-unit interval must be ordered for d0={d0} s0={s0} n={n}"
            );
            assert!(su.bstar_factor.is_strictly_positive());
        }
    }

    #[test]
    fn sunit_bounds_at_unit_arguments() {
        let mut cx = ctx();
        // r = 1, d = 1, RS = 1, zeta = z: product <= 1, per-unit in [1/z, 1],
        // B* factor 2z
        let ext = ExtensionData {
            d: 1,
            s: 2,
            r: 1,
            d_prime: 3,
            s_lifted: false,
            log_disc: Interval::zero(&mut cx),
            log_norm_prod: Interval::zero(&mut cx),
        };
        let one = Interval::one(&mut cx);
        let su = sunit_height_bounds(&ext, &one, &mut cx);
        assert!(su.product_upper.encloses_rational(&rational(1, 1)));
        assert!(su.per_unit_upper.encloses_rational(&rational(1, 1)));
        let z = zeta_quantity(1, &mut cx);
        let recip = Interval::one(&mut cx).div(&z, &mut cx);
        let diff = su.per_unit_lower.sub(&recip, &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rel(30), &mut cx)));
        let twice = z.mul(&Interval::from_i64(2, &mut cx), &mut cx);
        let diff = su.bstar_factor.sub(&twice, &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rel(30), &mut cx)));
    }

    #[test]
    fn trivial_regime_values() {
        assert_eq!(trivial_regime_bound(2, 6), 36);
        assert_eq!(trivial_regime_bound(1, 2), 6);
        let mut cx = ctx();
        let v = trivial_regime_log(2, 6, &mut cx);
        assert!(v.exp(&mut cx).encloses_rational(&rational(36, 1)));
    }

    #[test]
    fn field_data_validation() {
        assert!(FieldData::new(1, 1, 1, vec![]).is_ok());
        assert!(FieldData::new(0, 1, 1, vec![]).is_err());
        assert!(FieldData::new(1, 0, 1, vec![]).is_err());
        assert!(FieldData::new(1, 1, 0, vec![]).is_err());
        assert!(FieldData::new(1, 1, 1, vec![2, 3]).is_err()); // s0 too small
        assert!(FieldData::new(1, 1, 3, vec![6]).is_err()); // 6 not a prime power
        let f = FieldData::new(1, 1, 3, vec![4, 27]).unwrap();
        assert_eq!(f.p, 3);
        let mut bad = f.clone();
        bad.p = 2;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn theorem_report_routing() {
        let mut cx = ctx();
        let constants = Constants::unit();
        let attest = Attestation {
            nu_infty_ge_3: true,
            k0_in_cyclotomic: true,
            s0_infinite_only: true,
        };
        assert!(theorem1_bound(5, &constants, &attest, &mut cx).is_err());
        assert!(theorem1_bound(6, &constants, &attest, &mut cx).is_ok());
        let field = FieldData::rationals();
        assert!(theorem2_bound(&field, 8, &constants, &attest, &mut cx).is_err());
        assert!(theorem3_bound(&field, 6, &constants, &attest, &mut cx).is_err());
        let r3 = theorem3_bound(&field, 5, &constants, &attest, &mut cx).unwrap();
        assert_eq!(r3.inputs["m_raised"], "10");
        assert!(r3.notes.iter().any(|s| s.contains("level raised")));
        let r8 = theorem3_bound(&field, 8, &constants, &attest, &mut cx).unwrap();
        assert_eq!(r8.inputs["m_raised"], "24");
    }

    #[test]
    fn reports_are_deterministic() {
        let run = || {
            let mut cx = ctx();
            let constants = Constants::unit();
            let attest = Attestation::default();
            let field = FieldData::new(2, 8, 2, vec![2]).unwrap();
            let mut flags = Flags::new();
            let ext = extension_estimates(&field, 6, &mut flags, &mut cx).unwrap();
            let rb = s_regulator_bounds(
                ext.d,
                &ext.log_disc,
                &ext.log_norm_prod,
                &constants.c_siegel,
                &mut cx,
            );
            let rep = pipeline_bound(
                &field, &ext, 6, &rb.upper, &constants, &attest, &flags, &mut cx,
            )
            .unwrap();
            rep.to_json()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        assert!(a.contains("structural - not a validity claim"));
    }

    #[test]
    fn lambda_one_golden() {
        let mut cx = ctx();
        let v = lambda_one_log(1, 6, &mut cx);
        let golden = parse_decimal("7.8989593742914306832690311154753783994619997001558");
        assert_close(&v, &golden, &rel(40));
        // s0 scaling adds exactly log s0
        let v3 = lambda_one_log(3, 6, &mut cx);
        let gap = v3.sub(&v, &mut cx);
        let ln3 = Interval::from_i64(3, &mut cx).ln(&mut cx);
        let diff = gap.sub(&ln3, &mut cx).abs();
        assert!(diff.certainly_le(&Interval::from_rational(&rel(40), &mut cx)));
    }

    #[test]
    fn loglog_floor_flags_small_arguments() {
        let mut cx = ctx();
        let mut flags = Flags::new();
        let v = loglog_floored_int(3, &mut flags, &mut cx);
        assert!(flags.is_empty());
        assert!(!v.contains_zero()); // log log 3 is a small positive number
        assert!(v.certainly_lt(&Interval::one(&mut cx)));
        let w = loglog_floored_int(2, &mut flags, &mut cx);
        assert!(flags.contains(FLAG_LOGLOG_FLOOR));
        // floored value is just above zero
        assert!(w.is_strictly_positive());
        assert!(w.certainly_lt(&Interval::from_rational(&rational(1, 1000), &mut cx)));
    }
}
