//! Siegel-function q-expansions, modular-unit expansions, the full-product
//! identity, and formal logarithms.
//!
//! Conventions.  For a nonzero point a = (k1/n, k2/n) the function g_a has
//! the product presentation
//!
//!   g_a = -q^{B2(k1/n)/2} gamma_a (1 + sum_k phi_a(k) q^{k/n}),
//!
//! where the normalized series (constant term exactly 1) is the product of
//! the binomials (1 - zeta_n^{k2} q^{(mn+k1)/n}) for m >= 0 (m >= 1 when
//! k1 = 0; the m = 0 factor is folded into gamma_a) and
//! (1 - zeta_n^{-k2} q^{(mn-k1)/n}) for m >= 1.  All exponents live on the
//! integer grid of 1/(12 n^2); q^{k/n} sits at 12 n k.

use num_bigint::BigInt;

use super::cyc::{CycField, CycNumber};
use super::series::{check_trunc, exponent_denominator, QExpansion};
use crate::error::{Error, Result};
use crate::numtheory::{cyclotomic_at_one, enumerate_an, Rational, TorsionPoint};

/// 12 n^2 * B2(k1/n)/2 = 6 k1^2 - 6 k1 n + n^2: the q-order of g_a at the
/// infinite cusp in 1/(12 n^2) units.
pub fn ell_units(n: u32, k1: u32) -> i64 {
    let n = n as i64;
    let k = k1 as i64;
    6 * k * k - 6 * k * n + n * n
}

/// One binomial factor of the normalized series: coefficient exponent of
/// zeta_n and the q-exponent in 1/(12 n^2) units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiegelFactor {
    pub exponent_units: i64,
    pub zeta_n_power: i64,
}

/// All factors with leading exponent within the truncation order; factors
/// beyond it are 1 + O(q^{> trunc/12n^2}) and are dropped.
pub fn factor_list(n: u32, k1: u32, k2: u32, trunc: i64) -> Vec<SiegelFactor> {
    let step = 12 * n as i64;
    let n64 = n as i64;
    let mut out = Vec::new();
    let m0 = if k1 == 0 { 1 } else { 0 };
    let mut m = m0;
    loop {
        let e = (m * n64 + k1 as i64) * step;
        if e > trunc {
            break;
        }
        out.push(SiegelFactor {
            exponent_units: e,
            zeta_n_power: k2 as i64,
        });
        m += 1;
    }
    let mut m = 1i64;
    loop {
        let e = (m * n64 - k1 as i64) * step;
        if e > trunc {
            break;
        }
        out.push(SiegelFactor {
            exponent_units: e,
            zeta_n_power: -(k2 as i64),
        });
        m += 1;
    }
    out.sort_by_key(|f| f.exponent_units);
    out
}

/// The constant gamma_a: e^{pi i a2 (a1 - 1)} when a1 != 0, and
/// e^{-pi i a2} (1 - e^{2 pi i a2}) when a1 = 0, as an element of Q(zeta_{2n^2}).
pub fn gamma_constant(f: &CycField, n: u32, k1: u32, k2: u32) -> CycNumber {
    debug_assert_eq!(f.conductor(), 2 * n * n);
    let n64 = n as i64;
    let k2 = k2 as i64;
    if k1 != 0 {
        // exponent of zeta_{2n^2}: k2 (k1 - n), since e^{pi i x / n^2} = zeta_{2n^2}^x.
        f.zeta_pow(k2 * (k1 as i64 - n64))
    } else {
        let root = f.zeta_pow(-k2 * n64);
        let one_minus = f.one().sub(&f.zeta_pow(2 * n64 * k2), f);
        root.mul(&one_minus, f)
    }
}

fn normalized_series(f: &CycField, n: u32, k1: u32, k2: u32, trunc: i64) -> QExpansion {
    let mut series = QExpansion::one(n, f, trunc);
    for fac in factor_list(n, k1, k2, trunc) {
        let zeta = f.zeta_pow(2 * n as i64 * fac.zeta_n_power);
        let binom = QExpansion::one(n, f, trunc)
            .sub(&QExpansion::monomial(n, fac.exponent_units, zeta, trunc), f);
        series = series.mul(&binom, f);
    }
    series
}

/// Expansion data for a single point: the constant and the normalized series.
#[derive(Debug, Clone)]
pub struct SiegelCoefficients {
    point: TorsionPoint,
    gamma: CycNumber,
    series: QExpansion,
}

impl SiegelCoefficients {
    pub fn point(&self) -> &TorsionPoint {
        &self.point
    }

    pub fn gamma(&self) -> &CycNumber {
        &self.gamma
    }

    /// 1 + sum_k phi_a(k) q^{k/n}.
    pub fn series(&self) -> &QExpansion {
        &self.series
    }

    /// phi_a(k), the coefficient of q^{k/n} (None when absent, i.e. zero).
    pub fn phi(&self, k: i64) -> Option<&CycNumber> {
        self.series.coeff(12 * self.point.level() as i64 * k)
    }

    /// q-order of g_a at the infinite cusp, in 1/(12 n^2) units.
    pub fn order_units(&self) -> i64 {
        ell_units(self.point.level(), self.point.numerators().0)
    }
}

/// Expansion of a point of exact order n >= 2 (the classical case; the
/// internal machinery below also accepts smaller-order points, which the
/// modular-unit layer needs).
pub fn siegel_expansion(f: &CycField, a: &TorsionPoint, trunc: i64) -> Result<SiegelCoefficients> {
    if !a.is_exact_order() || a.level() < 2 {
        return Err(Error::InvalidInput(format!(
            "expansion point must have exact order equal to its level, got order {} at level {}",
            a.order(),
            a.level()
        )));
    }
    point_expansion(f, a, trunc)
}

/// Expansion of any nonzero point with denominator n.
pub fn point_expansion(f: &CycField, a: &TorsionPoint, trunc: i64) -> Result<SiegelCoefficients> {
    check_trunc(trunc)?;
    if trunc < 1 {
        return Err(Error::InvalidInput("truncation order must be >= 1".into()));
    }
    let n = a.level();
    if f.conductor() != 2 * n * n {
        return Err(Error::InvalidInput(format!(
            "coefficient field conductor {} does not match level {n} (want {})",
            f.conductor(),
            2 * n * n
        )));
    }
    let (k1, k2) = a.numerators();
    let series = normalized_series(f, n, k1, k2, trunc);
    debug_assert!(
        series.coeff(0).map(|c| c.eq(&f.one(), f)).unwrap_or(false),
        "normalized series must have constant term 1"
    );
    Ok(SiegelCoefficients {
        point: *a,
        gamma: gamma_constant(f, n, k1, k2),
        series,
    })
}

/// The modular unit u_T = prod_{a in T} g_a^{12n} attached to a set of
/// points (typically one orbit), normalized at the infinite cusp.
#[derive(Debug, Clone)]
pub struct UnitExpansion {
    level: u32,
    q_order_units: i64,
    gamma: CycNumber,
    base: QExpansion,
    series: QExpansion,
}

impl UnitExpansion {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Declared q-order at the infinite cusp in 1/(12 n^2) units
    /// (equals 12n * sum of ell over the points, times 12n^2).
    pub fn q_order_units(&self) -> i64 {
        self.q_order_units
    }

    /// q-order as an exact exponent of q.
    pub fn q_order(&self) -> Rational {
        Rational::new(
            BigInt::from(self.q_order_units),
            BigInt::from(exponent_denominator(self.level)),
        )
    }

    /// The normalizing constant gamma_{O,c_inf} = prod gamma_a^{12n}.
    pub fn gamma(&self) -> &CycNumber {
        &self.gamma
    }

    /// prod_a (normalized series of a): the unit before the 12n-th power.
    pub fn base(&self) -> &QExpansion {
        &self.base
    }

    /// u_T / (gamma q^{order}): constant term exactly 1.
    pub fn series(&self) -> &QExpansion {
        &self.series
    }
}

fn orbit_base(
    f: &CycField,
    n: u32,
    points: &[TorsionPoint],
    trunc: i64,
) -> Result<(CycNumber, i64, QExpansion)> {
    check_trunc(trunc)?;
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    let mut gamma = f.one();
    let mut order: i64 = 0;
    let mut base = QExpansion::one(n, f, trunc);
    for a in points {
        if a.level() != n {
            return Err(Error::InvalidInput("mixed levels in point set".into()));
        }
        let sc = point_expansion(f, a, trunc)?;
        gamma = gamma.mul(sc.gamma(), f);
        order += sc.order_units();
        base = base.mul(sc.series(), f);
    }
    Ok((gamma, 12 * n as i64 * order, base))
}

pub fn unit_orbit_expansion(
    f: &CycField,
    n: u32,
    points: &[TorsionPoint],
    trunc: i64,
) -> Result<UnitExpansion> {
    let (gamma_base, q_order_units, base) = orbit_base(f, n, points, trunc)?;
    let e = 12 * n as u64;
    Ok(UnitExpansion {
        level: n,
        q_order_units,
        gamma: gamma_base.pow(e, f),
        series: base.pow(e as u32, f),
        base,
    })
}

/// Outcome of the level-n full-product identity check:
/// prod over all exact-order points of g_a is the constant
/// (-1)^{|A_n|} prod gamma_a, whose 12n-th power is +-Phi_n(1)^{12n}.
#[derive(Debug, Clone)]
pub struct FullProductCheck {
    pub level: u32,
    pub trunc: i64,
    /// First exponent (units) with a nonvanishing non-constant coefficient.
    pub first_bad_exponent: Option<i64>,
    /// +1 or -1 when the powered constant matches +-Phi_n(1)^{12n}; 0 otherwise.
    pub sign: i8,
    pub passed: bool,
}

pub fn verify_full_product(n: u32, trunc: i64) -> Result<FullProductCheck> {
    if n < 2 {
        return Err(Error::InvalidInput("level must be >= 2".into()));
    }
    let f = CycField::for_level(n)?;
    let points = enumerate_an(n);
    let (gamma_base, q_order_units, base) = orbit_base(&f, n, &points, trunc)?;
    // The prefactor exponents cancel exactly; anything else is a bug.
    if q_order_units != 0 {
        return Err(Error::Consistency(format!(
            "full-product q-order should vanish, got {q_order_units} units"
        )));
    }
    let first_bad_exponent = base.support().find(|(e, c)| *e > 0 && !c.is_zero(&f)).map(|(e, _)| e);

    let minus_one_count = points.len() as u64;
    let mut constant = gamma_base;
    if minus_one_count % 2 == 1 {
        constant = constant.neg();
    }
    let value = constant.pow(12 * n as u64, &f);
    let target_int: BigInt = cyclotomic_at_one(n as u64).pow(12 * n);
    let target = f.from_rational(Rational::from_integer(target_int));
    let sign = if value.eq(&target, &f) {
        1
    } else if value.eq(&target.neg(), &f) {
        -1
    } else {
        0
    };
    Ok(FullProductCheck {
        level: n,
        trunc,
        first_bad_exponent,
        sign,
        passed: first_bad_exponent.is_none() && sign != 0,
    })
}

/// Formal logarithm coefficients lambda of an expansion with constant term 1;
/// exponents in 1/(12 n^2) units like the series themselves.  The branch
/// integer is 0 in the formal / finite-place sense.
#[derive(Debug, Clone)]
pub struct LogExpansion {
    level: u32,
    coeffs: std::collections::BTreeMap<i64, CycNumber>,
    trunc: i64,
    branch: i64,
}

impl LogExpansion {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    pub fn coeff(&self, e: i64) -> Option<&CycNumber> {
        self.coeffs.get(&e)
    }

    /// lambda_k, the coefficient of q^{k/n}.
    pub fn lambda(&self, k: i64) -> Option<&CycNumber> {
        self.coeff(12 * self.level as i64 * k)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Least exponent (units) with a canonically nonzero coefficient.
    pub fn first_nonzero(&self, f: &CycField) -> Option<i64> {
        self.coeffs
            .iter()
            .find(|(_, c)| !c.is_zero(f))
            .map(|(e, _)| *e)
    }

    pub fn scale_int(&self, s: i64) -> LogExpansion {
        let r = Rational::from_integer(BigInt::from(s));
        LogExpansion {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.scale(&r))).collect(),
            trunc: self.trunc,
            branch: self.branch * s,
        }
    }

    pub fn add(&self, rhs: &LogExpansion, f: &CycField) -> LogExpansion {
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
        LogExpansion {
            level: self.level,
            coeffs,
            trunc,
            branch: self.branch + rhs.branch,
        }
    }
}

/// log(series) for a series with constant term exactly 1, via the derivative
/// recurrence m lambda_m = m c_m - sum_{0<j<m} j lambda_j c_{m-j}.
pub fn formal_log(f: &CycField, series: &QExpansion) -> Result<LogExpansion> {
    let ok_constant = series
        .coeff(0)
        .map(|c| c.eq(&f.one(), f))
        .unwrap_or(false);
    if !ok_constant {
        return Err(Error::InvalidInput(
            "formal logarithm needs constant term exactly 1".into(),
        ));
    }
    let trunc = series.trunc();
    // Work on the grid generated by the support of series - 1.
    let mut grid: i64 = 0;
    for (e, c) in series.support() {
        if e > 0 && !c.is_zero(f) {
            grid = num_integer::gcd(grid, e);
        }
    }
    let mut coeffs = std::collections::BTreeMap::new();
    if grid > 0 {
        let mut m = grid;
        while m <= trunc {
            let mut acc = match series.coeff(m) {
                Some(c) => c.scale(&Rational::from_integer(BigInt::from(m))),
                None => f.zero(),
            };
            let mut j = grid;
            while j < m {
                if let (Some(lj), Some(cmj)) = (coeffs.get(&j), series.coeff(m - j)) {
                    let lj: &CycNumber = lj;
                    let term = lj
                        .mul(cmj, f)
                        .scale(&Rational::from_integer(BigInt::from(j)));
                    acc = acc.sub(&term, f);
                }
                j += grid;
            }
            let lam = acc.scale(&Rational::new(BigInt::from(1), BigInt::from(m)));
            if lam.term_count() > 0 {
                coeffs.insert(m, lam);
            }
            m += grid;
        }
    }
    Ok(LogExpansion {
        level: series.level(),
        coeffs,
        trunc,
        branch: 0,
    })
}

/// lambda coefficients of the unit u_T: 12n times the log of the base product.
pub fn orbit_log_expansion(
    f: &CycField,
    n: u32,
    points: &[TorsionPoint],
    trunc: i64,
) -> Result<LogExpansion> {
    let (_, _, base) = orbit_base(f, n, points, trunc)?;
    Ok(formal_log(f, &base)?.scale_int(12 * n as i64))
}
