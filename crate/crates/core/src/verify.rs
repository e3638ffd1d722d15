//! Named verification suites: each check is an independent pass/fail with a
//! human-readable detail line, and suites always emit their checks in a
//! fixed order so reports are reproducible byte for byte.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    extension_estimates, lambda_one_log, pipeline_parts, s_regulator_bounds, theorem1_log,
    theorem2_log, Constants, FieldData, Flags,
};
use crate::error::{Error, Result};
use crate::interval::{bf_to_rational, RealCtx};
use crate::modgroup::Subgroup;
use crate::numtheory::{enumerate_an, rational, Rational, TorsionPoint};
use crate::qseries::{
    lambda_bound_certified, numeric_eval, orbit_log_expansion, phi_bound_certified,
    point_expansion, verify_full_product, CycField, QSample,
};

/// One verification check: name, verdict, and a detail line.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, details: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

/// Inputs shared by the suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub level: u32,
    /// Group for the divisor checks; the principal curve (trivial subgroup,
    /// i.e. {+-1} after the ambient identification) when absent.
    pub generators: Vec<crate::modgroup::GL2>,
    pub precision_bits: usize,
    /// Series length in q^{1/N}-steps for the coefficient checks.
    pub terms: i64,
    pub group_cap: u32,
}

pub const SUITES: [&str; 5] = [
    "product",
    "coeff-bounds",
    "numeric",
    "divisors",
    "bounds-oracle",
];

/// Run one named suite, or all of them ("all"). Checks inside a suite run
/// concurrently where cheap to do so; the output order is fixed either way.
pub fn run_suite(name: &str, opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    match name {
        "product" => product_suite(opt),
        "coeff-bounds" => coeff_bounds_suite(opt),
        "numeric" => numeric_suite(opt),
        "divisors" => divisors_suite(opt),
        "bounds-oracle" => bounds_oracle_suite(opt),
        "all" => {
            let names = SUITES;
            let mut slots: Vec<Result<Vec<CheckResult>>> = Vec::with_capacity(names.len());
            std::thread::scope(|scope| {
                let handles: Vec<_> = names
                    .iter()
                    .map(|n| scope.spawn(move || run_suite(n, opt)))
                    .collect();
                for h in handles {
                    slots.push(h.join().expect("suite thread panicked"));
                }
            });
            let mut out = Vec::new();
            for s in slots {
                out.extend(s?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown suite {other:?}; expected one of product, coeff-bounds, numeric, divisors, bounds-oracle, all"
        ))),
    }
}

fn level_gate(n: u32, cap: u32, what: &str) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput("the level must be at least 2".into()));
    }
    if n > cap {
        return Err(Error::ResourceCap(format!(
            "{what} is capped at level {cap} (got {n})"
        )));
    }
    Ok(())
}

/// The product of all exact-order Siegel units is the predicted constant.
fn product_suite(opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let n = opt.level;
    level_gate(n, 12, "the full-product identity check")?;
    let trunc = 12 * n as i64 * n as i64;
    let check = verify_full_product(n, trunc)?;
    let mut out = Vec::new();
    out.push(CheckResult::new(
        format!("product/level-{n}/series-collapses"),
        check.first_bad_exponent.is_none(),
        match check.first_bad_exponent {
            None => "all positive-order coefficients cancel".to_string(),
            Some(e) => format!("nonzero coefficient survives at exponent {e}/{}", 12 * n * n),
        },
    ));
    out.push(CheckResult::new(
        format!("product/level-{n}/constant-is-cyclotomic-value"),
        check.sign != 0,
        format!("sign = {}", check.sign),
    ));
    Ok(out)
}

/// phi_a(k) stays below e^k at every embedding, and the log coefficients of
/// orbit units stay below 24 N^2 (k + N).
fn coeff_bounds_suite(opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let n = opt.level;
    level_gate(n, 6, "the coefficient-bound check")?;
    let f = CycField::for_level(n)?;
    let k_max = opt.terms.max(8);
    let trunc = 12 * n as i64 * k_max;
    let mut cx = RealCtx::new(opt.precision_bits)?;
    let mut worst: Option<(TorsionPoint, i64)> = None;
    let mut all_ok = true;
    for a in enumerate_an(n) {
        let sc = point_expansion(&f, &a, trunc)?;
        for k in 1..=k_max {
            if let Some(c) = sc.phi(k) {
                if !phi_bound_certified(&f, c, k, &mut cx) {
                    all_ok = false;
                    worst = Some((a.clone(), k));
                }
            }
        }
    }
    let mut out = vec![CheckResult::new(
        format!("coeff-bounds/level-{n}/phi-under-e-pow-k"),
        all_ok,
        match worst {
            None => format!("all points of exact order {n}, k <= {k_max}"),
            Some((a, k)) => format!("violated at point {:?}, k = {k}", a.numerators()),
        },
    )];

    let group = Subgroup::new(n, &opt.generators, opt.group_cap)?;
    let mut all_ok = true;
    let mut detail = format!("orbit logs to k <= {k_max}");
    'orbits: for orbit in group.unit_orbits() {
        let le = orbit_log_expansion(&f, n, orbit.points(), trunc)?;
        for k in 1..=k_max {
            if let Some(c) = le.lambda(k) {
                let bound = rational(24 * (n as i64) * (n as i64) * (k + n as i64), 1);
                if !lambda_bound_certified(&f, c, &bound, &mut cx) {
                    all_ok = false;
                    detail = format!(
                        "violated at orbit rep {:?}, k = {k}",
                        orbit.rep().numerators()
                    );
                    break 'orbits;
                }
            }
        }
    }
    out.push(CheckResult::new(
        format!("coeff-bounds/level-{n}/lambda-under-24n2(k+n)"),
        all_ok,
        detail,
    ));
    Ok(out)
}

/// Sample grid inside the guaranteed disc: series/product agreement within
/// the analytic tail, the near-one corollary, and the logarithmic margin.
fn numeric_suite(opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let n = opt.level;
    level_gate(n, 6, "the numeric sampling check")?;
    let f = CycField::for_level(n)?;
    let mut cx = RealCtx::new(opt.precision_bits.max(256))?;
    // at level 2 the logarithmic margin needs samples away from the
    // positive real axis; the open wedge (1/4, 3/4) is always safe
    let angles: Vec<Rational> = if n == 2 {
        vec![rational(1, 3), rational(1, 2), rational(5, 8)]
    } else {
        vec![rational(0, 1), rational(1, 3), rational(1, 2)]
    };
    let base = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(n));
    let moduli = [&base / rational(2, 1), &base / rational(7, 1)];
    let points: Vec<TorsionPoint> = enumerate_an(n).into_iter().take(3).collect();
    let mut out = Vec::new();
    for (pi, a) in points.iter().enumerate() {
        let mut ok = (true, true, true, true);
        let mut count = 0usize;
        for m in &moduli {
            for th in &angles {
                let sample = QSample::new(m.clone(), th.clone());
                let check = numeric_eval(&f, a, &sample, 40, &mut cx)?;
                ok.0 &= check.tail_ok;
                ok.1 &= check.near_one_ok;
                ok.2 &= check.log_margin_ok;
                ok.3 &= check.branch_integer == Some(0);
                count += 1;
            }
        }
        let (k1, k2) = a.numerators();
        out.push(CheckResult::new(
            format!("numeric/level-{n}/point-{pi}-({k1},{k2})"),
            ok.0 && ok.1 && ok.2 && ok.3,
            format!(
                "{count} samples: tail {}, near-one {}, log-margin {}, branch {}",
                ok.0, ok.1, ok.2, ok.3
            ),
        ));
    }
    Ok(out)
}

/// Divisor rows sum to zero, entries stay under N^4, and the rank is one
/// less than the cusp count.
fn divisors_suite(opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let n = opt.level;
    level_gate(n, opt.group_cap.min(30), "the divisor check")?;
    let group = Subgroup::new(n, &opt.generators, opt.group_cap)?;
    let orbits = group.unit_orbits();
    let cusps = group.cusps();
    let matrix = group.divisor_matrix(&orbits, &cusps)?;
    let n4 = (n as i64).pow(4);
    let mut sums_ok = true;
    let mut size_ok = true;
    for row in &matrix {
        let s: i64 = row.iter().copied().sum();
        sums_ok &= s == 0;
        size_ok &= row.iter().all(|&e| e.abs() < n4);
    }
    let rank = group.divisor_rank()?;
    let nu = group.nu_infty();
    Ok(vec![
        CheckResult::new(
            format!("divisors/level-{n}/rows-sum-to-zero"),
            sums_ok,
            format!("{} orbits x {} cusps", matrix.len(), cusps.len()),
        ),
        CheckResult::new(
            format!("divisors/level-{n}/orders-bounded-by-n4"),
            size_ok,
            format!("|ord| < {n4}"),
        ),
        CheckResult::new(
            format!("divisors/level-{n}/rank-is-cusps-minus-one"),
            rank == nu - 1,
            format!("rank {rank}, cusps {nu}"),
        ),
    ])
}

/// Self-check of the bound evaluation: on seeded random inputs, the value
/// certified at the working precision must dominate the value at 4x the
/// precision and stay within 2^-40 relative of it.
fn bounds_oracle_suite(opt: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let p_work = opt.precision_bits.max(256);
    let p_ref = p_work * 4;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a62_6f75_6e64);
    let level_pool = [2u64, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 18, 20, 24, 30];
    let norm_pool = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49, 121];
    let disc_pool = [1u64, 3, 4, 8, 23, 81, 257, 1000003];
    let c_pool = [1i64, 1, 2, 3, 10, 100];
    let slack = Rational::new(1.into(), num_bigint::BigInt::from(2u32).pow(40));
    let mut all_ok = true;
    let mut detail = String::from("50 seeded inputs, 4 bound flavours each");
    for idx in 0..50 {
        let n = level_pool[rng.gen_range(0..level_pool.len())];
        let d0 = rng.gen_range(1..=5u64);
        let count = rng.gen_range(0..=3usize);
        let mut norms: Vec<u64> = (0..count)
            .map(|_| norm_pool[rng.gen_range(0..norm_pool.len())])
            .collect();
        norms.sort_unstable();
        let s0 = rng.gen_range(count.max(1) as u64..=5);
        let disc = disc_pool[rng.gen_range(0..disc_pool.len())];
        let c = rational(c_pool[rng.gen_range(0..c_pool.len())], 1);
        let field = FieldData::new(d0, disc, s0, norms)?;
        let eval = |bits: usize| -> Result<Vec<Rational>> {
            let mut cx = RealCtx::new(bits)?;
            let mut flags = Flags::new();
            let ext = extension_estimates(&field, n, &mut flags, &mut cx)?;
            let constants = Constants {
                c_baker: c.clone(),
                c_siegel: rational(1, 1),
                c_hp: rational(1, 1),
                preset_unit: true,
            };
            let rb = s_regulator_bounds(
                ext.d,
                &ext.log_disc,
                &ext.log_norm_prod,
                &constants.c_siegel,
                &mut cx,
            );
            let values = [
                theorem1_log(n, &c, &mut flags, &mut cx),
                theorem2_log(&field, n, &c, &mut flags, &mut cx),
                pipeline_parts(&field, &ext, n, &rb.upper, &constants, &mut cx).h_log,
                lambda_one_log(s0, n, &mut cx),
            ];
            Ok(values
                .iter()
                .map(|v| bf_to_rational(v.hi()).expect("finite"))
                .collect())
        };
        let work = eval(p_work)?;
        let reference = eval(p_ref)?;
        for (flavour, (w, r)) in work.iter().zip(reference.iter()).enumerate() {
            let dominates = w >= r;
            let close = (w - r).abs() <= (r * &slack).abs();
            if !(dominates && close) {
                all_ok = false;
                detail = format!(
                    "input {idx} flavour {flavour}: work {w} vs reference {r}"
                );
            }
        }
    }
    Ok(vec![CheckResult::new(
        "bounds-oracle/upward-rounding-dominates-4x-precision",
        all_ok,
        detail,
    )])
}
