//! Cross-check of every bound formula against the frozen high-precision
//! reference corpus in tests/data/bounds_reference.json (generated by an
//! independent straight-line script; no code is shared with the library).
//!
//! For each of the 50 cases and each bound flavour, the certified upper
//! endpoint must sit within 1e-12 relative of the 50-digit reference and
//! must never fall below it.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Deserialize;

use jbound::bounds::{
    delta_quantity, extension_estimates, lambda_one_log, pipeline_parts, s_regulator_bounds,
    theorem1_log, theorem2_log, trivial_regime_log, Constants, FieldData, Flags,
};
use jbound::interval::{bf_to_rational, Interval, RealCtx};
use jbound::numtheory::{rational, raise_level, Rational};

#[derive(Deserialize)]
struct RefDoc {
    goldens: BTreeMap<String, String>,
    cases: Vec<RefCase>,
}

#[derive(Deserialize)]
struct RefCase {
    idx: u32,
    n: u64,
    d0: u64,
    s0: u64,
    abs_disc: u64,
    finite_norms: Vec<u64>,
    p: u64,
    c_baker: i64,
    m_raised: Option<u64>,
    log_bounds: BTreeMap<String, String>,
    flags: Vec<String>,
}

fn load() -> RefDoc {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/bounds_reference.json");
    serde_json::from_str(&fs::read_to_string(path).expect("reference data present"))
        .expect("reference data parses")
}

fn parse_decimal(s: &str) -> Rational {
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().expect("decimal digits");
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = Rational::new(num, den);
    if neg {
        -r
    } else {
        r
    }
}

fn pow10_recip(k: u32) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(10u32).pow(k))
}

/// value.hi within 1e-12 relative of the reference and never below it
/// (modulo the reference's own 50-digit print quantization).
fn check(what: &str, idx: u32, value: &Interval, reference: &Rational) {
    let hi = bf_to_rational(value.hi()).expect("finite");
    let lo = bf_to_rational(value.lo()).expect("finite");
    let scale = reference.abs();
    let err = (&hi - reference).abs();
    assert!(
        err <= &scale * pow10_recip(12),
        "case {idx} {what}: relative error {} exceeds 1e-12",
        err / scale
    );
    assert!(
        &hi + &scale * pow10_recip(45) >= *reference,
        "case {idx} {what}: certified value fell below the reference"
    );
    assert!(
        (&hi - &lo).abs() <= &scale * pow10_recip(30),
        "case {idx} {what}: enclosure unexpectedly wide"
    );
}

#[test]
fn corpus_matches_reference() {
    let doc = load();
    assert_eq!(doc.cases.len(), 50);
    for case in &doc.cases {
        let mut cx = RealCtx::new(256).unwrap();
        let field = FieldData::new(
            case.d0,
            case.abs_disc,
            case.s0,
            case.finite_norms.clone(),
        )
        .unwrap();
        assert_eq!(field.p, case.p, "case {}: p mismatch", case.idx);
        let c = rational(case.c_baker, 1);
        let mut flags = Flags::new();
        let ext = extension_estimates(&field, case.n, &mut flags, &mut cx).unwrap();

        let v = theorem1_log(case.n, &c, &mut flags, &mut cx);
        check(
            "theorem1",
            case.idx,
            &v,
            &parse_decimal(&case.log_bounds["theorem1"]),
        );

        let v = theorem2_log(&field, case.n, &c, &mut flags, &mut cx);
        check(
            "theorem2",
            case.idx,
            &v,
            &parse_decimal(&case.log_bounds["theorem2"]),
        );

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
        let parts = pipeline_parts(&field, &ext, case.n, &rb.upper, &constants, &mut cx);
        check(
            "pipeline",
            case.idx,
            &parts.h_log,
            &parse_decimal(&case.log_bounds["pipeline"]),
        );

        let v = lambda_one_log(case.s0, case.n, &mut cx);
        check(
            "lambda_one",
            case.idx,
            &v,
            &parse_decimal(&case.log_bounds["lambda_one"]),
        );

        let v = trivial_regime_log(ext.s, case.n, &mut cx);
        check(
            "trivial_regime",
            case.idx,
            &v,
            &parse_decimal(&case.log_bounds["trivial_regime"]),
        );

        if let Some(m) = case.m_raised {
            assert_eq!(raise_level(case.n).unwrap(), m, "case {}", case.idx);
            let v = theorem1_log(m, &c, &mut flags, &mut cx);
            check(
                "theorem3_shape1",
                case.idx,
                &v,
                &parse_decimal(&case.log_bounds["theorem3_shape1"]),
            );
            let v = theorem2_log(&field, m, &c, &mut flags, &mut cx);
            check(
                "theorem3_shape2",
                case.idx,
                &v,
                &parse_decimal(&case.log_bounds["theorem3_shape2"]),
            );
        } else {
            assert!(
                !case.log_bounds.contains_key("theorem3_shape1"),
                "case {}",
                case.idx
            );
        }

        let got: Vec<String> = flags.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, case.flags, "case {}: flag mismatch", case.idx);
    }
}

#[test]
fn goldens_match_reference() {
    let doc = load();
    let mut cx = RealCtx::new(256).unwrap();
    let one = rational(1, 1);
    let mut flags = Flags::new();
    let ln10 = Interval::ln_10(&mut cx);

    let t1 = theorem1_log(6, &one, &mut flags, &mut cx).div(&ln10, &mut cx);
    check(
        "theorem1_n6_c1_log10",
        0,
        &t1,
        &parse_decimal(&doc.goldens["theorem1_n6_c1_log10"]),
    );

    let q = FieldData::rationals();
    let t2 = theorem2_log(&q, 6, &one, &mut flags, &mut cx).div(&ln10, &mut cx);
    check(
        "theorem2_q_sinf_n6_log10",
        0,
        &t2,
        &parse_decimal(&doc.goldens["theorem2_q_sinf_n6_log10"]),
    );

    let delta = delta_quantity(&q, 6, &mut flags, &mut cx).exp(&mut cx);
    check(
        "delta_q_sinf_n6",
        0,
        &delta,
        &parse_decimal(&doc.goldens["delta_q_sinf_n6"]),
    );

    let lam = lambda_one_log(1, 6, &mut cx);
    check(
        "lambda_one_n6_s1_log",
        0,
        &lam,
        &parse_decimal(&doc.goldens["lambda_one_n6_s1_log"]),
    );

    assert!(flags.is_empty(), "golden inputs must not trip any floor");
}
