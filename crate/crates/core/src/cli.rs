//! Config parsing and the three command entry points (bound, inspect,
//! verify). Reports are JSON with sorted keys throughout, so identical
//! configs produce byte-identical output.

use std::path::Path;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    extension_estimates, lambda_one_bound, pipeline_bound, s_regulator_bounds, theorem1_bound,
    theorem2_bound, theorem3_bound, Attestation, BoundReport, Constants, FieldData, Flags,
};
use crate::error::{Error, Result};
use crate::interval::RealCtx;
use crate::modgroup::{Subgroup, GL2, LEVEL_CAP};
use crate::numtheory::{prime_power, rational, Rational, TorsionPoint};
use crate::qseries::{point_expansion, CycField};
use crate::verify::{run_suite, CheckResult, SuiteOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// A rational constant in the config: a plain integer or "num/den" text.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

impl RationalSpec {
    fn to_rational(&self) -> Result<Rational> {
        let r = match self {
            RationalSpec::Int(v) => rational(*v, 1),
            RationalSpec::Text(s) => Rational::from_str(s.trim())
                .map_err(|e| Error::InvalidInput(format!("bad rational {s:?}: {e}")))?,
        };
        Ok(r)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldConfig {
    pub d0: u64,
    pub disc_abs: u64,
    pub s0: u64,
    pub finite_place_norms: Vec<u64>,
    /// Largest underlying prime of the listed norms; checked when present.
    pub p: Option<u64>,
}

impl Default for FieldConfig {
    fn default() -> FieldConfig {
        FieldConfig {
            d0: 1,
            disc_abs: 1,
            s0: 1,
            finite_place_norms: Vec::new(),
            p: None,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConstantsConfig {
    pub c_baker: Option<RationalSpec>,
    pub c_siegel: Option<RationalSpec>,
    pub c_hp: Option<RationalSpec>,
    /// "unit" pins every constant to 1 and marks reports as structural.
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptionsConfig {
    pub precision_bits: usize,
    /// Series truncation in 1/(12 N^2) exponent units (12 N^2 = one full
    /// power of q); per-command defaults apply when absent.
    pub truncation_terms: Option<i64>,
    pub group_cap: u32,
}

impl Default for OptionsConfig {
    fn default() -> OptionsConfig {
        OptionsConfig {
            precision_bits: 256,
            truncation_terms: None,
            group_cap: LEVEL_CAP,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub level: u32,
    /// 2x2 integer matrices generating the subgroup mod level.
    #[serde(default)]
    pub generators: Option<Vec<[[i64; 2]; 2]>>,
    /// Accept nu_infty >= 3 without generators (the caller certifies it).
    #[serde(default)]
    pub nu_infty_attested: bool,
    /// The base field sits inside the level-N cyclotomic field.
    #[serde(default)]
    pub k0_in_cyclotomic: bool,
    #[serde(default)]
    pub field: FieldConfig,
    #[serde(default)]
    pub constants: ConstantsConfig,
    #[serde(default)]
    pub options: OptionsConfig,
    #[serde(skip)]
    raw: serde_json::Value,
}

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config> {
        let raw: serde_json::Value = serde_json::from_str(text)?;
        let mut cfg: Config = serde_json::from_str(text)?;
        cfg.raw = raw;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        Config::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.level < 2 {
            return Err(Error::InvalidInput("the level must be at least 2".into()));
        }
        if self.options.precision_bits < 64 {
            return Err(Error::InvalidInput(
                "precision_bits must be at least 64".into(),
            ));
        }
        if self.options.precision_bits > 16384 {
            return Err(Error::ResourceCap(
                "precision_bits is capped at 16384".into(),
            ));
        }
        if let Some(t) = self.options.truncation_terms {
            if t < 1 {
                return Err(Error::InvalidInput(
                    "truncation_terms must be positive".into(),
                ));
            }
        }
        self.field_data()?;
        self.constants()?;
        Ok(())
    }

    pub fn field_data(&self) -> Result<FieldData> {
        let f = FieldData::new(
            self.field.d0,
            self.field.disc_abs,
            self.field.s0,
            self.field.finite_place_norms.clone(),
        )?;
        if let Some(p) = self.field.p {
            if p != f.p {
                return Err(Error::InvalidInput(format!(
                    "field.p = {p} disagrees with the listed norms (largest underlying prime {})",
                    f.p
                )));
            }
        }
        Ok(f)
    }

    pub fn constants(&self) -> Result<Constants> {
        let c = &self.constants;
        let parse = |v: &Option<RationalSpec>| -> Result<Option<Rational>> {
            v.as_ref().map(|s| s.to_rational()).transpose()
        };
        let (cb, cs, ch) = (parse(&c.c_baker)?, parse(&c.c_siegel)?, parse(&c.c_hp)?);
        match c.preset.as_deref() {
            Some("unit") => {
                for given in [&cb, &cs, &ch].into_iter().flatten() {
                    if !given.is_one() {
                        return Err(Error::InvalidInput(
                            "preset \"unit\" pins every constant to 1; remove the explicit values or drop the preset".into(),
                        ));
                    }
                }
                Ok(Constants::unit())
            }
            Some(other) => Err(Error::InvalidInput(format!(
                "unknown constants preset {other:?} (only \"unit\" is defined)"
            ))),
            None => {
                if cb.is_none() && cs.is_none() && ch.is_none() {
                    Ok(Constants::unit())
                } else {
                    Constants::custom(
                        cb.unwrap_or_else(|| rational(1, 1)),
                        cs.unwrap_or_else(|| rational(1, 1)),
                        ch.unwrap_or_else(|| rational(1, 1)),
                    )
                }
            }
        }
    }

    pub fn generator_matrices(&self) -> Result<Option<Vec<GL2>>> {
        match &self.generators {
            None => Ok(None),
            Some(ms) => {
                let out: Result<Vec<GL2>> = ms
                    .iter()
                    .map(|m| GL2::new(self.level, [m[0][0], m[0][1], m[1][0], m[1][1]]))
                    .collect();
                Ok(Some(out?))
            }
        }
    }

    pub fn subgroup(&self) -> Result<Option<Subgroup>> {
        match self.generator_matrices()? {
            None => Ok(None),
            Some(gens) => Ok(Some(Subgroup::new(
                self.level,
                &gens,
                self.options.group_cap,
            )?)),
        }
    }

    /// Truncation in exponent units, defaulting to one full power of q.
    pub fn trunc_units(&self) -> i64 {
        let n = self.level as i64;
        self.options.truncation_terms.unwrap_or(12 * n * n)
    }

    fn echo(&self) -> serde_json::Value {
        self.raw.clone()
    }
}

/// A titled plain-text section of an inspect report.
#[derive(Debug, Clone, Serialize)]
pub struct Listing {
    pub title: String,
    pub body: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub listings: Vec<Listing>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

impl Report {
    fn new(cfg: &Config, command: String) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "jbound".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            config: cfg.echo(),
            notes: Vec::new(),
            bounds: Vec::new(),
            listings: Vec::new(),
            checks: Vec::new(),
            passed: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Compute the requested bound reports. Selector: "1", "2", "3",
/// "pipeline", "lambda1", or "all". Prime-power levels route the
/// single-theorem selectors 1 and 2 to the raised-level bound.
pub fn cmd_bound(cfg: &Config, theorem: &str) -> Result<Report> {
    let n = cfg.level as u64;
    let constants = cfg.constants()?;
    let field = cfg.field_data()?;
    let mut report = Report::new(cfg, format!("bound --theorem {theorem}"));

    match cfg.subgroup()? {
        Some(group) => {
            let nu = group.nu_infty();
            if nu < 3 {
                return Err(Error::InvalidInput(format!(
                    "the configured curve has {nu} cusp(s); the height-bound method needs at least 3"
                )));
            }
            report
                .notes
                .push(format!("nu_infty = {nu}, computed from the generators"));
        }
        None => {
            if !cfg.nu_infty_attested {
                return Err(Error::InvalidInput(
                    "provide generators (so nu_infty can be computed) or set nu_infty_attested"
                        .into(),
                ));
            }
            report
                .notes
                .push("nu_infty >= 3 attested by the config; no generators given".into());
        }
    }

    let attest = Attestation {
        nu_infty_ge_3: true,
        k0_in_cyclotomic: cfg.k0_in_cyclotomic,
        s0_infinite_only: field.finite_norms.is_empty(),
    };
    let mut cx = RealCtx::new(cfg.options.precision_bits)?;
    let is_prime_power = prime_power(n).is_some();
    let route_note =
        "prime-power level: single-theorem bounds route through the raised composite level";

    let push_pipeline = |report: &mut Report, cx: &mut RealCtx| -> Result<()> {
        let mut flags = Flags::new();
        let ext = extension_estimates(&field, n, &mut flags, cx)?;
        let rb = s_regulator_bounds(
            ext.d,
            &ext.log_disc,
            &ext.log_norm_prod,
            &constants.c_siegel,
            cx,
        );
        report.bounds.push(pipeline_bound(
            &field, &ext, n, &rb.upper, &constants, &attest, &flags, cx,
        )?);
        Ok(())
    };

    match theorem {
        "1" => {
            if is_prime_power {
                report.notes.push(route_note.into());
                report
                    .bounds
                    .push(theorem3_bound(&field, n, &constants, &attest, &mut cx)?);
            } else {
                if !(attest.k0_in_cyclotomic && attest.s0_infinite_only) {
                    return Err(Error::InvalidInput(
                        "the cyclotomic-field bound needs k0_in_cyclotomic and no finite places in S0".into(),
                    ));
                }
                report
                    .bounds
                    .push(theorem1_bound(n, &constants, &attest, &mut cx)?);
            }
        }
        "2" => {
            if is_prime_power {
                report.notes.push(route_note.into());
                report
                    .bounds
                    .push(theorem3_bound(&field, n, &constants, &attest, &mut cx)?);
            } else {
                report
                    .bounds
                    .push(theorem2_bound(&field, n, &constants, &attest, &mut cx)?);
            }
        }
        "3" => {
            report
                .bounds
                .push(theorem3_bound(&field, n, &constants, &attest, &mut cx)?);
        }
        "pipeline" => push_pipeline(&mut report, &mut cx)?,
        "lambda1" => {
            report
                .bounds
                .push(lambda_one_bound(field.s0, n, &mut cx)?);
        }
        "all" => {
            if is_prime_power {
                report.notes.push(route_note.into());
                report
                    .bounds
                    .push(theorem3_bound(&field, n, &constants, &attest, &mut cx)?);
            } else {
                if attest.k0_in_cyclotomic && attest.s0_infinite_only {
                    report
                        .bounds
                        .push(theorem1_bound(n, &constants, &attest, &mut cx)?);
                } else {
                    report.notes.push(
                        "cyclotomic-field bound skipped: needs k0_in_cyclotomic and no finite places in S0"
                            .into(),
                    );
                }
                report
                    .bounds
                    .push(theorem2_bound(&field, n, &constants, &attest, &mut cx)?);
            }
            push_pipeline(&mut report, &mut cx)?;
            report
                .bounds
                .push(lambda_one_bound(field.s0, n, &mut cx)?);
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown theorem selector {other:?}; expected 1, 2, 3, pipeline, lambda1, or all"
            )));
        }
    }
    Ok(report)
}

fn require_group(cfg: &Config, what: &str) -> Result<Subgroup> {
    cfg.subgroup()?.ok_or_else(|| {
        Error::InvalidInput(format!("inspect --what {what} requires generator matrices"))
    })
}

/// Stable-ordered listings of the group-combinatorial data, or a single
/// expansion dump for --what siegel.
pub fn cmd_inspect(cfg: &Config, what: &str, point: Option<&str>) -> Result<Report> {
    let n = cfg.level;
    let mut report = Report::new(cfg, format!("inspect --what {what}"));
    match what {
        "orbits" => {
            let group = require_group(cfg, what)?;
            let orbits = group.orbits();
            let mut body = format!("{} orbit(s) on points of exact order {n}\n", orbits.len());
            for (i, o) in orbits.iter().enumerate() {
                let (k1, k2) = o.rep().numerators();
                body.push_str(&format!(
                    "orbit {i}: size {}, rep ({k1},{k2})/{n}, ell-sum {}\n",
                    o.len(),
                    o.ell_sum()
                ));
            }
            report.listings.push(Listing {
                title: format!("orbits of the level-{n} subgroup"),
                body,
            });
        }
        "cusps" => {
            let group = require_group(cfg, what)?;
            let cusps = group.cusps();
            let mut body = format!("{} cusp(s)\n", cusps.len());
            for (i, c) in cusps.iter().enumerate() {
                body.push_str(&format!(
                    "cusp {i}: width {}, coset size {}, infinite {}\n",
                    c.width,
                    c.coset_size,
                    if c.is_infinite() { "yes" } else { "no" }
                ));
            }
            report.listings.push(Listing {
                title: format!("cusps of the level-{n} curve"),
                body,
            });
        }
        "units" => {
            let group = require_group(cfg, what)?;
            let orbits = group.unit_orbits();
            let cusps = group.cusps();
            let matrix = group.divisor_matrix(&orbits, &cusps)?;
            let rank = group.divisor_rank()?;
            let mut body = format!(
                "{} unit orbit(s), {} cusp(s), divisor rank {rank}\n",
                orbits.len(),
                cusps.len()
            );
            for (i, (o, row)) in orbits.iter().zip(matrix.iter()).enumerate() {
                let (k1, k2) = o.rep().numerators();
                body.push_str(&format!(
                    "unit {i}: orbit rep ({k1},{k2})/{n}, size {}, ord {:?}\n",
                    o.len(),
                    row
                ));
            }
            report.listings.push(Listing {
                title: format!("modular-unit divisors at level {n}"),
                body,
            });
        }
        "siegel" => {
            let spec = point.ok_or_else(|| {
                Error::InvalidInput("inspect --what siegel requires --point \"k1,k2\"".into())
            })?;
            let (k1, k2) = parse_point(spec)?;
            let a = TorsionPoint::new(n, k1, k2)?;
            let f = CycField::for_level(n)?;
            let sc = point_expansion(&f, &a, cfg.trunc_units())?;
            let (c1, c2) = a.numerators();
            let body = format!(
                "point ({c1},{c2})/{n}, order {}\ngamma = {}\nq-order = {}/{} (exponent units)\nseries:\n{}",
                a.order(),
                sc.gamma().render(&f),
                sc.order_units(),
                12 * (n as i64) * (n as i64),
                sc.series().dump(&f)
            );
            report.listings.push(Listing {
                title: format!("expansion of the point ({c1},{c2}) at level {n}"),
                body,
            });
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown inspect target {other:?}; expected orbits, cusps, units, or siegel"
            )));
        }
    }
    Ok(report)
}

fn parse_point(spec: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "bad point {spec:?}; expected \"k1,k2\""
        )));
    }
    let k1 = parts[0]
        .parse::<i64>()
        .map_err(|e| Error::InvalidInput(format!("bad point coordinate {:?}: {e}", parts[0])))?;
    let k2 = parts[1]
        .parse::<i64>()
        .map_err(|e| Error::InvalidInput(format!("bad point coordinate {:?}: {e}", parts[1])))?;
    Ok((k1, k2))
}

/// Run a verification suite and report per-check outcomes. The report's
/// `passed` field carries the aggregate verdict; the caller maps a false
/// verdict to a nonzero exit.
pub fn cmd_verify(cfg: &Config, suite: &str) -> Result<Report> {
    let mut report = Report::new(cfg, format!("verify --suite {suite}"));
    let generators = match cfg.generator_matrices()? {
        Some(g) => g,
        None => {
            report.notes.push(
                "no generators given; group checks use the principal curve of this level".into(),
            );
            Vec::new()
        }
    };
    let n = cfg.level as i64;
    let opt = SuiteOptions {
        level: cfg.level,
        generators,
        precision_bits: cfg.options.precision_bits,
        terms: (cfg.trunc_units() / (12 * n)).clamp(8, 400),
        group_cap: cfg.options.group_cap,
    };
    let checks = run_suite(suite, &opt)?;
    report.passed = Some(checks.iter().all(|c| c.passed));
    report.checks = checks;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(extra: &str) -> String {
        format!(
            r#"{{
  "level": 6,
  "generators": [[[1, 1], [0, 1]], [[-1, 0], [0, -1]]]{}
}}"#,
            extra
        )
    }

    #[test]
    fn config_defaults_fill_in() {
        let cfg = Config::from_json(&base_config("")).unwrap();
        assert_eq!(cfg.schema_version, 1);
        assert_eq!(cfg.options.precision_bits, 256);
        assert_eq!(cfg.options.group_cap, LEVEL_CAP);
        assert_eq!(cfg.trunc_units(), 432);
        let field = cfg.field_data().unwrap();
        assert_eq!((field.d0, field.abs_disc, field.s0), (1, 1, 1));
        assert!(cfg.constants().unwrap().preset_unit);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Config::from_json(r#"{"level": 6, "levle": 7}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn preset_unit_conflicts_are_rejected() {
        let text = r#"{"level": 6, "nu_infty_attested": true,
            "constants": {"preset": "unit", "c_baker": 3}}"#;
        assert!(Config::from_json(text).is_err());
        let ok = r#"{"level": 6, "nu_infty_attested": true,
            "constants": {"preset": "unit", "c_baker": 1}}"#;
        assert!(Config::from_json(ok).unwrap().constants().unwrap().preset_unit);
    }

    #[test]
    fn custom_constants_parse_rationals() {
        let text = r#"{"level": 6, "nu_infty_attested": true,
            "constants": {"c_baker": "7/2"}}"#;
        let c = Config::from_json(text).unwrap().constants().unwrap();
        assert_eq!(c.c_baker, rational(7, 2));
        assert!(!c.preset_unit);
    }

    #[test]
    fn field_p_mismatch_is_rejected() {
        let text = r#"{"level": 6, "nu_infty_attested": true,
            "field": {"d0": 1, "disc_abs": 1, "s0": 2, "finite_place_norms": [4, 9], "p": 2}}"#;
        assert!(Config::from_json(text).is_err());
        let ok = r#"{"level": 6, "nu_infty_attested": true,
            "field": {"d0": 1, "disc_abs": 1, "s0": 2, "finite_place_norms": [4, 9], "p": 3}}"#;
        assert!(Config::from_json(ok).is_ok());
    }

    #[test]
    fn bound_requires_attestation_or_generators() {
        let cfg = Config::from_json(r#"{"level": 6}"#).unwrap();
        let err = cmd_bound(&cfg, "2").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let cfg = Config::from_json(r#"{"level": 6, "nu_infty_attested": true}"#).unwrap();
        let report = cmd_bound(&cfg, "2").unwrap();
        assert_eq!(report.bounds.len(), 1);
        assert_eq!(report.bounds[0].theorem, "main2");
    }

    #[test]
    fn bound_rejects_few_cusps() {
        // Full GL2 at level 2: a single orbit and a single cusp.
        let text = r#"{"level": 2,
            "generators": [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]}"#;
        let cfg = Config::from_json(text).unwrap();
        let err = cmd_bound(&cfg, "2").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bound_routes_prime_powers() {
        let cfg = Config::from_json(r#"{"level": 8, "nu_infty_attested": true}"#).unwrap();
        let report = cmd_bound(&cfg, "2").unwrap();
        assert!(report.notes.iter().any(|s| s.contains("prime-power")));
        assert!(report.bounds[0]
            .notes
            .iter()
            .any(|s| s.contains("level raised")));
        assert_eq!(report.bounds[0].inputs["m_raised"], "24");
    }

    #[test]
    fn bound_theorem_all_emits_every_applicable_report() {
        let text = r#"{"level": 6, "nu_infty_attested": true, "k0_in_cyclotomic": true}"#;
        let cfg = Config::from_json(text).unwrap();
        let report = cmd_bound(&cfg, "all").unwrap();
        let names: Vec<&str> = report.bounds.iter().map(|b| b.theorem.as_str()).collect();
        assert_eq!(names, ["main1", "main2", "pipeline", "lambda_one"]);
    }

    #[test]
    fn bound_theorem1_needs_the_flags() {
        let cfg = Config::from_json(r#"{"level": 6, "nu_infty_attested": true}"#).unwrap();
        assert!(cmd_bound(&cfg, "1").is_err());
        let text = r#"{"level": 6, "nu_infty_attested": true, "k0_in_cyclotomic": true}"#;
        let cfg = Config::from_json(text).unwrap();
        assert!(cmd_bound(&cfg, "1").is_ok());
    }

    #[test]
    fn inspect_lists_orbits_and_cusps() {
        let cfg = Config::from_json(&base_config("")).unwrap();
        let report = cmd_inspect(&cfg, "cusps", None).unwrap();
        assert_eq!(report.listings.len(), 1);
        assert!(report.listings[0].body.starts_with("4 cusp(s)"));
        let report = cmd_inspect(&cfg, "units", None).unwrap();
        assert!(report.listings[0].body.contains("divisor rank 3"));
    }

    #[test]
    fn inspect_siegel_dumps_a_series() {
        let cfg = Config::from_json(r#"{"level": 2}"#).unwrap();
        let report = cmd_inspect(&cfg, "siegel", Some("0,1")).unwrap();
        let body = &report.listings[0].body;
        assert!(body.contains("q-order = 4/48"), "{body}");
        assert!(cmd_inspect(&cfg, "siegel", None).is_err());
    }

    #[test]
    fn verify_reports_aggregate_verdict() {
        let cfg = Config::from_json(r#"{"level": 6}"#).unwrap();
        let report = cmd_verify(&cfg, "divisors").unwrap();
        assert_eq!(report.passed, Some(true));
        assert_eq!(report.checks.len(), 3);
        assert!(report.notes[0].contains("principal curve"));
    }

    #[test]
    fn reports_are_byte_deterministic() {
        let cfg = Config::from_json(&base_config("")).unwrap();
        let a = cmd_inspect(&cfg, "orbits", None).unwrap().to_json();
        let b = cmd_inspect(&cfg, "orbits", None).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }
}
