use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use jbound::cli::{cmd_bound, cmd_inspect, cmd_verify, Config, Report};
use jbound::Result;

/// Certified height bounds and expansion checks for modular curves.
///
/// Exit codes: 0 success, 1 check failure, 2 invalid input, 3 resource cap.
#[derive(Parser)]
#[command(name = "jbound", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate height-bound reports for the configured curve and field.
    Bound {
        /// JSON config path.
        #[arg(long)]
        config: PathBuf,
        /// 1, 2, 3, pipeline, lambda1, or all.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Override options.precision_bits.
        #[arg(long)]
        precision: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List orbits, cusps, or unit divisors, or dump one expansion.
    Inspect {
        /// JSON config path.
        #[arg(long)]
        config: PathBuf,
        /// orbits, cusps, units, or siegel.
        #[arg(long)]
        what: String,
        /// Point "k1,k2" (required for --what siegel).
        #[arg(long)]
        point: Option<String>,
        /// Truncation override in 1/(12 N^2) exponent units.
        #[arg(long)]
        terms: Option<i64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report per-check outcomes.
    Verify {
        /// JSON config path.
        #[arg(long)]
        config: PathBuf,
        /// product, coeff-bounds, numeric, divisors, bounds-oracle, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Override options.precision_bits.
        #[arg(long)]
        precision: Option<usize>,
        /// Truncation override in 1/(12 N^2) exponent units.
        #[arg(long)]
        terms: Option<i64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn load(
    config: &Path,
    precision: Option<usize>,
    terms: Option<i64>,
) -> Result<Config> {
    let mut cfg = Config::from_path(config)?;
    if let Some(p) = precision {
        cfg.options.precision_bits = p;
    }
    if let Some(t) = terms {
        cfg.options.truncation_terms = Some(t);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bound {
            config,
            theorem,
            precision,
            out,
        } => {
            let cfg = load(&config, precision, None)?;
            let report = cmd_bound(&cfg, &theorem)?;
            emit(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Inspect {
            config,
            what,
            point,
            terms,
            out,
        } => {
            let cfg = load(&config, None, terms)?;
            let report = cmd_inspect(&cfg, &what, point.as_deref())?;
            emit(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Verify {
            config,
            suite,
            precision,
            terms,
            out,
        } => {
            let cfg = load(&config, precision, terms)?;
            let report = cmd_verify(&cfg, &suite)?;
            emit(&report, out.as_deref())?;
            Ok(if report.passed == Some(false) { 1 } else { 0 })
        }
    }
}

fn emit(report: &Report, out: Option<&Path>) -> Result<()> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
