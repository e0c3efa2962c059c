//! Command-line interface to the Iwasawa invariant toolkit.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a precision or
//! search budget is exhausted. The class-number cache directory defaults
//! to ./cache and is overridden by IWASAWA_CACHE_DIR.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use iwasawa_core::artin::{
    build_icosahedral_group, icosahedral_checklist, snap_trace, CertifyOptions,
    DihedralS3Rep, SexticClassNumbers,
};
use iwasawa_core::cubicfield::{
    p_rational_cubic, p_rational_imquad, parse::parse_cubic, CubicError, CubicField, PRationality,
};
use iwasawa_core::invariants::{
    gold_test, normalized_regulator_is_unit, GoldResult, InvariantError,
};
use iwasawa_core::lambda::{
    euler_characteristic, vanishing_order, weierstrass_invariants, weierstrass_prepare,
    CharSeries, CharSeriesJson, EulerChar, LambdaError,
};
use iwasawa_core::padic::PadicError;
use iwasawa_core::quadfield::{ClassNumberCache, ImagQuadField, QuadError};
use iwasawa_core::survey::{heuristic_values, scan_lambda, scan_t, ScanMode, SurveyReport};

#[derive(Parser)]
#[command(
    name = "iwasawa",
    version,
    about = "Iwasawa invariants of imaginary quadratic and S3 fields: Gold's criterion, \
             p-adic regulators, p-rationality, and dihedral Artin prime surveys"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanOutput {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Class number and unit data of an imaginary quadratic field.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Gold's trace criterion at a split prime, with the regulator route.
    Gold {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        p: u64,
    },
    /// Classify lambda_p over a prime range.
    LambdaScan {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        pmax: u64,
        #[command(flatten)]
        output: ScanOutput,
    },
    /// p-rationality of quad:D or cubic:"POLY".
    Prational {
        #[arg(long)]
        field: String,
        #[arg(long)]
        p: u64,
    },
    /// S(rho)/T(rho) verdicts for the dihedral representation of a cubic.
    ArtinScan {
        #[arg(long)]
        cubic: String,
        #[arg(long)]
        pmax: u64,
        /// Assume the sextic class number is coprime to p when unknown
        /// (affected rows are stained).
        #[arg(long)]
        assume_h: bool,
        #[command(flatten)]
        output: ScanOutput,
    },
    /// Build the A5 rotation group and report the vanishing checklist.
    IcosahedralCheck {
        #[arg(long, default_value = "7")]
        p: u64,
    },
    /// Density heuristic comparators at a prime.
    Heuristics {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "0")]
        r: u32,
        #[arg(long, default_value = "1")]
        k: u32,
        #[arg(long, default_value = "2")]
        n: u32,
        #[arg(long, default_value = "64")]
        t_max: u32,
    },
    /// Weierstrass/Euler analysis of a serialized power series.
    Charseries {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Exhausted(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Exhausted(m) => write!(f, "exhausted: {m}"),
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::SearchExhausted(m) => CliError::Exhausted(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Precision(p) => CliError::Exhausted(p.to_string()),
            InvariantError::Quad(QuadError::SearchExhausted(m)) => CliError::Exhausted(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<CubicError> for CliError {
    fn from(e: CubicError) -> Self {
        match e {
            CubicError::SearchExhausted(m) => CliError::Exhausted(m),
            CubicError::Precision(p) => CliError::Exhausted(p.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<LambdaError> for CliError {
    fn from(e: LambdaError) -> Self {
        match e {
            LambdaError::PrecisionExhausted(m) => CliError::Exhausted(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::PrecisionExhausted(m) => CliError::Exhausted(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn cache_dir() -> PathBuf {
    std::env::var_os("IWASAWA_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("cache"))
}

fn emit_report(report: &SurveyReport, output: &ScanOutput) -> Result<(), CliError> {
    let text = match output.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classgroup { disc } => {
            let field = ImagQuadField::new(disc)?;
            let cache = ClassNumberCache::new(&cache_dir());
            let h = cache.get_or_compute(disc)?;
            field.class_number_with(h);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "discriminant": disc,
                    "class_number": h,
                    "unit_count": field.unit_count(),
                }))
                .unwrap()
            );
            Ok(())
        }
        Command::Gold { disc, p } => {
            let field = ImagQuadField::new(disc)?;
            let test = gold_test(&field, p)?;
            let reg_unit = normalized_regulator_is_unit(&field, p)?;
            let result = match test.result {
                GoldResult::LambdaEqOne => "lambda_eq_1",
                GoldResult::LambdaGtOne => "lambda_gt_1",
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "discriminant": disc,
                    "p": p,
                    "result": result,
                    "r": test.r,
                    "alpha": { "x": test.alpha.x.to_string(), "y": test.alpha.y.to_string() },
                    "trace": test.alpha.trace().to_string(),
                    "congruence_value_mod_p2": test.congruence_value.to_string(),
                    "normalized_regulator_is_unit": reg_unit,
                    "routes_agree": reg_unit == (test.result == GoldResult::LambdaEqOne),
                }))
                .unwrap()
            );
            Ok(())
        }
        Command::LambdaScan { disc, pmax, output } => {
            if pmax > 10_000_000 {
                return Err(CliError::Invalid("pmax exceeds 10^7".into()));
            }
            let field = ImagQuadField::new(disc)?;
            let cache = ClassNumberCache::new(&cache_dir());
            let report = scan_lambda(&field, pmax, ScanMode::Parallel, Some(&cache));
            emit_report(&report, &output)
        }
        Command::Prational { field, p } => {
            let (kind, verdict) = if let Some(d) = field.strip_prefix("quad:") {
                let d: i64 = d
                    .parse()
                    .map_err(|e| CliError::Invalid(format!("bad discriminant {d}: {e}")))?;
                let _ = ImagQuadField::new(d)?;
                ("quad", p_rational_imquad(d, p)?)
            } else if let Some(poly) = field.strip_prefix("cubic:") {
                let poly = parse_cubic(poly).map_err(|e| CliError::Invalid(e.to_string()))?;
                let f = CubicField::new(poly)?;
                if p < 5 {
                    return Err(CliError::Invalid("p-rationality tests require p >= 5".into()));
                }
                ("cubic", p_rational_cubic(&f, p)?)
            } else {
                return Err(CliError::Invalid(
                    "field must be quad:D or cubic:\"POLY\"".into(),
                ));
            };
            let token = match verdict {
                PRationality::Yes => "yes",
                PRationality::No => "no",
                PRationality::Unknown => "unknown",
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "kind": kind,
                    "field": field,
                    "p": p,
                    "p_rational": token,
                }))
                .unwrap()
            );
            Ok(())
        }
        Command::ArtinScan { cubic, pmax, assume_h, output } => {
            if pmax > 1_000_000 {
                return Err(CliError::Invalid("pmax exceeds 10^6".into()));
            }
            let poly = parse_cubic(&cubic).map_err(|e| CliError::Invalid(e.to_string()))?;
            let field = CubicField::new(poly)?;
            let rep = DihedralS3Rep::new(field).map_err(|e| CliError::Invalid(e.to_string()))?;
            let opts = CertifyOptions {
                assume_h,
                sextic_h: SexticClassNumbers::with_cache_dir(&cache_dir()),
            };
            let report = scan_t(&rep, pmax, &opts, ScanMode::Parallel);
            emit_report(&report, &output)
        }
        Command::IcosahedralCheck { p } => {
            let group = build_icosahedral_group().map_err(|e| CliError::Invalid(e.to_string()))?;
            let mut traces = std::collections::BTreeMap::new();
            for g in &group {
                let t = snap_trace(g.trace()).map_err(|e| CliError::Invalid(e.to_string()))?;
                *traces.entry(format!("{t:.6}")).or_insert(0u32) += 1;
            }
            let checklist =
                icosahedral_checklist(p).map_err(|e| CliError::Invalid(e.to_string()))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "group_order": group.len(),
                    "trace_multiset": traces,
                    "checklist": checklist,
                }))
                .unwrap()
            );
            Ok(())
        }
        Command::Heuristics { p, r, k, n, t_max } => {
            if !iwasawa_core::arith::is_prime_u64(p) {
                return Err(CliError::Invalid(format!("{p} is not prime")));
            }
            if k > n {
                return Err(CliError::Invalid("rank heuristics require k <= n".into()));
            }
            if t_max < 30 {
                return Err(CliError::Invalid("t_max must be at least 30".into()));
            }
            let report = heuristic_values(p, r, k, n, t_max);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Charseries { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", file.display())))?;
            let parsed: CharSeriesJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Invalid(format!("bad series file: {e}")))?;
            let series = CharSeries::from_json(&parsed)?;
            let (mu, lambda) = weierstrass_invariants(&series)?;
            let chi = match euler_characteristic(&series) {
                Ok(EulerChar::Finite(v)) => json!(v.to_string()),
                Ok(EulerChar::Undefined) => json!("undefined"),
                Err(e) => return Err(e.into()),
            };
            let order = vanishing_order(&series).ok();
            let prepared = weierstrass_prepare(&series).ok().map(|(mu, g, u)| {
                json!({
                    "mu": mu,
                    "distinguished": g.to_json(),
                    "unit_prefix": u.to_json(),
                })
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "mu": mu,
                    "lambda": lambda,
                    "vanishing_order": order,
                    "euler_characteristic": chi,
                    "preparation": prepared,
                }))
                .unwrap()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Invalid(_) => ExitCode::from(2),
                CliError::Exhausted(_) => ExitCode::from(3),
            }
        }
    }
}

// Re-exported for the integration tests.
#[cfg(test)]
mod smoke {
    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        super::Cli::command().debug_assert();
    }
}
