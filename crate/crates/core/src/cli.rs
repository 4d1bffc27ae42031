//! The `etawallis` command line.
//!
//! Exit codes: 0 success, 1 verification failure or an error during the
//! computation (reported as a JSON object on stderr), 2 invalid invocation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constants::GlaisherRoute;
use crate::error::{Error, Result};
use crate::numeric::{PrecisionContext, Real};
use crate::products::{
    closed_form_target, convergence_study, eta_prime_best, for_each_pair, series_target, Case,
};
use crate::report::{
    run_constants, run_verify, write_constants, write_order, write_product, write_series,
    write_verification, Format, OrderRecord, ProductRecord, RowRecord, SeriesRecord,
    TargetRecord, VerificationRecord,
};
use crate::series::{
    default_order, eta_accelerated, eta_averaged, eta_direct, eta_prime_alternating_accelerated,
    eta_prime_extrapolated, eta_prime_grouped,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "etawallis",
    version,
    about = "Dirichlet eta, its derivative, and the generalized Wallis products"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Requested decimal digits (at least 10).
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// pi, ln 2, gamma, zeta(2), zeta'(2), ln A and A.
    Constants,
    /// eta(s).
    Eta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Default: accelerated for s > 0, averaged otherwise.
        #[arg(long, value_enum)]
        method: Option<EtaMethod>,
        /// Terms, brackets or acceleration order, depending on the method.
        #[arg(long)]
        terms: Option<u64>,
    },
    /// eta'(s).
    EtaPrime {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Default: accelerated for s >= 1, richardson otherwise.
        #[arg(long, value_enum)]
        method: Option<EtaPrimeMethod>,
        /// Brackets (grouped) or order (accelerated).
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        n_min: u64,
        #[arg(long, default_value_t = 6)]
        doublings: u32,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Partial products, one row per emitted pair of factors.
    Product {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1000)]
        pairs: u64,
        /// Emit every k-th pair (the last pair is always emitted).
        #[arg(long, default_value_t = 1)]
        every: u64,
        /// auto: closed form for s in {0, 1, 2}, none otherwise.
        #[arg(long, value_enum, default_value_t = TargetChoice::Auto)]
        target: TargetChoice,
    },
    /// Check the closed-form identities for s = 0, 1, 2.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyCase::All)]
        case: VerifyCase,
        /// Default per case: s0 1e-12, s1 1e-20, s2 1e-8.
        #[arg(long)]
        tolerance: Option<String>,
    },
    /// Empirical convergence order of the pair products.
    Order {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1000)]
        n_min: u64,
        #[arg(long, default_value_t = 3)]
        doublings: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EtaMethod {
    Direct,
    Averaged,
    Accelerated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EtaPrimeMethod {
    Grouped,
    Accelerated,
    Richardson,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetChoice {
    Auto,
    Closed,
    Series,
    None,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyCase {
    S0,
    S1,
    S2,
    All,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    let mut buffer = Vec::new();
    let result = execute(&cli, &mut buffer).and_then(|code| {
        match &cli.common.output {
            Some(path) => std::fs::write(path, &buffer)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
            None => stdout
                .write_all(&buffer)
                .map_err(|e| Error::Io(e.to_string()))?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let obj = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(stderr, "{obj}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn parse_s(s: &str, ctx: &PrecisionContext) -> Result<Real> {
    Real::parse(s, ctx)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let format = match cli.common.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
    };
    let digits = cli.common.digits;
    match &cli.command {
        Command::Constants => {
            let (record, _) = run_constants(digits)?;
            write_constants(&record, format, out)?;
        }
        Command::Eta { s, method, terms } => {
            let ctx = PrecisionContext::new(digits)?;
            let s = parse_s(s, &ctx)?;
            let method = method.unwrap_or(if s.is_positive() {
                EtaMethod::Accelerated
            } else {
                EtaMethod::Averaged
            });
            let res = match method {
                EtaMethod::Direct => eta_direct(&s, terms.unwrap_or(10_000), &ctx)?,
                EtaMethod::Averaged => eta_averaged(&s, terms.unwrap_or(10_000), &ctx)?,
                EtaMethod::Accelerated => {
                    eta_accelerated(&s, terms.unwrap_or_else(|| default_order(&ctx)), &ctx)?
                }
            };
            write_series(&SeriesRecord::new(&res, &ctx), format, out)?;
        }
        Command::EtaPrime {
            s,
            method,
            terms,
            n_min,
            doublings,
            levels,
        } => {
            let ctx = PrecisionContext::new(digits)?;
            let s = parse_s(s, &ctx)?;
            let res = match method {
                None => eta_prime_best(&s, &ctx)?,
                Some(EtaPrimeMethod::Grouped) => {
                    eta_prime_grouped(&s, terms.unwrap_or(1000), &ctx)?
                }
                Some(EtaPrimeMethod::Accelerated) => eta_prime_alternating_accelerated(
                    &s,
                    terms.unwrap_or_else(|| default_order(&ctx)),
                    &ctx,
                )?,
                Some(EtaPrimeMethod::Richardson) => {
                    eta_prime_extrapolated(&s, *n_min, *doublings, *levels, &ctx)?
                }
            };
            write_series(&SeriesRecord::new(&res, &ctx), format, out)?;
        }
        Command::Product {
            s,
            pairs,
            every,
            target,
        } => {
            let ctx = PrecisionContext::new(digits)?;
            let s_val = parse_s(s, &ctx)?;
            if s_val.is_negative() {
                return Err(Error::invalid("product needs s >= 0"));
            }
            if *pairs == 0 || *every == 0 {
                return Err(Error::invalid("--pairs and --every must be positive"));
            }
            let case = Case::for_s(&s_val);
            let target = match (target, case) {
                (TargetChoice::None, _) | (TargetChoice::Auto, None) => None,
                (TargetChoice::Auto | TargetChoice::Closed, Some(case)) => {
                    Some(closed_form_target(case, GlaisherRoute::Zeta, &ctx)?)
                }
                (TargetChoice::Closed, None) => {
                    return Err(Error::invalid("closed forms exist only for s = 0, 1, 2"))
                }
                (TargetChoice::Series, _) => Some(series_target(&s_val, &ctx)?),
            };
            let mut rows = Vec::new();
            for_each_pair(&s_val, *pairs, target.as_ref(), *every, &ctx, |row| {
                rows.push(RowRecord::new(&row, &ctx));
                Ok(())
            })?;
            let record = ProductRecord {
                s: s_val.to_context_string(&ctx),
                digits,
                target: target.as_ref().map(|t| TargetRecord::new(t, &ctx)),
                rows,
            };
            write_product(&record, format, out)?;
        }
        Command::Verify { case, tolerance } => {
            let case = match case {
                VerifyCase::S0 => Some(Case::S0),
                VerifyCase::S1 => Some(Case::S1),
                VerifyCase::S2 => Some(Case::S2),
                VerifyCase::All => None,
            };
            let ctx = PrecisionContext::new(digits)?;
            let reports = run_verify(case, digits, tolerance.as_deref())?;
            let records: Vec<VerificationRecord> = reports
                .iter()
                .map(|r| VerificationRecord::new(r, &ctx))
                .collect();
            write_verification(&records, format, out)?;
            if reports.iter().any(|r| !r.passed) {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Order {
            s,
            n_min,
            doublings,
        } => {
            let ctx = PrecisionContext::new(digits)?;
            let s = parse_s(s, &ctx)?;
            let study = convergence_study(&s, *n_min, *doublings, &ctx)?;
            write_order(&OrderRecord::new(&study, &ctx), format, out)?;
        }
    }
    Ok(EXIT_OK)
}
