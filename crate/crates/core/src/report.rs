//! Identity verification and the serializable records behind the CLI.
//!
//! Every number is rendered as a decimal string at the requested digits.

use std::io::Write;

use serde::Serialize;

use crate::constants::{constant_set, ConstantSet, GlaisherRoute};
use crate::error::{Error, Result};
use crate::numeric::{PrecisionContext, Real};
use crate::products::{
    closed_form_target, series_target_with_result, Case, ConvergenceStudy,
    ProductRow, Target, EXTRAPOLATION_DOUBLINGS, EXTRAPOLATION_LEVELS, EXTRAPOLATION_N_MIN,
};
use crate::series::{Method, SeriesResult};

/// Hyperfactorial size used for A in verification runs.
pub const VERIFY_GLAISHER_N: u64 = 2000;

/// Digits between the working precision and the tightest tolerance accepted.
const TOLERANCE_HEADROOM_DIGITS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: Case,
    /// `exp(2 eta'(s))` from the series side.
    pub lhs: Real,
    /// The closed form.
    pub rhs: Real,
    pub abs_error: Real,
    pub tolerance: Real,
    pub passed: bool,
    pub digits: u32,
    pub routes: String,
}

pub fn default_tolerance(case: Case) -> &'static str {
    match case {
        Case::S0 => "1e-12",
        Case::S1 => "1e-20",
        Case::S2 => "1e-8",
    }
}

/// `10^-(digits - 8)`, the tightest tolerance that can be certified.
fn min_tolerance(ctx: &PrecisionContext) -> Result<Real> {
    Real::parse(
        &format!("1e-{}", ctx.digits().saturating_sub(TOLERANCE_HEADROOM_DIGITS)),
        ctx,
    )
}

/// Rejects tolerances tighter than `10^-(digits - 8)`.
pub fn check_tolerance(tolerance: &Real, ctx: &PrecisionContext) -> Result<()> {
    let digits = ctx.digits();
    if *tolerance < min_tolerance(ctx)? {
        return Err(Error::invalid(format!(
            "tolerance {} is below 1e-{} and cannot be certified at {digits} digits",
            tolerance.to_decimal_string(6, Default::default()),
            digits - TOLERANCE_HEADROOM_DIGITS
        )));
    }
    Ok(())
}

fn describe_series(res: &SeriesResult) -> String {
    match res.method {
        Method::Accelerated => format!("eta':accelerated(order={})", res.terms_used),
        Method::RichardsonExtrapolated => format!(
            "eta':grouped+richardson(N={}..{},levels={})",
            EXTRAPOLATION_N_MIN,
            EXTRAPOLATION_N_MIN << EXTRAPOLATION_DOUBLINGS,
            EXTRAPOLATION_LEVELS
        ),
        m => format!("eta':{m}(N={})", res.terms_used),
    }
}

/// Checks one closed-form identity: `exp(2 eta'(s))` from the series against
/// the closed form built from gamma (harmonic sum) and, for s = 2, A from the
/// hyperfactorial limit at `glaisher_n`.
pub fn verify_case(
    case: Case,
    tolerance: &Real,
    glaisher_n: u64,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    check_tolerance(tolerance, ctx)?;
    let s = Real::from_u64(case.s());
    let (lhs, series) = series_target_with_result(&s, ctx)?;
    let route = GlaisherRoute::Limit { n: glaisher_n };
    let rhs = closed_form_target(case, route, ctx)?;
    let abs_error = lhs.value.sub(&rhs.value, ctx).abs();
    let mut routes = describe_series(&series);
    match case {
        Case::S0 => routes.push_str(",pi:chudnovsky"),
        Case::S1 => routes.push_str(",gamma:harmonic"),
        Case::S2 => routes.push_str(&format!(",gamma:harmonic,A:{route}")),
    }
    Ok(VerificationReport {
        case,
        passed: abs_error <= *tolerance,
        lhs: lhs.value,
        rhs: rhs.value,
        abs_error,
        tolerance: tolerance.clone(),
        digits: ctx.digits(),
        routes,
    })
}

/// `run_verify` for one case (`Some`) or all three (`None`). A given
/// tolerance must be certifiable at `digits`; the per-case defaults are
/// loosened to `10^-(digits - 8)` when the context is too coarse for them.
pub fn run_verify(
    case: Option<Case>,
    digits: u32,
    tolerance: Option<&str>,
) -> Result<Vec<VerificationReport>> {
    let ctx = PrecisionContext::new(digits)?;
    let cases: Vec<Case> = match case {
        Some(c) => vec![c],
        None => Case::ALL.to_vec(),
    };
    // validate every tolerance before any computation
    let tolerances = cases
        .iter()
        .map(|&c| {
            let t = match tolerance {
                Some(t) => Real::parse(t, &ctx)?,
                None => Real::parse(default_tolerance(c), &ctx)?.max(min_tolerance(&ctx)?),
            };
            if !t.is_positive() {
                return Err(Error::invalid("tolerance must be positive"));
            }
            check_tolerance(&t, &ctx)?;
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    cases
        .iter()
        .zip(&tolerances)
        .map(|(&c, t)| verify_case(c, t, VERIFY_GLAISHER_N, &ctx))
        .collect()
}

fn dec(x: &Real, ctx: &PrecisionContext) -> String {
    x.to_context_string(ctx)
}

#[derive(Debug, Serialize)]
pub struct VerificationRecord {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_error: String,
    pub tolerance: String,
    pub passed: bool,
    pub digits: u32,
    pub routes: String,
}

impl VerificationRecord {
    pub fn new(r: &VerificationReport, ctx: &PrecisionContext) -> Self {
        VerificationRecord {
            case: r.case.name().to_string(),
            lhs: dec(&r.lhs, ctx),
            rhs: dec(&r.rhs, ctx),
            abs_error: dec(&r.abs_error, ctx),
            tolerance: dec(&r.tolerance, ctx),
            passed: r.passed,
            digits: r.digits,
            routes: r.routes.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SeriesRecord {
    pub s: String,
    pub method: String,
    pub terms_used: u64,
    pub value: String,
    pub error_bound: String,
}

impl SeriesRecord {
    pub fn new(r: &SeriesResult, ctx: &PrecisionContext) -> Self {
        SeriesRecord {
            s: dec(&r.s, ctx),
            method: r.method.name().to_string(),
            terms_used: r.terms_used,
            value: dec(&r.value, ctx),
            error_bound: dec(&r.error_bound, ctx),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstantsRecord {
    pub digits: u32,
    pub pi: String,
    pub ln2: String,
    pub gamma: String,
    pub zeta2: String,
    pub zeta_prime2: String,
    pub ln_glaisher: String,
    pub glaisher: String,
    pub glaisher_route: String,
}

impl ConstantsRecord {
    pub fn new(c: &ConstantSet, ctx: &PrecisionContext) -> Self {
        ConstantsRecord {
            digits: c.digits,
            pi: dec(&c.pi, ctx),
            ln2: dec(&c.ln2, ctx),
            gamma: dec(&c.gamma, ctx),
            zeta2: dec(&c.zeta2, ctx),
            zeta_prime2: dec(&c.zeta_prime2, ctx),
            ln_glaisher: dec(&c.ln_glaisher, ctx),
            glaisher: dec(&c.glaisher, ctx),
            glaisher_route: c.glaisher_route.to_string(),
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("pi", self.pi.clone()),
            ("ln2", self.ln2.clone()),
            ("gamma", self.gamma.clone()),
            ("zeta2", self.zeta2.clone()),
            ("zeta_prime2", self.zeta_prime2.clone()),
            ("ln_glaisher", self.ln_glaisher.clone()),
            ("glaisher", self.glaisher.clone()),
        ]
    }
}

pub fn run_constants(digits: u32) -> Result<(ConstantsRecord, PrecisionContext)> {
    let ctx = PrecisionContext::new(digits)?;
    let set = constant_set(&ctx)?;
    Ok((ConstantsRecord::new(&set, &ctx), ctx))
}

#[derive(Debug, Serialize)]
pub struct RowRecord {
    pub pair_index: u64,
    pub log_factor: String,
    pub cumulative_log: String,
    pub cumulative_value: String,
    pub abs_error: Option<String>,
}

impl RowRecord {
    pub fn new(r: &ProductRow, ctx: &PrecisionContext) -> Self {
        RowRecord {
            pair_index: r.pair_index,
            log_factor: dec(&r.log_factor, ctx),
            cumulative_log: dec(&r.cumulative_log, ctx),
            cumulative_value: dec(&r.cumulative_value, ctx),
            abs_error: r.abs_error.as_ref().map(|e| dec(e, ctx)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TargetRecord {
    pub s: String,
    pub value: String,
    pub route: String,
}

impl TargetRecord {
    pub fn new(t: &Target, ctx: &PrecisionContext) -> Self {
        TargetRecord {
            s: dec(&t.s, ctx),
            value: dec(&t.value, ctx),
            route: t.route.name().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProductRecord {
    pub s: String,
    pub digits: u32,
    pub target: Option<TargetRecord>,
    pub rows: Vec<RowRecord>,
}

#[derive(Debug, Serialize)]
pub struct SampleRecord {
    pub n: u64,
    pub abs_error: String,
}

#[derive(Debug, Serialize)]
pub struct OrderRecord {
    pub s: String,
    pub digits: u32,
    pub order: String,
    pub target: TargetRecord,
    pub samples: Vec<SampleRecord>,
}

impl OrderRecord {
    pub fn new(study: &ConvergenceStudy, ctx: &PrecisionContext) -> Self {
        OrderRecord {
            s: dec(&study.s, ctx),
            digits: ctx.digits(),
            order: dec(&study.order, ctx),
            target: TargetRecord::new(&study.target, ctx),
            samples: study
                .samples
                .iter()
                .map(|(n, e)| SampleRecord {
                    n: *n,
                    abs_error: dec(e, ctx),
                })
                .collect(),
        }
    }
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(csv_error)?;
    writeln!(out).map_err(csv_error)
}

fn write_csv<I, R>(header: &[&str], rows: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

pub fn write_verification(
    records: &[VerificationRecord],
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Json if records.len() == 1 => write_json(&records[0], out),
        Format::Json => write_json(records, out),
        Format::Csv => write_csv(
            &["case", "lhs", "rhs", "abs_error", "tolerance", "passed", "digits", "routes"],
            records.iter().map(|r| {
                [
                    r.case.clone(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    r.abs_error.clone(),
                    r.tolerance.clone(),
                    r.passed.to_string(),
                    r.digits.to_string(),
                    r.routes.clone(),
                ]
            }),
            out,
        ),
    }
}

pub fn write_series(record: &SeriesRecord, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(record, out),
        Format::Csv => write_csv(
            &["s", "method", "terms_used", "value", "error_bound"],
            [[
                record.s.clone(),
                record.method.clone(),
                record.terms_used.to_string(),
                record.value.clone(),
                record.error_bound.clone(),
            ]],
            out,
        ),
    }
}

pub fn write_constants(
    record: &ConstantsRecord,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Json => write_json(record, out),
        Format::Csv => write_csv(
            &["name", "value"],
            record.pairs().into_iter().map(|(k, v)| [k.to_string(), v]),
            out,
        ),
    }
}

pub fn write_product(record: &ProductRecord, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(record, out),
        Format::Csv => write_csv(
            &["n", "log_factor", "cumulative_value", "abs_error"],
            record.rows.iter().map(|r| {
                [
                    r.pair_index.to_string(),
                    r.log_factor.clone(),
                    r.cumulative_value.clone(),
                    r.abs_error.clone().unwrap_or_default(),
                ]
            }),
            out,
        ),
    }
}

pub fn write_order(record: &OrderRecord, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => write_json(record, out),
        Format::Csv => write_csv(
            &["n", "abs_error", "order"],
            record
                .samples
                .iter()
                .map(|r| [r.n.to_string(), r.abs_error.clone(), record.order.clone()]),
            out,
        ),
    }
}
