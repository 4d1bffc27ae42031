//! Evaluation of `eta(s) = sum (-1)^(k+1) k^-s` and `eta'(s)` for real `s`.
//!
//! | evaluator | method | domain |
//! |---|---|---|
//! | [`eta_direct`] | alternating partial sum | `s > 0` |
//! | [`eta_averaged`] | `1/2 + 1/2 sum` of paired differences | `s > -1` |
//! | [`eta_accelerated`] | Chebyshev-weight acceleration | `s > 0` |
//! | [`eta_prime_grouped`] | merged brackets of the differentiated averaged form | `s >= 0` |
//! | [`eta_prime_alternating_accelerated`] | Chebyshev-weight acceleration of `sum (-1)^k ln k / k^s` | `s >= 1` |
//! | [`eta_prime_extrapolated`] | grouped partial sums + [`richardson_extrapolate`] | `s >= 0` |
//!
//! Every result carries an a priori `error_bound`: the truncation bound of
//! the method plus a rounding term for the working precision.

mod acceleration;
mod richardson;
mod terms;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{Accumulator, PrecisionContext, Real};

use acceleration::ChebyshevWeights;
pub use richardson::richardson_extrapolate;
pub use terms::{inv_pow, log_weight, pair_log_factor, PairTerms};
pub(crate) use terms::TERM_GUARD_DIGITS;

/// Lowest order accepted by the accelerated evaluators.
pub const MIN_ACCELERATION_ORDER: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Averaged,
    GroupedDerivative,
    Accelerated,
    RichardsonExtrapolated,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Averaged => "averaged",
            Method::GroupedDerivative => "grouped_derivative",
            Method::Accelerated => "accelerated",
            Method::RichardsonExtrapolated => "richardson_extrapolated",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "direct" => Method::Direct,
            "averaged" => Method::Averaged,
            "grouped" | "grouped_derivative" => Method::GroupedDerivative,
            "accelerated" => Method::Accelerated,
            "richardson" | "richardson_extrapolated" => Method::RichardsonExtrapolated,
            other => return Err(Error::invalid(format!("unknown method {other:?}"))),
        })
    }
}

/// A value of `eta(s)` or `eta'(s)` with its provenance and error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: Real,
    pub s: Real,
    pub terms_used: u64,
    /// Bound on `|value - true value|`; always positive.
    pub error_bound: Real,
    pub method: Method,
}

/// `8 * ops * scale * 2^-prec`: rounding allowance for a computation whose
/// intermediate magnitudes sum to `scale`.
pub(crate) fn rounding_slack(scale: f64, ops: u64, ctx: &PrecisionContext) -> Real {
    let scale = if scale.is_finite() && scale > 0.0 {
        scale
    } else {
        1.0
    };
    Real::from_f64(scale)
        .expect("finite")
        .mul_int(8 * ops.max(1) as i64, ctx)
        .mul_pow2(-(ctx.prec_bits() as i64))
}

/// Acceleration order whose truncation bound is below `10^-(working digits + 2)`.
pub fn default_order(ctx: &PrecisionContext) -> u64 {
    let rate = (3.0 + 8f64.sqrt()).ln();
    let order = ((ctx.working_digits() + 2) as f64 * std::f64::consts::LN_10 / rate).ceil() as u64 + 1;
    order.max(MIN_ACCELERATION_ORDER)
}

/// `(3 + sqrt 8)^-order` at context precision.
fn chebyshev_rate(weights: &ChebyshevWeights, ctx: &PrecisionContext) -> Result<Real> {
    // (3 + sqrt8)^n = d + sqrt(d^2 - 1) with d = T_n(3)
    let d = Real::from_bigint(&weights.d);
    let root = d.mul(&d, ctx).sub(&Real::one(), ctx).sqrt(ctx)?;
    Real::one().div(&d.add(&root, ctx), ctx)
}

/// Partial sum `sum_{k=1}^{n} (-1)^(k+1) k^-s`, bounded by the first omitted term.
pub fn eta_direct(s: &Real, n_terms: u64, ctx: &PrecisionContext) -> Result<SeriesResult> {
    if !s.is_positive() {
        return Err(Error::domain(
            "the direct series needs s > 0 (use the averaged form for s > -1)",
        ));
    }
    if n_terms < 2 {
        return Err(Error::invalid("the direct series needs at least 2 terms"));
    }
    let mut acc = Accumulator::new(ctx);
    let mut abs_sum = 0.0;
    for k in 1..=n_terms {
        let t = inv_pow(k, s, ctx)?;
        abs_sum += t.to_f64();
        acc.add(&if k % 2 == 1 { t } else { t.neg() });
    }
    let value = acc.value();
    let tail = inv_pow(n_terms + 1, s, ctx)?;
    let error_bound = tail.add(&rounding_slack(abs_sum + value.abs().to_f64(), 1, ctx), ctx);
    Ok(SeriesResult {
        value,
        s: s.clone(),
        terms_used: n_terms,
        error_bound,
        method: Method::Direct,
    })
}

/// `1/2 + 1/2 [(1 - 2^-s) + (-2^-s + 3^-s) + (3^-s - 4^-s) + ...]` over `n_groups` brackets.
///
/// The brackets alternate in sign with decreasing magnitude for every
/// `s > -1`, so the error is at most half the first omitted bracket.
pub fn eta_averaged(s: &Real, n_groups: u64, ctx: &PrecisionContext) -> Result<SeriesResult> {
    if *s <= Real::from_i64(-1) {
        return Err(Error::domain("the averaged series needs s > -1"));
    }
    if n_groups == 0 {
        return Err(Error::invalid("need at least one bracket"));
    }
    let wide = ctx.widened(TERM_GUARD_DIGITS);
    let mut acc = Accumulator::new(ctx);
    let mut abs_sum = 0.0;
    let mut g = inv_pow(1, s, &wide)?;
    for j in 1..=n_groups {
        let next = inv_pow(j + 1, s, &wide)?;
        let diff = g.sub(&next, &wide).round(ctx);
        abs_sum += diff.abs().to_f64();
        acc.add(&if j % 2 == 1 { diff } else { diff.neg() });
        g = next;
    }
    let half = Real::one().mul_pow2(-1);
    let value = half.add(&acc.value().mul_pow2(-1), ctx);
    let omitted = g.sub(&inv_pow(n_groups + 2, s, &wide)?, &wide).abs().mul_pow2(-1);
    let error_bound = omitted
        .add(&rounding_slack(abs_sum + value.abs().to_f64(), 1, ctx), ctx);
    Ok(SeriesResult {
        value,
        s: s.clone(),
        terms_used: n_groups,
        error_bound,
        method: Method::Averaged,
    })
}

/// Chebyshev-weight acceleration of `eta(s) = sum_{k>=0} (-1)^k (k+1)^-s`.
///
/// `k^-s` are moments of a positive measure on `[0, 1]` when `s > 0`, so the
/// bound `2 (3 + sqrt8)^-order * a_0` holds; `3 (3 + sqrt8)^-order * max a_k`
/// is reported.
pub fn eta_accelerated(s: &Real, order: u64, ctx: &PrecisionContext) -> Result<SeriesResult> {
    if !s.is_positive() {
        return Err(Error::MethodInapplicable(
            "accelerated eta needs s > 0".into(),
        ));
    }
    if order < MIN_ACCELERATION_ORDER {
        return Err(Error::invalid(format!(
            "acceleration order must be at least {MIN_ACCELERATION_ORDER}"
        )));
    }
    let wide = ctx.widened(TERM_GUARD_DIGITS);
    let terms = (1..=order)
        .map(|k| inv_pow(k, s, &wide))
        .collect::<Result<Vec<_>>>()?;
    accelerated_result(&terms, None, s, order, Method::Accelerated, false, ctx)
}

/// `mass` is the total variation of the measure whose moments are the terms;
/// `None` means a positive measure, whose mass is the first (largest) term.
fn accelerated_result(
    terms: &[Real],
    mass: Option<Real>,
    s: &Real,
    order: u64,
    method: Method,
    negate: bool,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    let wide = ctx.widened(TERM_GUARD_DIGITS);
    let weights = ChebyshevWeights::new(order);
    let sum = weights.apply(terms, &wide);
    let value = if negate { sum.neg() } else { sum }.round(ctx);
    let max_term = terms.iter().map(Real::abs).max().unwrap_or_else(Real::zero);
    let mass = mass.map_or_else(|| max_term.clone(), |m| m.max(max_term.clone()));
    let truncation = chebyshev_rate(&weights, ctx)?
        .mul(&mass, ctx)
        .mul_int(3, ctx);
    let slack = rounding_slack(max_term.to_f64() + value.abs().to_f64(), order, ctx);
    Ok(SeriesResult {
        value,
        s: s.clone(),
        terms_used: order,
        error_bound: truncation.add(&slack, ctx),
        method,
    })
}

/// `(1/2) sum_{n=1}^{N} t_n` with `t_n` the merged bracket of
/// [`pair_log_factor`]; twice this is the log of the `N`-pair product.
///
/// The tail satisfies `|sum_{n>N} t_n| <= int_{2N+1}^inf |f''|` for
/// `f(x) = ln x / x^s`, since each `t_n` is `-f''` integrated against a unit
/// tent; that integral has a closed form in `f'`.
pub fn eta_prime_grouped(s: &Real, n_groups: u64, ctx: &PrecisionContext) -> Result<SeriesResult> {
    if s.is_negative() {
        return Err(Error::domain("the grouped derivative series needs s >= 0"));
    }
    if n_groups == 0 {
        return Err(Error::invalid("need at least one bracket"));
    }
    let mut partial = GroupedSum::new(s, ctx)?;
    partial.advance_to(n_groups)?;
    Ok(partial.result())
}

/// Running `(1/2) sum t_n`, shared with the product module so that the two
/// sides of the series/product identity are the same accumulation.
#[derive(Debug, Clone)]
pub(crate) struct GroupedSum {
    terms: PairTerms,
    acc: Accumulator,
    abs_sum: f64,
    last_term: Option<Real>,
    s: Real,
    ctx: PrecisionContext,
}

impl GroupedSum {
    pub fn new(s: &Real, ctx: &PrecisionContext) -> Result<Self> {
        Ok(GroupedSum {
            terms: PairTerms::new(s, ctx)?,
            acc: Accumulator::new(ctx),
            abs_sum: 0.0,
            last_term: None,
            s: s.clone(),
            ctx: *ctx,
        })
    }

    pub fn count(&self) -> u64 {
        self.terms.next_index() - 1
    }

    /// Adds `t_{count+1}` and returns it.
    pub fn step(&mut self) -> Result<&Real> {
        let t = self.terms.next_term()?;
        self.abs_sum += t.abs().to_f64();
        self.acc.add(&t);
        Ok(self.last_term.insert(t))
    }

    pub fn advance_to(&mut self, n: u64) -> Result<()> {
        while self.count() < n {
            self.step()?;
        }
        Ok(())
    }

    /// `sum t_n`, the log of the partial product.
    pub fn log_sum(&self) -> Real {
        self.acc.value()
    }

    pub fn result(&self) -> SeriesResult {
        let n = self.count();
        let value = self.log_sum().mul_pow2(-1);
        let tail = grouped_tail_bound(self.s.to_f64(), n);
        let scale = self.abs_sum + value.abs().to_f64() + n as f64 * 1e-6;
        let error_bound = Real::from_f64(tail * (1.0 + 1e-9))
            .expect("finite bound")
            .add(&rounding_slack(scale, 1, &self.ctx), &self.ctx);
        SeriesResult {
            value,
            s: self.s.clone(),
            terms_used: n,
            error_bound,
            method: Method::GroupedDerivative,
        }
    }
}

/// `(1/2) int_{2N+1}^inf |f''(x)| dx` for `f(x) = ln x / x^s`, `s >= 0`.
///
/// `f'(x) = x^(-s-1) (1 - s ln x)`; `f''` changes sign once, at
/// `ln x0 = (2s+1) / (s(s+1))`, where `|f'(x0)| = s/(s+1) e^(-(2s+1)/s)`.
fn grouped_tail_bound(s: f64, n: u64) -> f64 {
    let a = 2.0 * n as f64 + 1.0;
    let fp = a.powf(-s - 1.0) * (1.0 - s * a.ln());
    let integral = if s == 0.0 {
        1.0 / a
    } else {
        let log_x0 = (2.0 * s + 1.0) / (s * (s + 1.0));
        if a.ln() >= log_x0 {
            fp.abs()
        } else {
            fp + 2.0 * s / (s + 1.0) * (-(2.0 * s + 1.0) / s).exp()
        }
    };
    0.5 * integral
}

/// Chebyshev-weight acceleration of `eta'(s) = sum_{k>=1} (-1)^k ln k / k^s`.
///
/// Restricted to `s >= 1`, where `ln k / k^s` decreases from `k = 3` on.
pub fn eta_prime_alternating_accelerated(
    s: &Real,
    order: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    if *s < Real::one() {
        return Err(Error::MethodInapplicable(
            "accelerated eta' needs s >= 1; use the grouped series with extrapolation".into(),
        ));
    }
    if order < MIN_ACCELERATION_ORDER {
        return Err(Error::invalid(format!(
            "acceleration order must be at least {MIN_ACCELERATION_ORDER}"
        )));
    }
    let wide = ctx.widened(TERM_GUARD_DIGITS);
    // sum_{k>=1} (-1)^k a(k) = -sum_{j>=0} (-1)^j a(j+1)
    let terms = (1..=order)
        .map(|k| log_weight(k, s, &wide))
        .collect::<Result<Vec<_>>>()?;
    // ln(k)/k^s is the k-th moment of a signed measure (not a positive one, so
    // max|a_k| is not its mass); its total variation is E|ln t - psi(s)| for
    // t ~ Gamma(s), at most sqrt(psi'(s)) < sqrt(1/s + 1/s^2).
    let s_plus_one = s.add(&Real::one(), &wide);
    let variation = s_plus_one.sqrt(&wide)?.div(s, &wide)?;
    accelerated_result(&terms, Some(variation), s, order, Method::Accelerated, true, ctx)
}

/// Grouped partial sums `(1/2) sum_{n<=N} t_n` at each of the increasing `sizes`, in one pass.
pub fn grouped_partials(
    s: &Real,
    sizes: &[u64],
    ctx: &PrecisionContext,
) -> Result<Vec<(u64, Real)>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes.first() == Some(&0) {
        return Err(Error::invalid("sample sizes must be positive and increasing"));
    }
    let mut partial = GroupedSum::new(s, ctx)?;
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        partial.advance_to(n)?;
        out.push((n, partial.log_sum().mul_pow2(-1)));
    }
    Ok(out)
}

/// Grouped partial sums at `n_min * 2^j` (`j = 0..=doublings`), extrapolated
/// with `levels` Richardson levels.
pub fn eta_prime_extrapolated(
    s: &Real,
    n_min: u64,
    doublings: u32,
    levels: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    if s.is_negative() {
        return Err(Error::domain("the grouped derivative series needs s >= 0"));
    }
    if n_min == 0 || doublings == 0 || doublings > 40 {
        return Err(Error::invalid("need n_min >= 1 and 1..=40 doublings"));
    }
    let sizes: Vec<u64> = (0..=doublings).map(|j| n_min << j).collect();
    let partials = grouped_partials(s, &sizes, ctx)?;
    let mut result = richardson_extrapolate(&partials, levels, ctx)?;
    result.s = s.clone();
    Ok(result)
}
