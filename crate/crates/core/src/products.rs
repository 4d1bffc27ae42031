//! Partial products of
//! `exp(2 eta'(s)) = prod_{n>=1} (2n)^(2/(2n)^s) / ((2n-1)^(1/(2n-1)^s) (2n+1)^(1/(2n+1)^s))`,
//! accumulated in log space one pair of factors at a time.
//!
//! At `s = 0` this is Wallis' `pi/2 = (2/1)(2/3)(4/3)(4/5)...`.

use std::fmt;
use std::str::FromStr;

use crate::constants::{gamma_harmonic, GlaisherRoute};
use crate::error::{Error, Result};
use crate::numeric::{exp, ln, ln2, pi, PrecisionContext, Real};
use crate::series::{
    default_order, eta_prime_alternating_accelerated, eta_prime_extrapolated, log_weight,
    pair_log_factor, GroupedSum, SeriesResult,
};

/// One emitted pair of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductRow {
    pub pair_index: u64,
    pub log_factor: Real,
    pub cumulative_log: Real,
    pub cumulative_value: Real,
    pub abs_error: Option<Real>,
}

/// The three cases with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    S0,
    S1,
    S2,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::S0, Case::S1, Case::S2];

    pub fn name(&self) -> &'static str {
        match self {
            Case::S0 => "s0",
            Case::S1 => "s1",
            Case::S2 => "s2",
        }
    }

    pub fn s(&self) -> u64 {
        match self {
            Case::S0 => 0,
            Case::S1 => 1,
            Case::S2 => 2,
        }
    }

    /// The case for `s`, if `s` is 0, 1 or 2.
    pub fn for_s(s: &Real) -> Option<Case> {
        match s.to_i64()? {
            0 => Some(Case::S0),
            1 => Some(Case::S1),
            2 => Some(Case::S2),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s0" | "0" => Ok(Case::S0),
            "s1" | "1" => Ok(Case::S1),
            "s2" | "2" => Ok(Case::S2),
            other => Err(Error::invalid(format!("unknown case {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetRoute {
    ClosedFormS0,
    ClosedFormS1,
    ClosedFormS2,
    EtaPrimeSeries,
}

impl TargetRoute {
    pub fn name(&self) -> &'static str {
        match self {
            TargetRoute::ClosedFormS0 => "closed_form_s0",
            TargetRoute::ClosedFormS1 => "closed_form_s1",
            TargetRoute::ClosedFormS2 => "closed_form_s2",
            TargetRoute::EtaPrimeSeries => "eta_prime_series",
        }
    }
}

/// A limit value for the product at parameter `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub s: Real,
    pub value: Real,
    pub route: TargetRoute,
}

/// `2 ln(2n)/(2n)^s - ln(2n-1)/(2n-1)^s - ln(2n+1)/(2n+1)^s`, the log of the
/// `n`-th pair of factors. At `s = 0` this is `-ln(1 - 1/(4n^2))`.
pub fn log_factor(n: u64, s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    pair_log_factor(n, s, ctx)
}

/// Rows at pair indices `emit_every, 2 emit_every, ...` and always at `n_pairs`.
///
/// `cumulative_log` is the exact running sum of the log factors rounded to
/// the context, the same value as `2 * eta_prime_grouped(s, n).value`.
pub fn partial_product(
    s: &Real,
    n_pairs: u64,
    target: Option<&Target>,
    emit_every: u64,
    ctx: &PrecisionContext,
) -> Result<Vec<ProductRow>> {
    let mut rows = Vec::new();
    for_each_pair(s, n_pairs, target, emit_every, ctx, |row| {
        rows.push(row);
        Ok(())
    })?;
    Ok(rows)
}

/// Streaming form of [`partial_product`]: `emit` receives each row as it is produced.
pub fn for_each_pair<F>(
    s: &Real,
    n_pairs: u64,
    target: Option<&Target>,
    emit_every: u64,
    ctx: &PrecisionContext,
    mut emit: F,
) -> Result<()>
where
    F: FnMut(ProductRow) -> Result<()>,
{
    if n_pairs == 0 {
        return Err(Error::invalid("need at least one pair of factors"));
    }
    if emit_every == 0 {
        return Err(Error::invalid("emit_every must be positive"));
    }
    let mut sum = GroupedSum::new(s, ctx)?;
    while sum.count() < n_pairs {
        let log_factor = sum.step()?.clone();
        let n = sum.count();
        if n % emit_every != 0 && n != n_pairs {
            continue;
        }
        let cumulative_log = sum.log_sum();
        let cumulative_value = exp(&cumulative_log, ctx)?;
        let abs_error = target.map(|t| cumulative_value.sub(&t.value, ctx).abs());
        emit(ProductRow {
            pair_index: n,
            log_factor,
            cumulative_log,
            cumulative_value,
            abs_error,
        })?;
    }
    Ok(())
}

/// The product cut after each single factor, in the order the formula is
/// displayed: `(2/1), (2/1)(2/3), (2/1)(2/3)(4/3), ...` at `s = 0`.
///
/// These partial products oscillate around the limit; they are for display
/// only and play no part in convergence measurements.
pub fn half_step_products(s: &Real, n_factors: u64, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    if s.is_negative() {
        return Err(Error::domain("products need s >= 0"));
    }
    let wide = ctx.widened(crate::series::TERM_GUARD_DIGITS);
    let mut log = Real::zero();
    let mut out = Vec::with_capacity(n_factors as usize);
    for i in 0..n_factors {
        // factor i: (2m)^(1/(2m)^s) over (2m-1)^... for even i, (2m+1)^... for odd i
        let m = i / 2 + 1;
        let even = log_weight(2 * m, s, &wide)?;
        let odd = log_weight(if i % 2 == 0 { 2 * m - 1 } else { 2 * m + 1 }, s, &wide)?;
        log = log.add(&even.sub(&odd, &wide), &wide);
        out.push(exp(&log, &wide)?.round(ctx));
    }
    Ok(out)
}

/// `pi/2`, `2^(2 gamma - ln 2)` or `(4 pi e^gamma / A^12)^(pi^2/6)`.
///
/// gamma is always the harmonic-sum value; `glaisher` selects how `ln A`
/// is obtained for case 2 (the hyperfactorial limit keeps the check independent
/// of the eta' series).
pub fn closed_form_target(
    case: Case,
    glaisher: GlaisherRoute,
    ctx: &PrecisionContext,
) -> Result<Target> {
    let wide = ctx.widened(4);
    let (value, route) = match case {
        Case::S0 => (pi(&wide).mul_pow2(-1), TargetRoute::ClosedFormS0),
        Case::S1 => {
            let l2 = ln2(&wide);
            let gamma = gamma_harmonic(&wide)?;
            let exponent = gamma.mul_pow2(1).sub(&l2, &wide).mul(&l2, &wide);
            (exp(&exponent, &wide)?, TargetRoute::ClosedFormS1)
        }
        Case::S2 => {
            let p = pi(&wide);
            let gamma = gamma_harmonic(&wide)?;
            let ln_a = glaisher.ln_glaisher(&wide)?;
            // ln(4 pi e^gamma / A^12) = 2 ln 2 + ln pi + gamma - 12 ln A
            let inner = ln2(&wide)
                .mul_pow2(1)
                .add(&ln(&p, &wide)?, &wide)
                .add(&gamma, &wide)
                .sub(&ln_a.mul_int(12, &wide), &wide);
            let zeta2 = p.mul(&p, &wide).div_int(6, &wide)?;
            (exp(&zeta2.mul(&inner, &wide), &wide)?, TargetRoute::ClosedFormS2)
        }
    };
    Ok(Target {
        s: Real::from_u64(case.s()),
        value: value.round(ctx),
        route,
    })
}

/// Sample sizes used by the extrapolated route: `1000 * 2^j`, `j = 0..=6`.
pub const EXTRAPOLATION_N_MIN: u64 = 1000;
pub const EXTRAPOLATION_DOUBLINGS: u32 = 6;
pub const EXTRAPOLATION_LEVELS: usize = 6;

/// `eta'(s)` by the best available series: Chebyshev acceleration for
/// `s >= 1`, grouped partial sums with Richardson extrapolation below.
pub fn eta_prime_best(s: &Real, ctx: &PrecisionContext) -> Result<SeriesResult> {
    if s.is_negative() {
        return Err(Error::domain("products need s >= 0"));
    }
    if *s >= Real::one() {
        eta_prime_alternating_accelerated(s, default_order(ctx), ctx)
    } else {
        eta_prime_extrapolated(
            s,
            EXTRAPOLATION_N_MIN,
            EXTRAPOLATION_DOUBLINGS,
            EXTRAPOLATION_LEVELS,
            ctx,
        )
    }
}

/// `exp(2 eta'(s))` with `eta'(s)` from [`eta_prime_best`].
pub fn series_target(s: &Real, ctx: &PrecisionContext) -> Result<Target> {
    Ok(series_target_with_result(s, ctx)?.0)
}

/// [`series_target`] together with the series value it was built from.
pub fn series_target_with_result(
    s: &Real,
    ctx: &PrecisionContext,
) -> Result<(Target, SeriesResult)> {
    let wide = ctx.widened(2);
    let eta = eta_prime_best(s, &wide)?;
    let value = exp(&eta.value.mul_pow2(1), &wide)?.round(ctx);
    let target = Target {
        s: s.clone(),
        value,
        route: TargetRoute::EtaPrimeSeries,
    };
    Ok((target, eta))
}

/// Errors of the pair products at `n_min * 2^j` and the order estimated from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub s: Real,
    pub target: Target,
    /// `(N, |product(N) - target|)`.
    pub samples: Vec<(u64, Real)>,
    pub order: Real,
}

/// Mean of `log2(e_j / e_{j+1})` over consecutive errors.
pub fn order_from_errors(errors: &[Real], ctx: &PrecisionContext) -> Result<Real> {
    if errors.len() < 2 {
        return Err(Error::invalid("need at least two errors"));
    }
    if errors.iter().any(|e| !e.is_positive()) {
        return Err(Error::domain("errors must be positive"));
    }
    let l2 = ln2(ctx);
    let mut total = Real::zero();
    for w in errors.windows(2) {
        let ratio = w[0].div(&w[1], ctx)?;
        total = total.add(&ln(&ratio, ctx)?.div(&l2, ctx)?, ctx);
    }
    total.div_int(errors.len() as i64 - 1, ctx)
}

/// Empirical convergence order of the pair products at `s`.
///
/// The target is `pi/2` for `s = 0` and [`series_target`] otherwise (accurate
/// far beyond the product errors being measured).
pub fn convergence_study(
    s: &Real,
    n_min: u64,
    doublings: u32,
    ctx: &PrecisionContext,
) -> Result<ConvergenceStudy> {
    if s.is_negative() {
        return Err(Error::domain("products need s >= 0"));
    }
    if n_min == 0 || !(2..=40).contains(&doublings) {
        return Err(Error::invalid("need n_min >= 1 and 2..=40 doublings"));
    }
    let target = match Case::for_s(s) {
        Some(Case::S0) => closed_form_target(Case::S0, GlaisherRoute::Zeta, ctx)?,
        _ => series_target(s, ctx)?,
    };
    // 10x the working epsilon, relative to the O(1) product value
    let floor = Real::from_u64(10).mul_pow2(-(ctx.prec_bits() as i64));
    let mut sum = GroupedSum::new(s, ctx)?;
    let mut samples = Vec::with_capacity(doublings as usize + 1);
    for j in 0..=doublings {
        let n = n_min << j;
        sum.advance_to(n)?;
        let value = exp(&sum.log_sum(), ctx)?;
        let err = value.sub(&target.value, ctx).abs();
        if err < floor {
            return Err(Error::PrecisionExhausted(format!(
                "product error at N={n} is below 10x the working epsilon"
            )));
        }
        samples.push((n, err));
    }
    let errors: Vec<Real> = samples.iter().map(|(_, e)| e.clone()).collect();
    let order = order_from_errors(&errors, ctx)?;
    Ok(ConvergenceStudy {
        s: s.clone(),
        target,
        samples,
        order,
    })
}

pub fn convergence_order(
    s: &Real,
    n_min: u64,
    doublings: u32,
    ctx: &PrecisionContext,
) -> Result<Real> {
    Ok(convergence_study(s, n_min, doublings, ctx)?.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::make_context;

    fn ctx(d: u32) -> PrecisionContext {
        make_context(d).unwrap()
    }

    #[test]
    fn first_pairs_at_s0() {
        let c = ctx(30);
        let rows = partial_product(&Real::zero(), 3, None, 1, &c).unwrap();
        assert_eq!(rows.len(), 3);
        let third = Real::from_u64(2304).div_int(1575, &c).unwrap();
        let last = &rows[2];
        assert!(last.cumulative_value.sub(&third, &c).abs().to_f64() < 1e-36);
        assert_eq!(
            rows[0].cumulative_value.to_context_string(&c),
            format!("1.{}", "3".repeat(29))
        );
    }

    #[test]
    fn emission_schedule_includes_final_row() {
        let c = ctx(20);
        let rows = partial_product(&Real::one(), 10, None, 4, &c).unwrap();
        let idx: Vec<u64> = rows.iter().map(|r| r.pair_index).collect();
        assert_eq!(idx, vec![4, 8, 10]);
        assert!(partial_product(&Real::one(), 0, None, 1, &c).is_err());
        assert!(partial_product(&Real::one(), 5, None, 0, &c).is_err());
        assert!(partial_product(&Real::from_i64(-1), 5, None, 1, &c).is_err());
    }

    #[test]
    fn half_steps_oscillate_around_the_limit() {
        let c = ctx(20);
        let v = half_step_products(&Real::zero(), 6, &c).unwrap();
        let expect = ["2", "1.3333333333333333333", "1.7777777777777777778"];
        for (got, want) in v.iter().zip(expect) {
            assert_eq!(got.to_decimal_string(20, Default::default()), Real::parse(want, &c).unwrap().to_decimal_string(20, Default::default()));
        }
        let half_pi = pi(&c).mul_pow2(-1);
        for w in v.windows(2) {
            assert_ne!(w[0] > half_pi, w[1] > half_pi);
        }
    }

    #[test]
    fn closed_forms() {
        let c = ctx(30);
        let t0 = closed_form_target(Case::S0, GlaisherRoute::Zeta, &c).unwrap();
        assert_eq!(t0.value.to_context_string(&c), "1.57079632679489661923132169164");
        let t1 = closed_form_target(Case::S1, GlaisherRoute::Zeta, &c).unwrap();
        assert_eq!(t1.value.to_decimal_string(20, Default::default()), "1.3767667390748882261");
        let t2 = closed_form_target(Case::S2, GlaisherRoute::Zeta, &c).unwrap();
        assert_eq!(t2.value.to_decimal_string(20, Default::default()), "1.2246231405851111456");
        assert_eq!(t2.route, TargetRoute::ClosedFormS2);
    }

    #[test]
    fn toy_errors_have_order_one() {
        let c = ctx(20);
        let e: Vec<Real> = (0..4).map(|j| Real::from_u64(3).mul_pow2(-j)).collect();
        assert_eq!(order_from_errors(&e, &c).unwrap(), Real::one());
    }

    #[test]
    fn case_names() {
        for case in Case::ALL {
            assert_eq!(case.name().parse::<Case>().unwrap(), case);
        }
        assert!("s3".parse::<Case>().is_err());
    }
}
