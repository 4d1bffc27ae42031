//! pi, ln 2, gamma, zeta(2), zeta'(2), the hyperfactorial and the
//! Glaisher-Kinkelin constant A, each by a route that does not depend on the
//! identity it is later used to check.
//!
//! - gamma: harmonic sum with Euler-Maclaurin corrections ([`gamma_harmonic`]);
//!   [`gamma_from_eta`] is the dependent cross-check.
//! - ln A: hyperfactorial limit ([`glaisher_from_limit`], slow, independent)
//!   or from zeta'(2) ([`glaisher_from_zeta`], fast, uses the accelerated eta' series).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{exp, ln, ln2, pi, Accumulator, PrecisionContext, Real};
use crate::series::{default_order, eta_prime_alternating_accelerated};

/// Extra digits for intermediate steps of the constant formulas.
const CONSTANT_GUARD_DIGITS: u32 = 6;

/// Smallest `n` accepted by [`glaisher_from_limit`].
pub const MIN_GLAISHER_N: u64 = 10;

/// Above this many digits [`constant_set`] takes A from zeta'(2).
pub const LIMIT_ROUTE_MAX_DIGITS: u32 = 20;

fn ratio_to_real(q: &BigRational, ctx: &PrecisionContext) -> Result<Real> {
    Real::from_ratio(q.numer(), q.denom(), ctx)
}

/// `B_0, B_2, B_4, ..., B_{2m}` from `sum_{j<=k} C(k+1, j) B_j = 0`.
fn even_bernoulli(m: usize) -> Vec<BigRational> {
    let top = 2 * m;
    let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
    b.push(BigRational::one());
    for k in 1..=top {
        if k > 1 && k % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // binomial C(k+1, j) built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b.into_iter().step_by(2).collect()
}

/// Euler-Mascheroni constant from `H_n - ln n - 1/(2n) + sum_k B_2k / (2k n^2k)`.
///
/// `n = working digits + 10`; correction terms are added until the next one
/// drops below `10^-(working digits)`. `H_n` and the corrections are exact
/// rationals, so `ln n` is the only rounded ingredient.
pub fn gamma_harmonic(ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let n = ctx.working_digits() as u64 + 10;
    let big_n = BigInt::from(n);

    let mut sum = BigRational::zero();
    for k in 1..=n {
        sum += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    sum -= BigRational::new(BigInt::one(), &big_n * 2);

    let limit = BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), ctx.working_digits() as usize + 2),
    );
    let n2 = &big_n * &big_n;
    let mut m = 8;
    'grow: loop {
        let bern = even_bernoulli(m);
        let mut partial = sum.clone();
        let mut n_pow = BigInt::one();
        for (k, b) in bern.iter().enumerate().skip(1) {
            n_pow *= &n2;
            let term = b / BigRational::from_integer(&n_pow * BigInt::from(2 * k));
            if term.abs() < limit {
                sum = partial;
                break 'grow;
            }
            partial += term;
        }
        if m > 4 * n as usize {
            // the asymptotic series has started to diverge
            return Err(Error::PrecisionExhausted(
                "Euler-Maclaurin corrections did not converge".into(),
            ));
        }
        m *= 2;
    }
    let gamma = ratio_to_real(&sum, &wide)?.sub(&ln(&Real::from_u64(n), &wide)?, &wide);
    Ok(gamma.round(ctx))
}

/// `gamma = (eta'(1) + (ln 2)^2 / 2) / ln 2`, the inversion of the s = 1 identity.
pub fn gamma_from_eta_prime(eta_prime_1: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let l2 = ln2(ctx);
    let half_sq = l2.mul(&l2, ctx).mul_pow2(-1);
    eta_prime_1.add(&half_sq, ctx).div(&l2, ctx)
}

/// gamma via the accelerated `eta'(1)`; depends on the s = 1 identity, so it
/// is only a cross-check of [`gamma_harmonic`].
pub fn gamma_from_eta(ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let eta1 = eta_prime_alternating_accelerated(&Real::one(), default_order(&wide), &wide)?;
    Ok(gamma_from_eta_prime(&eta1.value, &wide)?.round(ctx))
}

/// `ln H(n) = sum_{k=1}^{n} k ln k`, accumulated in index order.
pub fn hyperfactorial_log(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::invalid("hyperfactorial needs n >= 1"));
    }
    let mut acc = Accumulator::new(ctx);
    for k in 2..=n {
        acc.add(&ln(&Real::from_u64(k), ctx)?.mul_int(k as i64, ctx));
    }
    Ok(acc.value())
}

/// `ln H(n) - (n^2/2 + n/2 + 1/12) ln n + n^2/4 - 1/(720 n^2)`; error `O(n^-4)`.
pub fn ln_glaisher_from_limit(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    if n < MIN_GLAISHER_N {
        return Err(Error::invalid(format!(
            "the Glaisher limit needs n >= {MIN_GLAISHER_N}"
        )));
    }
    // ln H(n) ~ n^2 ln n / 2 cancels against the power term
    let nf = n as f64;
    let lost = (nf * nf * nf.ln()).log10().ceil().max(0.0) as u32;
    let wide = ctx.widened(lost + 4);
    let big_n = BigInt::from(n);
    let n2 = &big_n * &big_n;
    let lh = hyperfactorial_log(n, &wide)?;
    // (6n^2 + 6n + 1) / 12
    let power = BigRational::new(&n2 * 6 + &big_n * 6 + 1, BigInt::from(12));
    let ln_n = ln(&Real::from_u64(n), &wide)?;
    let correction = BigRational::new(&n2 * &n2 * 180 - 1, &n2 * 720);
    let value = lh
        .sub(&ratio_to_real(&power, &wide)?.mul(&ln_n, &wide), &wide)
        .add(&ratio_to_real(&correction, &wide)?, &wide);
    Ok(value.round(ctx))
}

/// The Glaisher-Kinkelin constant from the hyperfactorial limit at `n`.
pub fn glaisher_from_limit(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(2);
    Ok(exp(&ln_glaisher_from_limit(n, &wide)?, &wide)?.round(ctx))
}

/// `zeta'(2) = 2 eta'(2) - ln 2 * pi^2 / 6`, with the accelerated `eta'(2)`.
pub fn zeta_prime_2(ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let eta2 =
        eta_prime_alternating_accelerated(&Real::from_u64(2), default_order(&wide), &wide)?;
    let z2 = zeta_2(&wide)?;
    Ok(eta2.value.mul_pow2(1).sub(&ln2(&wide).mul(&z2, &wide), &wide).round(ctx))
}

/// `pi^2 / 6`.
pub fn zeta_2(ctx: &PrecisionContext) -> Result<Real> {
    let p = pi(ctx);
    p.mul(&p, ctx).div_int(6, ctx)
}

/// `ln A = (gamma + ln(2 pi) - 6 zeta'(2) / pi^2) / 12`.
pub fn ln_glaisher_from_zeta_prime(
    zeta_prime2: &Real,
    gamma: &Real,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let p = pi(&wide);
    let ln_2pi = ln(&p.mul_pow2(1), &wide)?;
    let ratio = zeta_prime2.mul_int(6, &wide).div(&p.mul(&p, &wide), &wide)?;
    Ok(gamma.add(&ln_2pi, &wide).sub(&ratio, &wide).div_int(12, &wide)?.round(ctx))
}

/// `zeta'(2) = (pi^2 / 6)(gamma + ln(2 pi) - 12 ln A)`, the inverse of
/// [`ln_glaisher_from_zeta_prime`].
pub fn zeta_prime2_from_ln_glaisher(
    ln_glaisher: &Real,
    gamma: &Real,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let p = pi(&wide);
    let ln_2pi = ln(&p.mul_pow2(1), &wide)?;
    let bracket = gamma.add(&ln_2pi, &wide).sub(&ln_glaisher.mul_int(12, &wide), &wide);
    Ok(zeta_2(&wide)?.mul(&bracket, &wide).round(ctx))
}

pub fn ln_glaisher_from_zeta(ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(CONSTANT_GUARD_DIGITS);
    let z = zeta_prime_2(&wide)?;
    let g = gamma_harmonic(&wide)?;
    Ok(ln_glaisher_from_zeta_prime(&z, &g, &wide)?.round(ctx))
}

/// The Glaisher-Kinkelin constant from zeta'(2); the production route above 20 digits.
pub fn glaisher_from_zeta(ctx: &PrecisionContext) -> Result<Real> {
    let wide = ctx.widened(2);
    Ok(exp(&ln_glaisher_from_zeta(&wide)?, &wide)?.round(ctx))
}

/// How `ln A` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlaisherRoute {
    /// Hyperfactorial limit at the given `n`.
    Limit { n: u64 },
    /// From zeta'(2) and gamma.
    Zeta,
}

impl GlaisherRoute {
    /// Limit route with `n` large enough that the `1/(5040 n^4)` term is
    /// below `10^-(digits+2)`.
    pub fn auto_limit(digits: u32) -> Self {
        let n = (10f64.powi(digits as i32 + 2) / 5040.0).powf(0.25).ceil() as u64;
        GlaisherRoute::Limit {
            n: n.max(MIN_GLAISHER_N),
        }
    }

    pub fn ln_glaisher(&self, ctx: &PrecisionContext) -> Result<Real> {
        match *self {
            GlaisherRoute::Limit { n } => ln_glaisher_from_limit(n, ctx),
            GlaisherRoute::Zeta => ln_glaisher_from_zeta(ctx),
        }
    }
}

impl fmt::Display for GlaisherRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlaisherRoute::Limit { n } => write!(f, "limit(n={n})"),
            GlaisherRoute::Zeta => f.write_str("zeta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantSet {
    pub pi: Real,
    pub ln2: Real,
    pub gamma: Real,
    pub zeta2: Real,
    pub zeta_prime2: Real,
    pub ln_glaisher: Real,
    pub glaisher: Real,
    pub digits: u32,
    pub glaisher_route: GlaisherRoute,
}

type Cache = Mutex<HashMap<PrecisionContext, ConstantSet>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All constants at `ctx`, computed once per context and cached.
///
/// gamma comes from [`gamma_harmonic`]; A from the limit route up to
/// [`LIMIT_ROUTE_MAX_DIGITS`] digits and from zeta'(2) above.
pub fn constant_set(ctx: &PrecisionContext) -> Result<ConstantSet> {
    if let Some(set) = cache().lock().expect("constant cache").get(ctx) {
        return Ok(set.clone());
    }
    // computed outside the lock; concurrent fills produce identical values
    let set = compute_constant_set(ctx)?;
    let mut guard = cache().lock().expect("constant cache");
    Ok(guard.entry(*ctx).or_insert(set).clone())
}

fn compute_constant_set(ctx: &PrecisionContext) -> Result<ConstantSet> {
    let route = if ctx.digits() <= LIMIT_ROUTE_MAX_DIGITS {
        GlaisherRoute::auto_limit(ctx.digits())
    } else {
        GlaisherRoute::Zeta
    };
    let wide = ctx.widened(2);
    let ln_glaisher = route.ln_glaisher(&wide)?;
    Ok(ConstantSet {
        pi: pi(ctx),
        ln2: ln2(ctx),
        gamma: gamma_harmonic(ctx)?,
        zeta2: zeta_2(ctx)?,
        zeta_prime2: zeta_prime_2(ctx)?,
        glaisher: exp(&ln_glaisher, &wide)?.round(ctx),
        ln_glaisher: ln_glaisher.round(ctx),
        digits: ctx.digits(),
        glaisher_route: route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::make_context;

    fn ctx(d: u32) -> PrecisionContext {
        make_context(d).unwrap()
    }

    #[test]
    fn bernoulli_numbers() {
        let b = even_bernoulli(4);
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b, vec![q(1, 1), q(1, 6), q(-1, 30), q(1, 42), q(-1, 30)]);
    }

    #[test]
    fn gamma_thirty_digits() {
        let c = ctx(30);
        assert_eq!(
            gamma_harmonic(&c).unwrap().to_context_string(&c),
            "0.577215664901532860606512090082"
        );
        let c15 = ctx(15);
        assert_eq!(gamma_harmonic(&c15).unwrap().to_context_string(&c15), "0.577215664901533");
    }

    #[test]
    fn gamma_routes_agree() {
        let c = ctx(30);
        let a = gamma_harmonic(&c).unwrap();
        let b = gamma_from_eta(&c).unwrap();
        assert!(a.sub(&b, &c).abs().to_f64() < 1e-28);
    }

    #[test]
    fn gamma_formula_shape() {
        let c = ctx(20);
        let g = gamma_from_eta_prime(&Real::zero(), &c).unwrap();
        assert_eq!(g, ln2(&c).mul_pow2(-1).round(&c));
    }

    #[test]
    fn small_hyperfactorials() {
        let c = ctx(30);
        assert!(hyperfactorial_log(1, &c).unwrap().is_zero());
        for (n, h) in [(3, 108u64), (4, 27648)] {
            let expect = ln(&Real::from_u64(h), &c).unwrap();
            let got = hyperfactorial_log(n, &c).unwrap();
            assert!(got.sub(&expect, &c).abs().to_f64() < 1e-36);
        }
        assert!(hyperfactorial_log(0, &c).is_err());
    }

    #[test]
    fn glaisher_thirty_digits() {
        let c = ctx(30);
        assert_eq!(
            glaisher_from_zeta(&c).unwrap().to_context_string(&c),
            "1.28242712910062263687534256887"
        );
        assert_eq!(
            ln_glaisher_from_zeta(&c).unwrap().to_decimal_string(15, Default::default()),
            "0.248754477033784"
        );
        assert_eq!(
            zeta_prime_2(&c).unwrap().to_context_string(&c),
            "-0.937548254315843753702574094568"
        );
    }

    #[test]
    fn glaisher_limit_converges_like_n_to_minus_four() {
        let c = ctx(30);
        let reference = glaisher_from_limit(400, &c).unwrap();
        let e10 = glaisher_from_limit(10, &c).unwrap().sub(&reference, &c).abs().to_f64();
        let e20 = glaisher_from_limit(20, &c).unwrap().sub(&reference, &c).abs().to_f64();
        let ratio = e10 / e20;
        assert!((13.0..19.0).contains(&ratio), "ratio {ratio}");
        let z = glaisher_from_zeta(&c).unwrap();
        assert!(reference.sub(&z, &c).abs().to_f64() < 1e-10);
        assert!(glaisher_from_limit(9, &c).is_err());
    }

    #[test]
    fn zeta_prime_round_trip() {
        let c = ctx(30);
        let g = gamma_harmonic(&c).unwrap();
        let z = zeta_prime_2(&c).unwrap();
        let la = ln_glaisher_from_zeta_prime(&z, &g, &c).unwrap();
        let back = zeta_prime2_from_ln_glaisher(&la, &g, &c).unwrap();
        assert_eq!(back.to_context_string(&c), z.to_context_string(&c));
    }

    #[test]
    fn constant_set_is_cached_and_consistent() {
        let c = ctx(30);
        let a = constant_set(&c).unwrap();
        let b = constant_set(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.glaisher_route, GlaisherRoute::Zeta);
        assert_eq!(a.pi.to_context_string(&c), "3.14159265358979323846264338328");
        let e = exp(&a.ln_glaisher, &c).unwrap();
        assert!(e.sub(&a.glaisher, &c).abs() <= a.glaisher.ulp(&c).mul_int(2, &c));
    }

    #[test]
    fn constant_set_uses_the_limit_at_low_precision() {
        let c = ctx(12);
        let set = constant_set(&c).unwrap();
        assert!(matches!(set.glaisher_route, GlaisherRoute::Limit { .. }));
        assert_eq!(set.glaisher.to_context_string(&c), "1.28242712910");
    }
}
