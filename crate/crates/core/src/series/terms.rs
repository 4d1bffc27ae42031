//! Term generators shared by the series evaluators and the product module.

use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::numeric::{atanh_inv, exp, ln, pow, PrecisionContext, Real};

/// Extra digits used while forming a term that cancels.
pub(crate) const TERM_GUARD_DIGITS: u32 = 10;

/// Integer exponents up to this use exact integer powers.
const SMALL_INTEGER_EXPONENT: i64 = 16;

fn small_integer(s: &Real) -> Option<u32> {
    s.to_i64()
        .filter(|v| (0..=SMALL_INTEGER_EXPONENT).contains(v))
        .map(|v| v as u32)
}

/// `k^-s` for a positive integer `k`.
pub fn inv_pow(k: u64, s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if k == 0 {
        return Err(Error::domain("k^-s needs k >= 1"));
    }
    match small_integer(s) {
        Some(e) => {
            let p = BigUint::from(k).pow(e);
            Real::one().div(&Real::from_parts(false, p, 0), ctx)
        }
        None => pow(&Real::from_u64(k), &s.neg(), ctx),
    }
}

/// `ln(m) / m^s`.
pub fn log_weight(m: u64, s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let l = ln(&Real::from_u64(m), ctx)?;
    if l.is_zero() || s.is_zero() {
        return Ok(l);
    }
    match small_integer(s) {
        Some(e) => {
            let p = BigUint::from(m).pow(e);
            l.div(&Real::from_parts(false, p, 0), ctx)
        }
        None => Ok(l.mul(&exp(&s.neg().mul(&l, ctx), ctx)?, ctx)),
    }
}

/// The `n`-th merged bracket of the grouped derivative series,
/// `t_n = 2 ln(2n)/(2n)^s - ln(2n-1)/(2n-1)^s - ln(2n+1)/(2n+1)^s`,
/// which is also the log of the `n`-th pair of product factors.
///
/// For `s = 0` it is evaluated as `ln(4n^2 / (4n^2 - 1)) = 2 atanh(1 / (8n^2 - 1))`,
/// which avoids cancelling three nearly equal logarithms.
pub fn pair_log_factor(n: u64, s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    PairTerms::new(s, ctx)?.term_at(n)
}

/// Sequential generator of `t_1, t_2, ...` reusing the shared odd endpoint.
///
/// Produces exactly the values of [`pair_log_factor`].
#[derive(Debug, Clone)]
pub struct PairTerms {
    s: Real,
    ctx: PrecisionContext,
    wide: PrecisionContext,
    next: u64,
    // ln(2n-1)/(2n-1)^s for the upcoming n
    left: Option<Real>,
}

impl PairTerms {
    pub fn new(s: &Real, ctx: &PrecisionContext) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::domain("grouped derivative terms need s >= 0"));
        }
        Ok(PairTerms {
            s: s.clone(),
            ctx: *ctx,
            wide: ctx.widened(TERM_GUARD_DIGITS),
            next: 1,
            left: None,
        })
    }

    fn term_at(&mut self, n: u64) -> Result<Real> {
        if n == 0 {
            return Err(Error::invalid("pair index starts at 1"));
        }
        self.next = n;
        self.left = None;
        self.next_term()
    }

    /// Index of the term the next call to [`PairTerms::next_term`] returns.
    pub fn next_index(&self) -> u64 {
        self.next
    }

    pub fn next_term(&mut self) -> Result<Real> {
        let n = self.next;
        self.next += 1;
        if self.s.is_zero() {
            let q = BigUint::from(n) * BigUint::from(n) * 8u32 - 1u32;
            return Ok(atanh_inv(&q, &self.wide)?.mul_pow2(1).round(&self.ctx));
        }
        let left = match self.left.take() {
            Some(v) => v,
            None => log_weight(2 * n - 1, &self.s, &self.wide)?,
        };
        let mid = log_weight(2 * n, &self.s, &self.wide)?;
        let right = log_weight(2 * n + 1, &self.s, &self.wide)?;
        let t = mid
            .mul_pow2(1)
            .sub(&left, &self.wide)
            .sub(&right, &self.wide)
            .round(&self.ctx);
        self.left = Some(right);
        Ok(t)
    }
}
