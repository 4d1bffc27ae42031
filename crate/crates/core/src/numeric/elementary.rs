//! ln, exp, pow, pi and friends.
//!
//! Series are evaluated on fixed-point integers (`value * 2^bits`) at a few
//! dozen bits beyond the target precision, then rounded once into a [`Real`].
//!
//! * `ln`: `x = y * 2^k` with `y` in `[1/sqrt2, sqrt2)`, then
//!   `ln y = 2 atanh((y - 1) / (y + 1))`.
//! * `exp`: `x = k ln2 + r`, `r` halved `j` times, Taylor series, `j` squarings.
//! * `pi`: Chudnovsky series.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use super::real::round_parts;
use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Largest supported decimal exponent magnitude of a result.
pub const MAX_DECIMAL_EXPONENT: i64 = 10_000_000;

const SERIES_GUARD_BITS: u64 = 32;

fn max_exp_arg() -> f64 {
    MAX_DECIMAL_EXPONENT as f64 * std::f64::consts::LN_10
}

/// Signed shift right that truncates toward zero.
fn shr_trunc(x: &BigInt, n: u64) -> BigInt {
    let mag = x.magnitude() >> n;
    BigInt::from_biguint(x.sign(), mag)
}

/// `x * 2^bits`, rounded toward zero.
fn to_fixed(x: &Real, bits: u64) -> BigInt {
    let (neg, mag, exp) = x.parts();
    let shift = exp + bits as i64;
    let m = if shift >= 0 {
        mag << shift as u64
    } else {
        mag >> (-shift) as u64
    };
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, m)
}

fn from_fixed(v: BigInt, bits: u64, prec: u64) -> Real {
    let neg = v.sign() == Sign::Minus;
    round_parts(neg, v.magnitude().clone(), -(bits as i64), false, prec)
}

/// `atanh(z)` for fixed-point `|z| < 1`, by the odd Taylor series.
fn atanh_fixed(z: &BigInt, bits: u64) -> BigInt {
    let neg = z.sign() == Sign::Minus;
    let z = z.magnitude();
    let z2 = (z * z) >> bits;
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = (&power * &z2) >> bits;
        if power.is_zero() {
            break;
        }
        sum += &power / BigUint::from(2 * k + 1);
        k += 1;
    }
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, sum)
}

/// `atanh(1/q)` in fixed point, for an integer `q >= 2`.
fn atanh_inv_fixed(q: &BigUint, bits: u64) -> BigUint {
    let q2 = q * q;
    let mut power = (BigUint::one() << bits) / q;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        sum += &power / BigUint::from(2 * k + 1);
        k += 1;
    }
    sum
}

fn ln2_fixed(bits: u64) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let v = atanh_inv_fixed(&BigUint::from(3u32), bits + 8) << 1u32;
    BigInt::from(v >> 8u32)
}

/// `ln 2` at context precision.
pub fn ln2(ctx: &PrecisionContext) -> Real {
    let bits = ctx.prec_bits() + SERIES_GUARD_BITS;
    from_fixed(ln2_fixed(bits), bits, ctx.prec_bits())
}

/// `atanh(1/q)` for an integer `q >= 2`, at context precision.
///
/// `ln(p / (p - 1)) = 2 atanh(1 / (2p - 1))`; with tiny arguments this is far
/// cheaper and better conditioned than subtracting two logarithms.
pub fn atanh_inv(q: &BigUint, ctx: &PrecisionContext) -> Result<Real> {
    if *q < BigUint::from(2u32) {
        return Err(Error::domain("atanh(1/q) needs q >= 2"));
    }
    // the result is ~1/q; keep prec bits below its leading bit
    let bits = ctx.prec_bits() + SERIES_GUARD_BITS + q.bits();
    let v = atanh_inv_fixed(q, bits);
    Ok(from_fixed(BigInt::from(v), bits, ctx.prec_bits()))
}

pub fn ln(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    ln_bits(x, ctx.prec_bits())
}

pub(crate) fn ln_bits(x: &Real, prec: u64) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::domain("ln requires x > 0"));
    }
    if *x == Real::one() {
        return Ok(Real::zero());
    }
    let (_, mag, exp) = x.parts();
    let mut k = mag.bits() as i64 - 1 + exp;
    // y = x / 2^k in [1, 2); move to [1/sqrt2, sqrt2)
    {
        let y_top = mag >> (mag.bits().saturating_sub(32));
        let y = y_top.to_u64().unwrap() as f64 / 2f64.powi(y_top.bits() as i32 - 1);
        if y > std::f64::consts::SQRT_2 {
            k += 1;
        }
    }
    let y = x.mul_pow2(-k);
    // near 1 the result is small: add the bits lost to cancellation in y - 1
    let extra = match y.add_exact(&Real::from_i64(-1)).top_bit() {
        Some(t) if t < 0 => (-t) as u64,
        _ => 0,
    };
    let k_bits = 64 - k.unsigned_abs().leading_zeros() as u64;
    let bits = prec + SERIES_GUARD_BITS + extra + k_bits;
    let one = BigInt::one() << bits;
    let yf = to_fixed(&y, bits);
    let num = &yf - &one;
    let den = &yf + &one;
    let z = (num << bits) / den;
    let mut v = atanh_fixed(&z, bits) << 1u32;
    if k != 0 {
        v += ln2_fixed(bits) * BigInt::from(k);
    }
    Ok(from_fixed(v, bits, prec))
}

pub fn exp(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    exp_bits(x, ctx.prec_bits())
}

pub(crate) fn exp_bits(x: &Real, prec: u64) -> Result<Real> {
    if x.is_zero() {
        return Ok(Real::one());
    }
    let xf = x.to_f64();
    if xf.abs() > max_exp_arg() {
        return Err(Error::Range(format!(
            "exp argument {xf:e} exceeds the supported exponent range"
        )));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let k_bits = 64 - k.unsigned_abs().leading_zeros() as u64;
    // r = x - k ln2 to rbits; r / 2^halvings is the same integer read at
    // wbits, and each of the final squarings doubles its relative error
    let halvings = 4 + (prec as f64).sqrt() as u64 / 2;
    let rbits = prec + SERIES_GUARD_BITS;
    let wbits = rbits + halvings;
    let ln2 = ln2_fixed(rbits + k_bits);
    let r = to_fixed(x, rbits) - shr_trunc(&(ln2 * BigInt::from(k)), k_bits);
    let one = BigInt::one() << wbits;
    let mut sum = &one + &r;
    let mut term = r.clone();
    let mut i = 2u64;
    loop {
        term = shr_trunc(&(&term * &r), wbits) / BigInt::from(i);
        if term.is_zero() {
            break;
        }
        sum += &term;
        i += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> wbits;
    }
    let result = from_fixed(sum, wbits, prec).mul_pow2(k);
    check_range(&result)?;
    Ok(result)
}

fn check_range(x: &Real) -> Result<()> {
    if let Some(t) = x.top_bit() {
        let dec = t as f64 * std::f64::consts::LOG10_2;
        if dec.abs() > MAX_DECIMAL_EXPONENT as f64 {
            return Err(Error::Range(format!(
                "result exponent 10^{dec:.0} is outside the supported range"
            )));
        }
    }
    Ok(())
}

/// `x^y = exp(y ln x)` for `x > 0`.
pub fn pow(x: &Real, y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    pow_bits(x, y, ctx.prec_bits())
}

pub(crate) fn pow_bits(x: &Real, y: &Real, prec: u64) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::domain("pow requires a positive base"));
    }
    if y.is_zero() || *x == Real::one() {
        return Ok(Real::one());
    }
    if *y == Real::one() {
        return Ok(x.round_bits(prec));
    }
    // |y ln x| amplifies the relative error of ln x
    let ln_x = (x.top_bit().unwrap() as f64 + 1.0) * std::f64::consts::LN_2;
    let magnitude = (y.to_f64() * ln_x).abs().max(1.0);
    let extra = 16 + magnitude.log2().ceil() as u64;
    let wide = prec + extra;
    let l = ln_bits(x, wide)?;
    let p = y.mul_bits(&l, wide);
    Ok(exp_bits(&p, wide)?.round_bits(prec))
}

/// `pi` at context precision.
pub fn pi(ctx: &PrecisionContext) -> Real {
    let prec = ctx.prec_bits();
    let bits = prec + SERIES_GUARD_BITS;
    from_fixed(pi_fixed(bits), bits, prec)
}

fn pi_fixed(bits: u64) -> BigInt {
    // 1/pi = 12 sum (-1)^k (6k)! (13591409 + 545140134 k) / ((3k)! (k!)^3 640320^(3k + 3/2))
    let one = BigInt::one() << bits;
    let c3_over_24 = BigInt::from(10_939_058_860_032_000u64);
    let mut a = one.clone();
    let mut sum_a = one.clone();
    let mut sum_b = BigInt::zero();
    let mut k = 1u64;
    loop {
        let num = BigInt::from(6 * k - 5) * BigInt::from(2 * k - 1) * BigInt::from(6 * k - 1);
        let den = BigInt::from(k).pow(3) * &c3_over_24;
        a = -(a * num) / den;
        if a.is_zero() {
            break;
        }
        sum_a += &a;
        sum_b += &a * BigInt::from(k);
        k += 1;
    }
    let total = sum_a * 13_591_409u64 + sum_b * 545_140_134u64;
    let sqrt_c = (BigInt::from(10_005u32) * &one * &one).sqrt();
    (sqrt_c * 426_880u64 * one) / total
}
