//! Decimal string conversion, the only serialization of [`Real`].
//!
//! Output is exact: the binary value is scaled by a power of ten with integer
//! arithmetic and rounded half-even to the requested significant digits.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Largest decimal exponent accepted by the parser.
const MAX_PARSE_EXPONENT: i64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    Positional,
    Scientific,
    /// Positional when the decimal exponent lies in `[-7, digits)`.
    #[default]
    Auto,
}

/// Significant digits of a nonzero value: `0.d1 d2 ... = digits * 10^(exponent - len + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalDigits {
    pub negative: bool,
    pub digits: String,
    /// Decimal exponent of the leading digit.
    pub exponent: i64,
}

fn pow10(n: u64) -> BigUint {
    BigUint::from(10u32).pow(n)
}

impl Real {
    /// Rounds to `sig` significant decimal digits (half-even). `None` for zero.
    pub fn decimal_digits(&self, sig: u32) -> Option<DecimalDigits> {
        assert!(sig >= 1, "need at least one significant digit");
        let (neg, mag, exp) = self.parts();
        let top = self.top_bit()?;
        let mut e10 = (top as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let lower = pow10(sig as u64 - 1);
        let upper = pow10(sig as u64);
        loop {
            let scale = sig as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if exp >= 0 {
                num <<= exp as u64;
            } else {
                den <<= (-exp) as u64;
            }
            if scale >= 0 {
                num *= pow10(scale as u64);
            } else {
                den *= pow10((-scale) as u64);
            }
            let (mut q, r) = num.div_rem(&den);
            let twice = r << 1u32;
            if twice > den || (twice == den && q.is_odd()) {
                q += 1u32;
            }
            if q >= upper {
                e10 += 1;
            } else if q < lower {
                e10 -= 1;
            } else {
                return Some(DecimalDigits {
                    negative: neg,
                    digits: q.to_str_radix(10),
                    exponent: e10,
                });
            }
        }
    }

    pub fn to_decimal_string(&self, sig: u32, notation: Notation) -> String {
        let Some(d) = self.decimal_digits(sig) else {
            return "0".to_string();
        };
        let e = d.exponent;
        let positional = match notation {
            Notation::Positional => true,
            Notation::Scientific => false,
            Notation::Auto => (-7..sig as i64).contains(&e),
        };
        let mut out = String::new();
        if d.negative {
            out.push('-');
        }
        let digits = d.digits.as_str();
        if !positional {
            out.push_str(&digits[..1]);
            if digits.len() > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            out.push_str(&e.to_string());
        } else if e < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e - 1) as usize));
            out.push_str(digits);
        } else if (e as usize) + 1 < digits.len() {
            let split = e as usize + 1;
            out.push_str(&digits[..split]);
            out.push('.');
            out.push_str(&digits[split..]);
        } else {
            out.push_str(digits);
            out.extend(std::iter::repeat_n('0', e as usize + 1 - digits.len()));
        }
        out
    }

    /// Rendering at the context's requested digits.
    pub fn to_context_string(&self, ctx: &PrecisionContext) -> String {
        self.to_decimal_string(ctx.digits(), Notation::Auto)
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`, rounding to the context.
    pub fn parse(input: &str, ctx: &PrecisionContext) -> Result<Real> {
        let bad = || Error::Parse(input.to_string());
        let s = input.trim();
        let (neg, s) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((a, b)) => (a, b),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all_digits = format!("{int_part}{frac_part}");
        let n = BigUint::parse_bytes(all_digits.as_bytes(), 10).ok_or_else(bad)?;
        if n.is_zero() {
            return Ok(Real::zero());
        }
        let e10 = exponent
            .checked_sub(frac_part.len() as i64)
            .filter(|e| e.abs() <= MAX_PARSE_EXPONENT)
            .ok_or_else(|| Error::Range(format!("exponent of {input:?} is out of range")))?;
        let value = if e10 >= 0 {
            Real::from_parts(neg, n * pow10(e10 as u64), 0).round(ctx)
        } else {
            Real::from_parts(neg, n, 0).div(&Real::from_parts(false, pow10((-e10) as u64), 0), ctx)?
        };
        Ok(value)
    }
}

/// `{:.N}` selects N significant digits (default 20).
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20).max(1) as u32;
        f.write_str(&self.to_decimal_string(sig, Notation::Auto))
    }
}
