use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::PrecisionContext;
use crate::error::{Error, Result};

/// A finite real number `(-1)^neg * mag * 2^exp`.
///
/// The representation is canonical: `mag` is odd, or the value is zero with
/// `neg == false` and `exp == 0`. Structural equality is therefore numeric
/// equality. Values are immutable; every arithmetic operation takes the
/// context it rounds to (round-half-even).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    neg: bool,
    mag: BigUint,
    exp: i64,
}

/// The four field operations, for callers that select one at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_op(a: &Real, b: &Real, op: FieldOp, ctx: &PrecisionContext) -> Result<Real> {
    Ok(match op {
        FieldOp::Add => a.add(b, ctx),
        FieldOp::Sub => a.sub(b, ctx),
        FieldOp::Mul => a.mul(b, ctx),
        FieldOp::Div => a.div(b, ctx)?,
    })
}

impl Real {
    pub fn zero() -> Self {
        Real {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Real::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        Real::from_parts(false, BigUint::from(v), 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Real::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0)
    }

    /// Exact conversion of an integer of any size (no rounding).
    pub fn from_bigint(v: &BigInt) -> Self {
        Real::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0)
    }

    /// Exact conversion; `None` for NaN and infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Real::zero());
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Some(Real::from_parts(neg, BigUint::from(mant), exp))
    }

    /// `num / den` rounded to the context.
    pub fn from_ratio(num: &BigInt, den: &BigInt, ctx: &PrecisionContext) -> Result<Self> {
        Real::from_bigint(num).div(&Real::from_bigint(den), ctx)
    }

    /// Builds a canonical value from raw parts without rounding.
    pub(crate) fn from_parts(neg: bool, mag: BigUint, exp: i64) -> Self {
        if mag.is_zero() {
            return Real::zero();
        }
        let tz = mag.trailing_zeros().unwrap_or(0);
        Real {
            neg,
            mag: mag >> tz,
            exp: exp + tz as i64,
        }
    }

    pub(crate) fn parts(&self) -> (bool, &BigUint, i64) {
        (self.neg, &self.mag, self.exp)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0
    }

    /// The value as an `i64`, when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() || self.exp > 63 {
            return None;
        }
        let m = (&self.mag << self.exp as u64).to_i64()?;
        Some(if self.neg { -m } else { m })
    }

    /// `floor(log2 |x|)`; `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mag.bits() as i64 - 1 + self.exp)
        }
    }

    /// Nearest `f64` (approximate; saturates to 0 or infinity outside range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mag.bits();
        let (top, shift) = if bits > 64 {
            ((&self.mag >> (bits - 64)).to_u64().unwrap(), bits - 64)
        } else {
            (self.mag.to_u64().unwrap(), 0)
        };
        let e = self.exp + shift as i64;
        let mut v = top as f64;
        // scale in steps to avoid premature overflow of 2^e
        let mut e = e;
        while e > 0 {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= 2f64.powi(step as i32);
            e += step;
        }
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn neg(&self) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real {
            neg: !self.neg,
            mag: self.mag.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            neg: false,
            mag: self.mag.clone(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return Real::zero();
        }
        Real {
            neg: self.neg,
            mag: self.mag.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to the context precision.
    pub fn round(&self, ctx: &PrecisionContext) -> Real {
        self.round_bits(ctx.prec_bits())
    }

    pub(crate) fn round_bits(&self, prec: u64) -> Real {
        if self.mag.bits() <= prec {
            return self.clone();
        }
        round_parts(self.neg, self.mag.clone(), self.exp, false, prec)
    }

    /// One unit in the last place of `self` at context precision.
    pub fn ulp(&self, ctx: &PrecisionContext) -> Real {
        match self.top_bit() {
            None => Real::zero(),
            Some(t) => Real::one().mul_pow2(t - ctx.prec_bits() as i64 + 1),
        }
    }

    pub fn add(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.add_bits(other, ctx.prec_bits())
    }

    pub fn sub(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.add_bits(&other.neg(), ctx.prec_bits())
    }

    pub fn mul(&self, other: &Real, ctx: &PrecisionContext) -> Real {
        self.mul_bits(other, ctx.prec_bits())
    }

    pub fn div(&self, other: &Real, ctx: &PrecisionContext) -> Result<Real> {
        self.div_bits(other, ctx.prec_bits())
    }

    pub fn mul_int(&self, k: i64, ctx: &PrecisionContext) -> Real {
        self.mul(&Real::from_i64(k), ctx)
    }

    pub fn div_int(&self, k: i64, ctx: &PrecisionContext) -> Result<Real> {
        self.div(&Real::from_i64(k), ctx)
    }

    pub fn sqrt(&self, ctx: &PrecisionContext) -> Result<Real> {
        self.sqrt_bits(ctx.prec_bits())
    }

    /// Exact sum, no rounding. Only for operands of comparable magnitude.
    pub fn add_exact(&self, other: &Real) -> Real {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mag << (self.exp - e) as u64;
        let b = &other.mag << (other.exp - e) as u64;
        let (neg, mag) = signed_add(self.neg, a, other.neg, b);
        Real::from_parts(neg, mag, e)
    }

    pub(crate) fn add_bits(&self, other: &Real, prec: u64) -> Real {
        if self.is_zero() {
            return other.round_bits(prec);
        }
        if other.is_zero() {
            return self.round_bits(prec);
        }
        let (big, small) = if self.top_bit() >= other.top_bit() {
            (self, other)
        } else {
            (other, self)
        };
        let tb = big.top_bit().unwrap();
        let ts = small.top_bit().unwrap();
        // `small` only matters as a sticky bit once it sits entirely below
        // both big's rounding position and big's lowest set bit.
        let floor = (tb - prec as i64 - 3).min(big.exp);
        if ts < floor - 1 {
            let proxy = Real {
                neg: small.neg,
                mag: BigUint::one(),
                exp: floor - 2,
            };
            return big.add_exact(&proxy).round_bits(prec);
        }
        let e = big.exp.min(small.exp);
        let a = &big.mag << (big.exp - e) as u64;
        let b = &small.mag << (small.exp - e) as u64;
        let (neg, mag) = signed_add(big.neg, a, small.neg, b);
        round_parts(neg, mag, e, false, prec)
    }

    pub(crate) fn mul_bits(&self, other: &Real, prec: u64) -> Real {
        if self.is_zero() || other.is_zero() {
            return Real::zero();
        }
        round_parts(
            self.neg != other.neg,
            &self.mag * &other.mag,
            self.exp + other.exp,
            false,
            prec,
        )
    }

    pub(crate) fn div_bits(&self, other: &Real, prec: u64) -> Result<Real> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Real::zero());
        }
        let shift = (prec + 2 + other.mag.bits()).saturating_sub(self.mag.bits());
        let (q, r) = (&self.mag << shift).div_rem(&other.mag);
        Ok(round_parts(
            self.neg != other.neg,
            q,
            self.exp - other.exp - shift as i64,
            !r.is_zero(),
            prec,
        ))
    }

    pub(crate) fn sqrt_bits(&self, prec: u64) -> Result<Real> {
        if self.neg {
            return Err(Error::domain("square root of a negative number"));
        }
        if self.is_zero() {
            return Ok(Real::zero());
        }
        let want = 2 * prec + 4;
        let mut shift = want.saturating_sub(self.mag.bits());
        if (self.exp - shift as i64).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = &self.mag << shift;
        let r = n.sqrt();
        let sticky = &r * &r != n;
        Ok(round_parts(false, r, (self.exp - shift as i64) / 2, sticky, prec))
    }
}

fn signed_add(an: bool, a: BigUint, bn: bool, b: BigUint) -> (bool, BigUint) {
    if an == bn {
        (an, a + b)
    } else if a >= b {
        (an, a - b)
    } else {
        (bn, b - a)
    }
}

/// Rounds `(-1)^neg * mag * 2^exp` (plus a sticky tail below `mag` when
/// `sticky`) to `prec` bits, round-half-even.
pub(crate) fn round_parts(neg: bool, mag: BigUint, exp: i64, sticky: bool, prec: u64) -> Real {
    let bits = mag.bits();
    if bits <= prec {
        debug_assert!(!sticky, "sticky rounding needs more than prec bits");
        return Real::from_parts(neg, mag, exp);
    }
    let shift = bits - prec;
    let mut q = &mag >> shift;
    let half = mag.bit(shift - 1);
    let below = sticky || mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
    if half && (below || q.bit(0)) {
        q += 1u32;
    }
    Real::from_parts(neg, q, exp + shift as i64)
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, 0) => Ordering::Equal,
            (sign, _) => {
                let mag_order = match self.top_bit().cmp(&other.top_bit()) {
                    Ordering::Equal => {
                        let e = self.exp.min(other.exp);
                        let a = &self.mag << (self.exp - e) as u64;
                        let b = &other.mag << (other.exp - e) as u64;
                        a.cmp(&b)
                    }
                    o => o,
                };
                if sign < 0 {
                    mag_order.reverse()
                } else {
                    mag_order
                }
            }
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Real({}{} * 2^{} ~ {})",
            if self.neg { "-" } else { "" },
            self.mag,
            self.exp,
            self.to_f64()
        )
    }
}
