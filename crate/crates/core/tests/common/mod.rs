//! Oracles for the integration tests. Everything here is plain integer or
//! rational arithmetic, independent of the crate's own elementary functions.
#![allow(dead_code)]

pub mod honesty;

use etawallis::{make_context, PrecisionContext, Real};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// A decimal fixed-point number `value / 10^scale`.
#[derive(Debug, Clone)]
pub struct Fixed {
    pub value: BigInt,
    pub scale: u32,
}

fn ten_pow(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

impl Fixed {
    /// Truncates to `digits` decimals after the point, as a string.
    pub fn decimals(&self, digits: u32) -> String {
        let v = &self.value / ten_pow(self.scale - digits);
        let neg = v.is_negative();
        let s = v.abs().to_string();
        let s = format!("{:0>width$}", s, width = digits as usize + 1);
        let (int, frac) = s.split_at(s.len() - digits as usize);
        format!("{}{int}.{frac}", if neg { "-" } else { "" })
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> Real {
        Real::from_ratio(&self.value, &ten_pow(self.scale), ctx).unwrap()
    }
}

/// `atan(1/q) * 10^scale` by its Taylor series.
fn atan_inv(q: u64, scale: u32) -> BigInt {
    let one = ten_pow(scale);
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = &one / &q;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &q2;
        k += 1;
    }
    sum
}

/// Machin: `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_machin(digits: u32) -> Fixed {
    let scale = digits + 20;
    let value = atan_inv(5, scale) * 16 - atan_inv(239, scale) * 4;
    Fixed { value, scale }
}

/// `ln 2 = sum_{k>=1} 1 / (k 2^k)`.
pub fn ln2_series(digits: u32) -> Fixed {
    let scale = digits + 20;
    let mut power = ten_pow(scale);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    loop {
        power /= 2;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(k);
        k += 1;
    }
    Fixed { value: sum, scale }
}

/// `e = sum 1/k!`.
pub fn e_taylor(digits: u32) -> Fixed {
    let scale = digits + 20;
    let mut term = ten_pow(scale);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term;
        term /= BigInt::from(k);
        k += 1;
    }
    Fixed { value: sum, scale }
}

/// `floor(x^(1/n) * 10^scale)` by integer Newton iteration.
pub fn root(x: u64, n: u32, digits: u32) -> Fixed {
    let scale = digits + 20;
    let big = BigInt::from(x) * ten_pow(scale * n);
    Fixed {
        value: big.nth_root(n),
        scale,
    }
}

/// `prod_{n<=N} 4n^2 / (4n^2 - 1)` exactly.
pub fn wallis_rational(pairs: u64) -> BigRational {
    let mut p = BigRational::one();
    for n in 1..=pairs {
        let four_n2 = BigInt::from(4 * n * n);
        p *= BigRational::new(four_n2.clone(), four_n2 - 1);
    }
    p
}

/// `sum_{k=1}^{n} (-1)^(k+1) / k^2` exactly.
pub fn alternating_basel_rational(n: u64) -> BigRational {
    let mut s = BigRational::zero();
    for k in 1..=n {
        let t = BigRational::new(BigInt::one(), BigInt::from(k * k));
        if k % 2 == 1 {
            s += t
        } else {
            s -= t
        }
    }
    s
}

pub fn rational_to_real(q: &BigRational, ctx: &PrecisionContext) -> Real {
    Real::from_ratio(q.numer(), q.denom(), ctx).unwrap()
}

/// `eta(-1/2) = sum (-1)^(k+1) sqrt(k)` by the Euler transform
/// `sum_{n>=0} (-1)^n (Delta^n a)_1 / 2^(n+1)` with `a_k = sqrt k`,
/// square roots taken as exact integer roots at `digits + 60` decimals.
pub fn eta_minus_half_euler(digits: u32) -> Fixed {
    let scale = digits + 60;
    let terms = (4 * digits + 80) as usize;
    let a: Vec<BigInt> = (1..=terms as u64 + 1)
        .map(|k| (BigInt::from(k) * ten_pow(2 * scale)).sqrt())
        .collect();
    let mut sum = BigInt::zero();
    let mut row = a;
    let mut denom = BigInt::from(2);
    for n in 0..terms {
        // row[0] = (Delta^n a)_1
        let term = &row[0] / &denom;
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        denom *= 2;
    }
    Fixed {
        value: sum,
        scale,
    }
}

/// An exact rational rounded half-even to `decimals` places after the point.
pub fn ratio_decimal(q: &BigRational, decimals: u32) -> String {
    let scaled = q * BigRational::from_integer(ten_pow(decimals));
    let (int, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2;
    let mut v = int;
    if twice > *scaled.denom() || (twice == *scaled.denom() && v.is_odd()) {
        v += 1;
    }
    let s = format!("{v:0>width$}", width = decimals as usize + 1);
    let (a, b) = s.split_at(s.len() - decimals as usize);
    format!("{a}.{b}")
}

pub fn ctx(digits: u32) -> PrecisionContext {
    make_context(digits).unwrap()
}

pub fn real(s: &str, ctx: &PrecisionContext) -> Real {
    Real::parse(s, ctx).unwrap()
}

/// `|a - b|` as an `f64`, computed exactly before conversion.
pub fn abs_diff(a: &Real, b: &Real) -> f64 {
    a.add_exact(&b.neg()).abs().to_f64()
}

/// `|a - b| <= bound`, exactly.
pub fn within(a: &Real, b: &Real, bound: &Real) -> bool {
    a.add_exact(&b.neg()).abs() <= *bound
}

/// One unit in the last printed place of `x` at `digits` significant digits.
pub fn output_ulp(x: &Real, digits: u32, ctx: &PrecisionContext) -> Real {
    let exponent = x.abs().to_f64().log10().floor() as i64 - digits as i64 + 1;
    real(&format!("1e{exponent}"), ctx)
}
