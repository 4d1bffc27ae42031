use crate::error::{Error, Result};

/// Smallest number of requested digits accepted by [`make_context`].
pub const MIN_DIGITS: u32 = 10;
/// Floor of the guard-digit policy.
pub const MIN_GUARD_DIGITS: u32 = 8;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Requested output digits plus internal guard digits.
///
/// Every [`Real`](super::Real) operation rounds to `prec_bits()` binary
/// digits, which covers `digits + guard_digits` decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

/// Builds a context with the default guard policy `max(8, ceil(digits / 10))`.
pub fn make_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard_digits(digits, MIN_GUARD_DIGITS.max(digits.div_ceil(10)))
    }

    pub fn with_guard_digits(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InsufficientPrecision {
                digits,
                min: MIN_DIGITS,
            });
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::invalid(format!(
                "guard digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        Ok(PrecisionContext {
            digits,
            guard_digits,
        })
    }

    /// Same requested digits, `extra` more guard digits. Used for
    /// intermediate results that suffer cancellation.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            digits: self.digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    /// Context whose requested digits are raised by `extra` (guard policy reapplied).
    pub fn more_digits(&self, extra: u32) -> Self {
        let digits = self.digits + extra;
        PrecisionContext {
            digits,
            guard_digits: MIN_GUARD_DIGITS.max(digits.div_ceil(10)),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    pub fn prec_bits(&self) -> u64 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u64 + 2
    }

    /// Tolerance `10^-digits`, the scale of one requested digit.
    pub fn output_epsilon(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }
}
