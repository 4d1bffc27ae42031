//! Configurable-precision real arithmetic.
//!
//! [`Real`] is a binary floating value of unbounded size; every operation
//! rounds to the precision of the [`PrecisionContext`] it is given, which
//! holds the requested decimal digits plus guard digits.

mod accumulator;
mod context;
mod elementary;
mod format;
mod real;

pub use accumulator::{sum_in_order, Accumulator};
pub use context::{make_context, PrecisionContext, MIN_DIGITS, MIN_GUARD_DIGITS};
pub use elementary::{atanh_inv, exp, ln, ln2, pi, pow, MAX_DECIMAL_EXPONENT};
pub use format::{DecimalDigits, Notation};
pub use real::{field_op, FieldOp, Real};
