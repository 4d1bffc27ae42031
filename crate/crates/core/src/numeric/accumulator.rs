use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use super::real::round_parts;
use super::{PrecisionContext, Real};

/// Bits kept below the working precision of the first nonzero term.
const GUARD_BITS: i64 = 64;

/// Order-preserving extended-precision summation.
///
/// Terms are added into one fixed-point integer whose unit is fixed by the
/// first nonzero term (`2^(top - prec - 64)`). Everything above that unit is
/// summed exactly, so the result does not depend on how the terms are
/// grouped, only on the terms themselves.
#[derive(Debug, Clone)]
pub struct Accumulator {
    prec: u64,
    unit: Option<i64>,
    sum: BigInt,
    terms: u64,
}

impl Accumulator {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Accumulator {
            prec: ctx.prec_bits(),
            unit: None,
            sum: BigInt::zero(),
            terms: 0,
        }
    }

    pub fn add(&mut self, x: &Real) {
        self.terms += 1;
        let Some(top) = x.top_bit() else { return };
        let unit = *self
            .unit
            .get_or_insert(top - self.prec as i64 - GUARD_BITS);
        let (neg, mag, exp) = x.parts();
        let scaled = if exp >= unit {
            mag << (exp - unit) as u64
        } else {
            let shift = (unit - exp) as u64;
            let q = mag >> shift;
            // round half away from zero onto the unit grid
            if mag.bit(shift - 1) {
                q + 1u32
            } else {
                q
            }
        };
        let term = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, scaled);
        self.sum += term;
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Current sum rounded to the context the accumulator was built with.
    pub fn value(&self) -> Real {
        self.value_bits(self.prec)
    }

    pub fn value_in(&self, ctx: &PrecisionContext) -> Real {
        self.value_bits(ctx.prec_bits())
    }

    fn value_bits(&self, prec: u64) -> Real {
        match self.unit {
            None => Real::zero(),
            Some(unit) => {
                let neg = self.sum.sign() == Sign::Minus;
                let mag: BigUint = self.sum.magnitude().clone();
                round_parts(neg, mag, unit, false, prec)
            }
        }
    }
}

/// Sums `terms` in iteration order with an [`Accumulator`].
pub fn sum_in_order<'a, I>(terms: I, ctx: &PrecisionContext) -> Real
where
    I: IntoIterator<Item = &'a Real>,
{
    let mut acc = Accumulator::new(ctx);
    for t in terms {
        acc.add(t);
    }
    acc.value()
}
