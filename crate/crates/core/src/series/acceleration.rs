//! Chebyshev-weight acceleration of alternating series
//! (Cohen, Rodriguez Villegas and Zagier, "Algorithm 1").
//!
//! For `S = sum_{k>=0} (-1)^k a_k` the order-`n` estimate is
//! `sum_{k<n} c_k a_k / d` with `d = T_n(3) = ((3+sqrt8)^n + (3-sqrt8)^n) / 2`.
//! Every weight is an integer, so they are generated exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numeric::{Accumulator, PrecisionContext, Real};

#[derive(Debug, Clone)]
pub(crate) struct ChebyshevWeights {
    pub c: Vec<BigInt>,
    pub d: BigInt,
}

impl ChebyshevWeights {
    pub fn new(order: u64) -> Self {
        let n = BigInt::from(order);
        // d = T_n(3) via T_{k+1} = 6 T_k - T_{k-1}
        let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
        let d = if order == 0 {
            t0
        } else {
            for _ in 1..order {
                let t2 = &t1 * 6 - &t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        };
        let mut b = -BigInt::one();
        let mut c = -d.clone();
        let mut weights = Vec::with_capacity(order as usize);
        for k in 0..order {
            c = &b - &c;
            weights.push(c.clone());
            let k = BigInt::from(k);
            let num: BigInt = &b * 2 * (&k + &n) * (&k - &n);
            let den: BigInt = (&k * 2 + 1) * (&k + 1);
            let (q, r) = num.div_rem(&den);
            debug_assert!(r.is_zero(), "Chebyshev weights are integral");
            b = q;
        }
        ChebyshevWeights { c: weights, d }
    }

    /// `sum c_k a_k / d`, accumulated in index order.
    pub fn apply(&self, terms: &[Real], ctx: &PrecisionContext) -> Real {
        debug_assert_eq!(terms.len(), self.c.len());
        let mut acc = Accumulator::new(ctx);
        for (c, a) in self.c.iter().zip(terms) {
            acc.add(&Real::from_bigint(c).mul(a, ctx));
        }
        acc.value()
            .div(&Real::from_bigint(&self.d), ctx)
            .expect("T_n(3) is nonzero")
    }
}
