//! Randomized error-bound checks: each method's reported bound against a
//! rerun of the same method with twice the terms and 20 more digits.

use etawallis::series::{
    eta_accelerated, eta_averaged, eta_direct, eta_prime_alternating_accelerated,
    eta_prime_extrapolated, eta_prime_grouped,
};
use etawallis::{PrecisionContext, Real, Result, SeriesResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ctx;

pub const CASES_PER_METHOD: usize = 20;

pub struct Check {
    pub method: &'static str,
    pub input: String,
    pub error: Real,
    pub bound: Real,
}

impl Check {
    pub fn honest(&self) -> bool {
        self.error <= self.bound
    }
}

/// `k / 100` as an exact-as-possible real.
fn hundredths(k: i64, c: &PrecisionContext) -> Real {
    Real::from_i64(k).div_int(100, c).unwrap()
}

fn check(
    method: &'static str,
    input: String,
    r: &SeriesResult,
    reference: &Real,
) -> Check {
    Check {
        method,
        input,
        error: r.value.add_exact(&reference.neg()).abs(),
        bound: r.error_bound.clone(),
    }
}

/// Runs `CASES_PER_METHOD` random admissible inputs through every method.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(10..=300), &c);
        let n = rng.random_range(2..=2000);
        let r = eta_direct(&s, n, &c)?;
        let reference = eta_direct(&s, 2 * n, &wide)?.value;
        out.push(check("direct", format!("s={s}, n={n}, digits={}", c.digits()), &r, &reference));
    }

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(-99..=300), &c);
        let n = rng.random_range(1..=2000);
        let r = eta_averaged(&s, n, &c)?;
        let reference = eta_averaged(&s, 2 * n, &wide)?.value;
        out.push(check("averaged", format!("s={s}, n={n}, digits={}", c.digits()), &r, &reference));
    }

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(10..=400), &c);
        let order = rng.random_range(4..=80);
        let r = eta_accelerated(&s, order, &c)?;
        let reference = eta_accelerated(&s, 2 * order, &wide)?.value;
        out.push(check(
            "accelerated",
            format!("s={s}, order={order}, digits={}", c.digits()),
            &r,
            &reference,
        ));
    }

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(0..=300), &c);
        let n = rng.random_range(1..=1000);
        let r = eta_prime_grouped(&s, n, &c)?;
        let reference = eta_prime_grouped(&s, 2 * n, &wide)?.value;
        out.push(check(
            "grouped_derivative",
            format!("s={s}, n={n}, digits={}", c.digits()),
            &r,
            &reference,
        ));
    }

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(100..=400), &c);
        let order = rng.random_range(4..=80);
        let r = eta_prime_alternating_accelerated(&s, order, &c)?;
        let reference = eta_prime_alternating_accelerated(&s, 2 * order, &wide)?.value;
        out.push(check(
            "accelerated_derivative",
            format!("s={s}, order={order}, digits={}", c.digits()),
            &r,
            &reference,
        ));
    }

    for _ in 0..CASES_PER_METHOD {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = hundredths(rng.random_range(0..=300), &c);
        let n_min = rng.random_range(16..=200);
        let doublings = rng.random_range(2..=5);
        let levels = rng.random_range(1..=doublings as usize);
        let r = eta_prime_extrapolated(&s, n_min, doublings, levels, &c)?;
        let reference = eta_prime_extrapolated(&s, 2 * n_min, doublings, levels, &wide)?.value;
        out.push(check(
            "richardson_extrapolated",
            format!(
                "s={s}, n_min={n_min}, doublings={doublings}, levels={levels}, digits={}",
                c.digits()
            ),
            &r,
            &reference,
        ));
    }
    Ok(out)
}
