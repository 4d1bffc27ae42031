mod common;

use common::*;
use etawallis::numeric::{ln, pi};
use etawallis::series::{default_order, eta_prime_alternating_accelerated, eta_prime_extrapolated};
use etawallis::Real;
use rand::{Rng, SeedableRng};

#[test]
fn reported_bounds_cover_rerun_error() {
    let checks = honesty::run(20_241_017).unwrap();
    let dishonest: Vec<_> = checks.iter().filter(|c| !c.honest()).collect();
    for c in &dishonest {
        eprintln!("{}: {} error={} bound={}", c.method, c.input, c.error, c.bound);
    }
    assert!(dishonest.is_empty(), "{} of {} bounds violated", dishonest.len(), checks.len());
}

/// Low orders used to undercut the true error: ln(k)/k^s is not a positive
/// moment sequence, so max|a_k| alone understates the measure's mass.
#[test]
fn accelerated_derivative_bound_against_true_value() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let c = ctx(rng.random_range(12..=30));
        let wide = c.more_digits(20);
        let s = Real::from_i64(rng.random_range(100..=400)).div_int(100, &c).unwrap();
        let order = rng.random_range(4..=40);
        let r = eta_prime_alternating_accelerated(&s, order, &c).unwrap();
        let truth = eta_prime_alternating_accelerated(&s, default_order(&wide), &wide).unwrap();
        assert!(within(&r.value, &truth.value, &r.error_bound), "s={s}, order={order}");
    }
}

#[test]
fn richardson_bound_holds_at_s0() {
    let c = ctx(30);
    let truth = ln(&pi(&c.more_digits(20)).mul_pow2(-1), &c.more_digits(20)).unwrap().mul_pow2(-1);
    for (n_min, doublings, levels) in [(16, 3, 2), (50, 4, 4), (200, 5, 3), (1000, 6, 6)] {
        let r = eta_prime_extrapolated(&Real::zero(), n_min, doublings, levels, &c).unwrap();
        assert!(within(&r.value, &truth, &r.error_bound), "n_min={n_min}");
    }
}

/// The corner-difference estimate assumes a pure 1/N expansion; for s > 0 the
/// grouped tail also carries ln N / N^k terms and the estimate can fall short.
#[test]
fn richardson_estimate_is_not_a_bound_for_s_positive() {
    let c = ctx(26);
    let wide = c.more_digits(20);
    let s = real("1.21", &c);
    let r = eta_prime_extrapolated(&s, 102, 4, 2, &c).unwrap();
    let rerun = eta_prime_extrapolated(&s, 204, 4, 2, &wide).unwrap();
    assert!(!within(&r.value, &rerun.value, &r.error_bound));
}
