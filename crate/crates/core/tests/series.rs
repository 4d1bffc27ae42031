mod common;

use common::*;
use etawallis::numeric::{ln, ln2, pi};
use etawallis::series::{
    default_order, eta_accelerated, eta_averaged, eta_direct, eta_prime_alternating_accelerated,
    eta_prime_extrapolated, eta_prime_grouped, grouped_partials, richardson_extrapolate,
};
use etawallis::{constants, products, Error, Method, Real};
use proptest::prelude::*;

#[test]
fn direct_s1_million_terms() {
    let c = ctx(20);
    let r = eta_direct(&Real::one(), 1_000_000, &c).unwrap();
    assert!(r.value.to_context_string(&c).starts_with("0.693146"));
    assert!((r.error_bound.to_f64() - 1e-6).abs() < 1e-9);
    assert!(within(&r.value, &ln2(&c), &r.error_bound));
}

#[test]
fn direct_partial_sum_is_exact_rational() {
    let c = ctx(40);
    let r = eta_direct(&Real::from_u64(2), 50, &c).unwrap();
    let exact = rational_to_real(&alternating_basel_rational(50), &c);
    assert!(abs_diff(&r.value, &exact) < 1e-45);
    let c = ctx(30);
    let r = eta_direct(&Real::from_u64(2), 20_000, &c).unwrap();
    let p = pi(&c);
    let target = p.mul(&p, &c).div_int(12, &c).unwrap();
    assert!(within(&r.value, &target, &r.error_bound));
    assert!(target.to_context_string(&c).starts_with("0.822467033424113"));
}

#[test]
fn averaged_s1_agrees_with_ln2() {
    let c = ctx(30);
    let r = eta_averaged(&Real::one(), 10_000, &c).unwrap();
    assert_eq!(r.method, Method::Averaged);
    assert!(within(&r.value, &ln2(&c), &r.error_bound));
}

#[test]
fn averaged_negative_half_against_euler_transform() {
    let c = ctx(30);
    let oracle = eta_minus_half_euler(30).to_real(&ctx(40));
    assert!(oracle.to_context_string(&c).starts_with("0.38010481260968401677754215655"));
    let s = real("-0.5", &c);
    let mut last = None;
    for n in [100, 1_000, 10_000] {
        let r = eta_averaged(&s, n, &c).unwrap();
        assert!(within(&r.value, &oracle, &r.error_bound), "N={n}");
        if let Some(prev) = last.replace(r.error_bound.clone()) {
            assert!(r.error_bound < prev);
        }
    }
}

#[test]
fn representations_agree() {
    let c = ctx(20);
    for s in ["0.5", "1", "1.5", "2", "3"] {
        let s = real(s, &c);
        let d = eta_direct(&s, 100_000, &c).unwrap();
        let a = eta_averaged(&s, 50_000, &c).unwrap();
        let bound = d.error_bound.add(&a.error_bound, &c);
        assert!(within(&d.value, &a.value, &bound), "s={s}");
    }
}

#[test]
fn averaged_degenerate_case() {
    let c = ctx(30);
    for n in [1, 10, 1_000, 4_321] {
        assert_eq!(eta_averaged(&Real::zero(), n, &c).unwrap().value, real("0.5", &c));
    }
}

#[test]
fn grouped_s0_first_bracket_and_limit() {
    let c = ctx(30);
    let r = eta_prime_grouped(&Real::zero(), 1, &c).unwrap();
    let expect = ln(&real("4", &c).div_int(3, &c).unwrap(), &c).unwrap().mul_pow2(-1);
    assert!(abs_diff(&r.value, &expect) < 1e-37);

    let half_ln_half_pi = ln(&pi(&c).mul_pow2(-1), &c).unwrap().mul_pow2(-1);
    assert!(half_ln_half_pi.to_context_string(&c).starts_with("0.225791352644727"));
    let r = eta_prime_grouped(&Real::zero(), 20_000, &c).unwrap();
    assert!(within(&r.value, &half_ln_half_pi, &r.error_bound));
    assert!(r.error_bound.to_f64() < 1.3e-5);
}

#[test]
fn grouped_s1_limit_matches_closed_form() {
    let c = ctx(30);
    let l2 = ln2(&c);
    let gamma = constants::gamma_harmonic(&c).unwrap();
    // (1/2)(2 gamma - ln 2) ln 2
    let closed = gamma.mul_pow2(1).sub(&l2, &c).mul(&l2, &c).mul_pow2(-1);
    assert!(closed.to_context_string(&c).starts_with("0.159868903742430"));
    let r = eta_prime_grouped(&Real::one(), 5_000, &c).unwrap();
    assert!(within(&r.value, &closed, &r.error_bound));
}

#[test]
fn accelerated_derivative_closed_forms() {
    let c = ctx(30);
    let l2 = ln2(&c);
    let gamma = constants::gamma_harmonic(&c).unwrap();
    let eta1 = gamma.mul(&l2, &c).sub(&l2.mul(&l2, &c).mul_pow2(-1), &c);
    let r1 = eta_prime_alternating_accelerated(&Real::one(), 60, &c).unwrap();
    assert!(abs_diff(&r1.value, &eta1) < 1e-25);

    // (1/2)(pi^2/6) ln(4 pi e^gamma / A^12), A from the hyperfactorial limit
    let p = pi(&c);
    let ln_a = constants::ln_glaisher_from_limit(2000, &c).unwrap();
    let inner = l2
        .mul_pow2(1)
        .add(&ln(&p, &c).unwrap(), &c)
        .add(&gamma, &c)
        .sub(&ln_a.mul_int(12, &c), &c);
    let eta2 = p.mul(&p, &c).div_int(12, &c).unwrap().mul(&inner, &c);
    let r2 = eta_prime_alternating_accelerated(&Real::from_u64(2), 60, &c).unwrap();
    assert!(r2.value.to_context_string(&c).starts_with("0.101316578163504501886002882212"));
    // the limit route at n = 2000 is good to ~1e-14
    assert!(abs_diff(&r2.value, &eta2) < 1e-12);

    assert!(matches!(
        eta_prime_alternating_accelerated(&real("0.5", &c), 60, &c),
        Err(Error::MethodInapplicable(_))
    ));
}

#[test]
fn acceleration_power() {
    let c = ctx(30);
    for s in [1u64, 2] {
        let a = eta_prime_alternating_accelerated(&Real::from_u64(s), 60, &c).unwrap();
        let b = eta_prime_alternating_accelerated(&Real::from_u64(s), 120, &ctx(50)).unwrap();
        assert!(abs_diff(&a.value, &b.value) < 1e-25);
    }
}

#[test]
fn richardson_on_grouped_s0() {
    let c = ctx(30);
    let sizes: Vec<u64> = (0..=6).map(|j| 1000 << j).collect();
    let partials = grouped_partials(&Real::zero(), &sizes, &c).unwrap();
    let r = richardson_extrapolate(&partials, 6, &c).unwrap();
    let target = ln(&pi(&c).mul_pow2(-1), &c).unwrap().mul_pow2(-1);
    assert!(abs_diff(&r.value, &target) < 1e-12);
    assert_eq!(r.method, Method::RichardsonExtrapolated);

    let direct = eta_prime_extrapolated(&Real::zero(), 1000, 6, 6, &c).unwrap();
    assert_eq!(direct.value, r.value);
}

#[test]
fn grouped_equals_half_product_log() {
    let c = ctx(30);
    for s in ["0", "1", "2", "0.75"] {
        let s = real(s, &c);
        for n in [1, 7, 250] {
            let g = eta_prime_grouped(&s, n, &c).unwrap();
            let rows = products::partial_product(&s, n, None, n, &c).unwrap();
            assert_eq!(rows.last().unwrap().cumulative_log, g.value.mul_pow2(1));
        }
    }
}

#[test]
fn default_order_meets_requested_digits() {
    for digits in [20, 30, 60] {
        let c = ctx(digits);
        let r = eta_accelerated(&Real::from_u64(2), default_order(&c), &c).unwrap();
        let p = pi(&c);
        let target = p.mul(&p, &c).div_int(12, &c).unwrap();
        assert!(within(&r.value, &target, &r.error_bound));
        assert!(r.error_bound.to_f64() < 10f64.powi(-(digits as i32)));
    }
}

#[test]
fn error_bounds_are_positive_and_terms_counted() {
    let c = ctx(20);
    let results = [
        eta_direct(&Real::one(), 2, &c).unwrap(),
        eta_averaged(&Real::zero(), 1, &c).unwrap(),
        eta_accelerated(&Real::one(), 4, &c).unwrap(),
        eta_prime_grouped(&Real::zero(), 1, &c).unwrap(),
        eta_prime_alternating_accelerated(&Real::one(), 4, &c).unwrap(),
        eta_prime_extrapolated(&Real::zero(), 4, 2, 2, &c).unwrap(),
    ];
    for r in results {
        assert!(r.error_bound.is_positive(), "{:?}", r.method);
        assert!(r.terms_used >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The direct partial sum always brackets the averaged value within both bounds.
    #[test]
    fn direct_and_averaged_agree(num in 1u32..40, n in 200u64..3000) {
        let c = ctx(20);
        let s = Real::from_u64(num as u64).div_int(10, &c).unwrap();
        let d = eta_direct(&s, 2 * n, &c).unwrap();
        let a = eta_averaged(&s, 2 * n, &c).unwrap();
        let bound = d.error_bound.add(&a.error_bound, &c);
        prop_assert!(within(&d.value, &a.value, &bound));
    }

    /// The grouped series increases with N at s = 0 (every bracket is a positive log).
    #[test]
    fn grouped_s0_is_monotone(n in 1u64..400) {
        let c = ctx(20);
        let a = eta_prime_grouped(&Real::zero(), n, &c).unwrap();
        let b = eta_prime_grouped(&Real::zero(), n + 1, &c).unwrap();
        prop_assert!(a.value < b.value);
    }
}
