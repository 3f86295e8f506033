//! Closed-form bounds against values frozen from a 50-digit evaluation
//! (tests/oracles/bounds.py).

#![allow(clippy::excessive_precision)]

use sidematch::theory::{
    closer_wrong_exponent, exact_naive_b_bound, prior_false_pair_scale, rounds_seed_bound,
};
use sidematch::Error;

fn rel_close(got: f64, want: f64) -> bool {
    ((got - want) / want).abs() < 1e-13
}

#[test]
fn b_bound_reference_values() {
    assert!(rel_close(exact_naive_b_bound(0.5, 0.7).unwrap(), 3.7481257496813811949));
    assert!(rel_close(exact_naive_b_bound(0.5, 0.9).unwrap(), 1.4772529777305219704));
    assert_eq!(exact_naive_b_bound(0.0, 1.0).unwrap(), 1.0);
    assert_eq!(exact_naive_b_bound(0.3, 0.0), Err(Error::DivergentBound("s = 0")));
}

#[test]
fn b_bound_decreases_in_both_arguments() {
    let alphas: Vec<f64> = (0..20).map(|i| i as f64 * 0.05).collect();
    let ss: Vec<f64> = (1..=20).map(|i| i as f64 * 0.05).collect();
    for &a in &alphas {
        for w in ss.windows(2) {
            assert!(exact_naive_b_bound(a, w[1]).unwrap() < exact_naive_b_bound(a, w[0]).unwrap());
        }
    }
    for &s in &ss {
        for w in alphas.windows(2) {
            assert!(exact_naive_b_bound(w[1], s).unwrap() < exact_naive_b_bound(w[0], s).unwrap());
        }
    }
}

#[test]
fn seed_bound_reference_values() {
    let n = 10_000usize;
    let scale = (n as f64).ln() / n as f64;
    let (p, q) = (4.0 * scale, 2.0 * scale);
    assert!(rel_close(rounds_seed_bound(n, 100, p, q, 2).unwrap(), 14.444945425970334497));
    assert!(rel_close(rounds_seed_bound(n, 100, p, q, 3).unwrap(), 117.485201089375828));
    assert!(matches!(rounds_seed_bound(n, 100, p, q, 1), Err(Error::InvalidParams(_))));
    assert!(matches!(rounds_seed_bound(n, 100, 0.0, q, 2), Err(Error::InvalidParams(_))));
}

#[test]
fn false_pair_scale_reference_value() {
    assert!(rel_close(prior_false_pair_scale(10_000, 1), 1.1788231063225870576e-10));
}

#[test]
fn exponent_reference_value() {
    assert!(rel_close(closer_wrong_exponent(2.0, 0.7), 0.80040004000800200056));
    assert_eq!(closer_wrong_exponent(1.5, 1.0), 3.0);
}
