//! Closed forms of the asymptotic guarantees, evaluated at finite
//! parameters so experiments can be positioned against them.

use crate::error::{Error, Result};

/// Smallest inter-community coefficient `b` for which community-degree
/// matching is exact w.h.p. when `K = n^alpha`:
/// `(2 - alpha) / (2 s (1 - sqrt(1 - s^2)))`.
pub fn exact_naive_b_bound(alpha: f64, s: f64) -> Result<f64> {
    if s == 0.0 {
        return Err(Error::DivergentBound("s = 0"));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParams(format!("s = {s} outside (0, 1]")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParams(format!("alpha = {alpha} outside [0, 1)")));
    }
    Ok((2.0 - alpha) / (2.0 * s * one_minus_cos(s)))
}

/// `1 - sqrt(1 - s^2)`, written to stay accurate for small `s`.
fn one_minus_cos(s: f64) -> f64 {
    let s2 = s * s;
    s2 / (1.0 + (1.0 - s2).sqrt())
}

/// Seed count per community above which community-rounds percolation with
/// threshold `r` spreads through each community:
/// `(1 - 1/r) (K^r (r-1)! / (n (p + (K-1) q)^r))^(1/(r-1))`.
pub fn rounds_seed_bound(n: usize, k: usize, p: f64, q: f64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("threshold r = {r} must be at least 2")));
    }
    if !(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParams(format!("need p, q in (0, 1), got {p}, {q}")));
    }
    let r_f = r as f64;
    let k_f = k as f64;
    let log_factorial: f64 = (1..r).map(|m| (m as f64).ln()).sum();
    let log_inner =
        r_f * k_f.ln() + log_factorial - (n as f64).ln() - r_f * (p + (k_f - 1.0) * q).ln();
    Ok((1.0 - 1.0 / r_f) * (log_inner / (r_f - 1.0)).exp())
}

/// Scale `n^(r_c - 3) (ln n)^(-2 r_c)` that the prior's per-pair
/// false-proposal probability must be small against for two-threshold
/// percolation to make no errors.
pub fn prior_false_pair_scale(n: usize, r_c: u32) -> f64 {
    let n = n as f64;
    let r = r_c as f64;
    n.powf(r - 3.0) * n.ln().powf(-2.0 * r)
}

/// Polynomial decay exponent `2 b s (1 - sqrt(1 - s^2))` of the probability
/// that a wrong candidate is at least as close as the true partner.
pub fn closer_wrong_exponent(b: f64, s: f64) -> f64 {
    2.0 * b * s * one_minus_cos(s)
}
