//! Density heuristics: the truncated random-module products for the
//! proportion of lambda = r fields at inert p, the Cohen-Lenstra probability
//! of p coprime to the class number, the random-matrix full-rank failure
//! probability, and the split-prime partial sums behind the log log X
//! growth heuristic.

use num_bigint::BigUint;
use num_integer::Integer as NumInteger;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith;

#[derive(Debug, Clone, Serialize)]
pub struct HeuristicReport {
    pub p: u64,
    pub r: u32,
    pub k: u32,
    pub n: u32,
    pub t_max: u32,
    /// p^{-r} prod_{t > r} (1 - p^{-t}), truncated at t_max.
    pub ejv: f64,
    /// Upper bound on the truncation error of `ejv`.
    pub ejv_truncation_bound: f64,
    /// prod_{t > 0} (1 - p^{-t}) at the same truncation.
    pub cohen_lenstra: f64,
    /// 1 - prod_{i=0}^{k-1} (1 - p^{i-n}) as an exact reduced fraction.
    pub rank_failure_num: String,
    pub rank_failure_den: String,
    pub rank_failure: f64,
    /// sum over primes q <= p of (1/q - 1/q^2).
    pub split_sum_partial: f64,
}

/// The truncated product p^{-r} prod_{t=r+1}^{t_max} (1 - p^{-t}).
pub fn ejv_probability(p: u64, r: u32, t_max: u32) -> f64 {
    assert!(t_max >= 30, "truncation horizon must be at least 30");
    let pf = p as f64;
    let mut acc = pf.powi(-(r as i32));
    for t in r + 1..=t_max {
        acc *= 1.0 - pf.powi(-(t as i32));
    }
    acc
}

/// The Cohen-Lenstra probability prod_{t > 0} (1 - p^{-t}) at horizon t_max.
pub fn cohen_lenstra_probability(p: u64, t_max: u32) -> f64 {
    assert!(t_max >= 30);
    let pf = p as f64;
    let mut acc = 1.0;
    for t in 1..=t_max {
        acc *= 1.0 - pf.powi(-(t as i32));
    }
    acc
}

/// Exact probability that a random k x n matrix over Z_p fails to have full
/// rank k (k <= n): 1 - prod_{i=0}^{k-1} (1 - p^{i-n}), as a reduced
/// fraction (numerator, denominator).
pub fn rank_failure_probability(p: u64, k: u32, n: u32) -> (BigUint, BigUint) {
    assert!(k <= n, "rank failure needs k <= n");
    let bp = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        let e = n - i;
        let q = bp.pow(e);
        num *= &q - BigUint::one();
        den *= q;
    }
    // failure = 1 - num/den = (den - num)/den
    let fail_num = &den - &num;
    let g = fail_num.gcd(&den);
    (fail_num / &g, den / g)
}

/// sum over primes q <= x of (1/q - 1/q^2).
pub fn split_sum_partial(x: u64) -> f64 {
    arith::primes_in_range(2, x)
        .into_iter()
        .map(|q| 1.0 / q as f64 - 1.0 / (q as f64 * q as f64))
        .sum()
}

pub fn heuristic_values(p: u64, r: u32, k: u32, n: u32, t_max: u32) -> HeuristicReport {
    assert!(arith::is_prime_u64(p), "heuristics are per prime");
    let ejv = ejv_probability(p, r, t_max);
    let pf = p as f64;
    // The omitted factors multiply by prod_{t > t_max}(1 - p^{-t}) >=
    // 1 - p^{-t_max}/(p - 1).
    let ejv_truncation_bound = ejv * pf.powi(-(t_max as i32)) / (pf - 1.0);
    let (num, den) = rank_failure_probability(p, k, n);
    let rank_failure = num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN);
    HeuristicReport {
        p,
        r,
        k,
        n,
        t_max,
        ejv,
        ejv_truncation_bound,
        cohen_lenstra: cohen_lenstra_probability(p, t_max),
        rank_failure_num: num.to_string(),
        rank_failure_den: den.to_string(),
        rank_failure,
        split_sum_partial: split_sum_partial(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ejv_pinned() {
        assert!((ejv_probability(5, 0, 64) - 0.76033).abs() < 1e-5);
        assert!((ejv_probability(5, 1, 64) - 0.19008).abs() < 1e-5);
    }

    #[test]
    fn ejv_at_r_zero_is_cohen_lenstra() {
        for &p in &[5u64, 7, 13] {
            let diff = (ejv_probability(p, 0, 64) - cohen_lenstra_probability(p, 64)).abs();
            assert!(diff < 1e-12, "p={p} diff={diff}");
        }
    }

    #[test]
    fn ejv_mass_sums_to_one() {
        for &p in &[5u64, 7, 13] {
            let total: f64 = (0..60).map(|r| ejv_probability(p, r, 120)).sum();
            assert!((total - 1.0).abs() < 1e-9, "p={p} total={total}");
        }
    }

    #[test]
    fn rank_failure_pinned_exact() {
        // k = 1, n = 2, p = 5: 1 - (1 - 5^{-2}) = 1/25 = 0.04 exactly.
        let (num, den) = rank_failure_probability(5, 1, 2);
        assert_eq!(num.to_string(), "1");
        assert_eq!(den.to_string(), "25");
        let report = heuristic_values(5, 0, 1, 2, 64);
        assert_eq!(report.rank_failure, 0.04);
    }

    #[test]
    fn split_sum_partial_small() {
        let s = split_sum_partial(5);
        let expect = (0.5 - 0.25) + (1.0 / 3.0 - 1.0 / 9.0) + (0.2 - 0.04);
        assert!((s - expect).abs() < 1e-15);
    }
}
