//! Closed-form probabilities, expectations, thresholds and tail bounds for
//! cliques in `G(n, p)`.
//!
//! Everything with a power of `p` is evaluated in log-space, since
//! `p^{C(s,2)}` underflows long before the quantities of interest do.

use serde::Serialize;

use crate::error::{Error, Result};

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

fn pairs(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// `s · ln p`, with `0 · ln 0 = 0`.
fn ln_pow(p: f64, s: u64) -> f64 {
    if s == 0 {
        0.0
    } else {
        s as f64 * p.ln()
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("probability must lie in [0, 1], got {p}")))
    }
}

/// Probability that none of the `⌊n/k⌋` consecutive `k`-blocks of
/// `G(n, p)` is a clique: `(1 - p^{C(k,2)})^{⌊n/k⌋}`.
pub fn prob_no_elementary_clique_exact(n: usize, k: usize, p: f64) -> Result<f64> {
    if k < 2 || k > n {
        return Err(Error::domain(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    check_probability(p)?;
    let blocks = (n / k) as f64;
    let block_is_clique = ln_pow(p, pairs(k as u64)).exp();
    Ok((blocks * (-block_is_clique).ln_1p()).exp())
}

/// `k ≤ min{n^{1/4}, g^{-1/4}}`, the range in which the elementary-block
/// miss probability is exponentially small. `g = 0` imposes no limit.
pub fn lemma1_hypothesis(n: usize, k: usize, g_n: f64) -> bool {
    let kf = k as f64;
    let by_n = (n as f64).powf(0.25);
    let by_g = if g_n > 0.0 { g_n.powf(-0.25) } else { f64::INFINITY };
    kf <= by_n && kf <= by_g
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma1Bound {
    /// `exp(-n^{1 - g·C(k,2)} / (2k))`; may underflow to 0.
    pub value: f64,
    /// Natural log of `value`, always finite for `n, k ≥ 1`.
    pub ln_value: f64,
    /// Whether `(n, k, g)` satisfies [`lemma1_hypothesis`].
    pub hypothesis_holds: bool,
}

/// Upper bound on the probability of no elementary `k`-clique when
/// `p = n^{-g_n}`. Evaluates outside the hypothesis range too; check
/// `hypothesis_holds`.
pub fn lemma1_bound(n: usize, k: usize, g_n: f64) -> Lemma1Bound {
    let nf = n as f64;
    let exponent = 1.0 - g_n * pairs(k as u64) as f64;
    let ln_value = -nf.powf(exponent) / (2.0 * k as f64);
    Lemma1Bound {
        value: ln_value.exp(),
        ln_value,
        hypothesis_holds: lemma1_hypothesis(n, k, g_n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CliqueExpectation {
    /// `μ_s = C(n,s) · p^{C(s,2)}`.
    pub mu: f64,
    pub ln_mu: f64,
    /// `n^{s - g·C(s,2)}`, present when `g` was supplied.
    pub upper_bound: Option<f64>,
}

/// Expected number of `s`-cliques in `G(n, p)`.
pub fn expected_clique_count(n: usize, p: f64, s: usize, g: Option<f64>) -> Result<CliqueExpectation> {
    if s < 2 || s > n {
        return Err(Error::domain(format!("need 2 <= s <= n, got n = {n}, s = {s}")));
    }
    check_probability(p)?;
    let ln_mu = ln_binomial(n as u64, s as u64) + ln_pow(p, pairs(s as u64));
    let upper_bound = g.map(|g| (n as f64).powf(s as f64 - g * pairs(s as u64) as f64));
    Ok(CliqueExpectation {
        mu: ln_mu.exp(),
        ln_mu,
        upper_bound,
    })
}

/// `E[K(G)] = Σ_{s=2}^{n} μ_s`.
pub fn expected_total_cliques(n: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    (2..=n).try_fold(0.0, |acc, s| Ok(acc + expected_clique_count(n, p, s, None)?.mu))
}

/// `⌈x⌉`, treating values within relative 1e-9 of an integer as that
/// integer so that e.g. `4 / (2/3)` rounds to 6 rather than 7.
fn snapped_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

fn check_limit(c_g: f64) -> Result<()> {
    if c_g > 0.0 && c_g.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "threshold needs a positive finite c_g, got {c_g}"
        )))
    }
}

/// Clique size `s0 = 2⌈4/c_g⌉ + 1` above which `μ_s ≤ n^{-3}` for large `n`.
pub fn s0_threshold(c_g: f64) -> Result<usize> {
    check_limit(c_g)?;
    Ok(2 * snapped_ceil(4.0 / c_g) as usize + 1)
}

/// Clique size `s1 = max{⌈25/c_g⌉, 3}` above which the total number of
/// cliques is at most `log n` with overwhelming probability.
pub fn s1_threshold(c_g: f64) -> Result<usize> {
    check_limit(c_g)?;
    Ok((snapped_ceil(25.0 / c_g) as usize).max(3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DependencyDegree {
    /// Number of `s`-subsets sharing at least two vertices with a fixed
    /// `s`-subset (the subset itself included); 0 when `s = n`.
    pub exact: u128,
    /// `2 s² n^{s-2}`.
    pub bound: u128,
    /// `s ≤ n/2`, where the geometric-series step behind the bound is valid.
    pub geometric_regime: bool,
}

fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// Dependency degree of the `s`-clique indicators in `G(n, p)`.
pub fn dependency_degree_bound(n: usize, s: usize) -> Result<DependencyDegree> {
    if s < 2 || s > n {
        return Err(Error::domain(format!("need 2 <= s <= n, got n = {n}, s = {s}")));
    }
    let overflow = || Error::domain(format!("dependency degree overflows u128 at n = {n}, s = {s}"));
    let (n64, s64) = (n as u64, s as u64);
    let exact = if s == n {
        0
    } else {
        let mut sum: u128 = 0;
        for i in 2..=s64 {
            let term = binomial_u128(s64, i)
                .zip(binomial_u128(n64 - s64, s64 - i))
                .and_then(|(a, b)| a.checked_mul(b))
                .ok_or_else(overflow)?;
            sum = sum.checked_add(term).ok_or_else(overflow)?;
        }
        sum
    };
    let bound = (n as u128)
        .checked_pow((s - 2) as u32)
        .and_then(|x| x.checked_mul(2 * (s as u128) * (s as u128)))
        .ok_or_else(overflow)?;
    Ok(DependencyDegree {
        exact,
        bound,
        geometric_regime: 2 * s <= n,
    })
}

/// Upper-tail inequality for sums of dependent indicators:
/// `Pr[X ≥ μ + t] ≤ (1 + t/μ)^{-t/(4Δ)}`.
pub fn jr_tail_bound(mu: f64, t: f64, delta: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::domain(format!("tail bound needs mu > 0, got {mu}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("tail bound needs t >= 0, got {t}")));
    }
    if !(delta >= 1.0) {
        return Err(Error::domain(format!("tail bound needs delta >= 1, got {delta}")));
    }
    let ln = -(t / (4.0 * delta)) * (t / mu).ln_1p();
    Ok(ln.exp().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn elementary_miss_exact() {
        let v = prob_no_elementary_clique_exact(30, 3, 0.5).unwrap();
        assert!(close(v, 0.875f64.powi(10), 1e-12));
        assert!((v - 0.26308).abs() < 5e-6);
        assert_eq!(prob_no_elementary_clique_exact(17, 4, 1.0).unwrap(), 0.0);
        assert_eq!(prob_no_elementary_clique_exact(9, 2, 0.0).unwrap(), 1.0);
        assert!(prob_no_elementary_clique_exact(3, 4, 0.5).is_err());
        assert!(prob_no_elementary_clique_exact(3, 1, 0.5).is_err());
        assert!(prob_no_elementary_clique_exact(3, 2, 1.5).is_err());
    }

    #[test]
    fn elementary_miss_tiny_p_does_not_lose_precision() {
        // (1 - 1e-30)^{5e6} ≈ 1 - 5e-24; naive evaluation returns exactly 1
        let v = prob_no_elementary_clique_exact(10_000_000, 2, 1e-30).unwrap();
        assert!(v <= 1.0);
    }

    #[test]
    fn lemma1_bound_underflows_but_log_is_reported() {
        let b = lemma1_bound(10_000, 2, 0.01);
        assert_eq!(b.value, 0.0);
        let expected = -(10f64.powf(4.0 * 0.99)) / 4.0;
        assert!(close(b.ln_value, expected, 1e-12));
    }

    #[test]
    fn lemma1_hypothesis_flag() {
        // 10^4 has fourth root 10
        assert!(lemma1_bound(10_000, 10, 0.0).hypothesis_holds);
        assert!(!lemma1_bound(10_000, 11, 0.0).hypothesis_holds);
        // g^{-1/4} = 2 for g = 1/16
        assert!(lemma1_bound(10_000, 2, 1.0 / 16.0).hypothesis_holds);
        assert!(!lemma1_bound(10_000, 3, 1.0 / 16.0).hypothesis_holds);
    }

    #[test]
    fn exact_never_exceeds_lemma1_bound() {
        for n in [100usize, 1_000, 10_000, 100_000] {
            let g = 1.0 / (n as f64).log2();
            let p = (n as f64).powf(-g);
            for k in [2usize, 3, 4] {
                let exact = prob_no_elementary_clique_exact(n, k, p).unwrap();
                let bound = lemma1_bound(n, k, g);
                assert!(exact.ln() <= bound.ln_value + 1e-9, "n={n} k={k}");
            }
            for k in 2..=8 {
                let g = 0.01;
                let p = (n as f64).powf(-g);
                let exact = prob_no_elementary_clique_exact(n, k, p).unwrap();
                assert!(exact.ln() <= lemma1_bound(n, k, g).ln_value + 1e-9);
            }
        }
    }

    #[test]
    fn expected_counts() {
        let e = expected_clique_count(20, 0.5, 3, None).unwrap();
        assert!(close(e.mu, 142.5, 1e-12));
        assert!(e.upper_bound.is_none());
        let e = expected_clique_count(12, 1.0, 5, Some(0.0)).unwrap();
        assert!(close(e.mu, 792.0, 1e-12));
        assert!(close(e.upper_bound.unwrap(), 12f64.powi(5), 1e-12));
        assert_eq!(expected_clique_count(12, 0.0, 2, None).unwrap().mu, 0.0);
        assert!(expected_clique_count(5, 0.5, 6, None).is_err());
        assert!(expected_clique_count(5, 0.5, 1, None).is_err());
    }

    #[test]
    fn expectation_bound_holds_for_power_law() {
        for n in [10usize, 50, 200] {
            for c in [0.3, 0.7, 1.5] {
                let p = (n as f64).powf(-c);
                for s in 2..=n.min(12) {
                    let e = expected_clique_count(n, p, s, Some(c)).unwrap();
                    assert!(e.mu <= e.upper_bound.unwrap() * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(s0_threshold(1.0).unwrap(), 9);
        assert_eq!(s0_threshold(0.5).unwrap(), 17);
        assert_eq!(s0_threshold(10.0).unwrap(), 3);
        assert_eq!(s0_threshold(2.0 / 3.0).unwrap(), 13);
        assert_eq!(s1_threshold(1.0).unwrap(), 25);
        assert_eq!(s1_threshold(10.0).unwrap(), 3);
        assert_eq!(s1_threshold(25.0).unwrap(), 3);
        assert_eq!(s1_threshold(0.1).unwrap(), 250);
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(s0_threshold(bad).is_err());
            assert!(s1_threshold(bad).is_err());
        }
    }

    #[test]
    fn tail_sum_of_mu_above_s0_is_small() {
        // for s ≥ s0 and n large enough, μ_s ≤ n^{-3}
        let c = 1.0;
        let s0 = s0_threshold(c).unwrap();
        let n = 1_000usize;
        let p = (n as f64).powf(-c);
        for s in s0..=40 {
            let mu = expected_clique_count(n, p, s, None).unwrap().mu;
            assert!(mu <= (n as f64).powi(-3));
        }
        let total = expected_total_cliques(n, p).unwrap();
        assert!(total <= (n as f64).powi(s0 as i32 + 1));
    }

    /// Brute-force oracle: enumerate all s-subsets and count those that share
    /// at least two vertices with the fixed subset {0..s-1}.
    fn overlap_oracle(n: usize, s: usize) -> u128 {
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != s {
                continue;
            }
            let shared = (mask & ((1 << s) - 1)).count_ones();
            if shared >= 2 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn dependency_degree() {
        let d = dependency_degree_bound(10, 3).unwrap();
        assert_eq!((d.exact, d.bound), (22, 180));
        assert!(d.geometric_regime);
        assert_eq!(overlap_oracle(10, 3), 22);
        assert_eq!(dependency_degree_bound(6, 2).unwrap().exact, overlap_oracle(6, 2));
        assert_eq!(dependency_degree_bound(6, 2).unwrap().exact, 1);
        assert_eq!(dependency_degree_bound(7, 7).unwrap().exact, 0);
        assert!(dependency_degree_bound(5, 1).is_err());
        assert!(dependency_degree_bound(5, 6).is_err());
    }

    #[test]
    fn dependency_degree_matches_oracle_and_bound() {
        for n in 4..=14 {
            for s in 2..n {
                let d = dependency_degree_bound(n, s).unwrap();
                assert_eq!(d.exact, overlap_oracle(n, s), "n={n} s={s}");
                assert_eq!(d.geometric_regime, 2 * s <= n);
                if d.geometric_regime {
                    assert!(d.exact <= d.bound, "n={n} s={s}");
                }
            }
        }
    }

    #[test]
    fn tail_bound() {
        assert_eq!(jr_tail_bound(3.0, 0.0, 7.0).unwrap(), 1.0);
        assert!((jr_tail_bound(1.0, 3.0, 1.0).unwrap() - 4f64.powf(-0.75)).abs() < 1e-12);
        assert!((jr_tail_bound(1.0, 3.0, 1.0).unwrap() - 0.35355).abs() < 1e-5);
        assert!(jr_tail_bound(0.0, 1.0, 1.0).is_err());
        assert!(jr_tail_bound(1.0, -1.0, 1.0).is_err());
        assert!(jr_tail_bound(1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn tail_bound_non_increasing_in_t() {
        for mu in [0.1, 1.0, 10.0, 1e4] {
            for delta in [1.0, 4.0, 360.0] {
                let mut prev = 1.0;
                for i in 0..=200 {
                    let b = jr_tail_bound(mu, i as f64 * 0.5, delta).unwrap();
                    assert!(b <= prev && (0.0..=1.0).contains(&b));
                    prev = b;
                }
            }
        }
    }

    #[test]
    fn ln_binomial_small_values() {
        assert!(close(ln_binomial(20, 3).exp(), 1140.0, 1e-12));
        assert_eq!(ln_binomial(5, 0), 0.0);
        assert_eq!(ln_binomial(3, 4), f64::NEG_INFINITY);
        assert_eq!(binomial_u128(20, 3), Some(1140));
    }
}
