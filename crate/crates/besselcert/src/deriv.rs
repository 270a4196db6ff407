//! Closed-form n-th derivatives of `x^{-nu} I_nu(x)`, `x^{-nu} K_nu(x)` and
//! their exponentially tilted versions.
//!
//! With `n = 2m` the derivative is `Σ_k A_k^m x^{-nu} I_{nu+2k}` (and the same
//! with `K`); with `n = 2m+1` it is `Σ_k B_k^m x^{-nu} I_{nu+2k+1}` (with a
//! minus sign for `K`). Both coefficient families sum to one.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::{i_over_pow, k_over_pow_seq, ln_factorial, FunctionValue, Method};
use crate::EvalConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// Coefficients of the derivative of order `n`: `A_k^m` for `n = 2m`,
/// `B_k^m` for `n = 2m+1`, with `k = 0..=m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n: u32,
    pub nu: f64,
    pub parity: Parity,
    pub coeffs: Vec<f64>,
}

const DIRECT_LIMIT: u32 = 20;

fn check_indices(m: u32, k: u32, nu: f64) -> Result<()> {
    if k > m {
        return domain(format!("coefficient index k = {k} exceeds n = {m}"));
    }
    if !(nu >= -0.5) || !nu.is_finite() {
        return domain(format!(
            "derivative coefficients require nu >= -1/2, got {nu}"
        ));
    }
    Ok(())
}

/// `A_k^m(nu)`: coefficient of `x^{-nu} I_{nu+2k}` in the `2m`-th derivative.
pub fn coeff_a(m: u32, k: u32, nu: f64) -> Result<f64> {
    check_indices(m, k, nu)?;
    if m <= DIRECT_LIMIT {
        let mut v = 1.0;
        for i in 2 * k + 1..=2 * m {
            v *= i as f64;
        }
        for i in 1..=m - k {
            v /= i as f64;
        }
        v *= 0.5f64.powi((2 * m - k) as i32);
        for j in 0..k {
            v *= 2.0 * nu + (2 * j + 1) as f64;
        }
        if k == 0 {
            // (nu + 2k) cancels the j = 0 factor of the denominator.
            for j in 1..=m {
                v /= nu + j as f64;
            }
        } else {
            v *= nu + (2 * k) as f64;
            for j in 0..=m {
                v /= nu + (k + j) as f64;
            }
        }
        return Ok(v);
    }
    let mut l = ln_factorial(2 * m as u64)
        - ln_factorial(2 * k as u64)
        - ln_factorial((m - k) as u64)
        - (2 * m - k) as f64 * std::f64::consts::LN_2;
    for j in 0..k {
        l += (2.0 * nu + (2 * j + 1) as f64).ln();
    }
    if k == 0 {
        for j in 1..=m {
            l -= (nu + j as f64).ln();
        }
    } else {
        l += (nu + (2 * k) as f64).ln();
        for j in 0..=m {
            l -= (nu + (k + j) as f64).ln();
        }
    }
    Ok(l.exp())
}

/// `B_k^m(nu)`: coefficient of `x^{-nu} I_{nu+2k+1}` in the `(2m+1)`-th
/// derivative.
pub fn coeff_b(m: u32, k: u32, nu: f64) -> Result<f64> {
    check_indices(m, k, nu)?;
    if m <= DIRECT_LIMIT {
        let mut v = 1.0;
        for i in 2 * k + 2..=2 * m + 1 {
            v *= i as f64;
        }
        for i in 1..=m - k {
            v /= i as f64;
        }
        v *= 0.5f64.powi((2 * m - k) as i32);
        for j in 0..k {
            v *= 2.0 * nu + (2 * j + 1) as f64;
        }
        v *= nu + (2 * k + 1) as f64;
        for j in 0..=m {
            v /= nu + (k + j + 1) as f64;
        }
        return Ok(v);
    }
    let mut l = ln_factorial(2 * m as u64 + 1)
        - ln_factorial(2 * k as u64 + 1)
        - ln_factorial((m - k) as u64)
        - (2 * m - k) as f64 * std::f64::consts::LN_2
        + (nu + (2 * k + 1) as f64).ln();
    for j in 0..k {
        l += (2.0 * nu + (2 * j + 1) as f64).ln();
    }
    for j in 0..=m {
        l -= (nu + (k + j + 1) as f64).ln();
    }
    Ok(l.exp())
}

type Cache = RwLock<HashMap<(u32, u64), Arc<CoefficientTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized coefficient table for derivative order `n`. Concurrent first
/// fills compute the same table; the first insert wins.
pub fn coefficient_table(n: u32, nu: f64) -> Result<Arc<CoefficientTable>> {
    let key = (n, nu.to_bits());
    if let Some(t) = cache()
        .read()
        .expect("coefficient cache poisoned")
        .get(&key)
    {
        return Ok(Arc::clone(t));
    }
    let m = n / 2;
    let (parity, coeffs) = if n % 2 == 0 {
        (
            Parity::Even,
            (0..=m)
                .map(|k| coeff_a(m, k, nu))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        (
            Parity::Odd,
            (0..=m)
                .map(|k| coeff_b(m, k, nu))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    let table = Arc::new(CoefficientTable {
        n,
        nu,
        parity,
        coeffs,
    });
    let mut w = cache().write().expect("coefficient cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(table)))
}

fn check_point(nu: f64, x: f64) -> Result<()> {
    if !(nu >= -0.5) {
        return domain(format!("derivative formulas require nu >= -1/2, got {nu}"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("derivatives require finite x >= 0, got {x}"));
    }
    Ok(())
}

const EPS: f64 = f64::EPSILON;

fn method_for(x: f64, nu: f64, cfg: &EvalConfig) -> Method {
    if x <= cfg.switch_x_for(nu) {
        Method::Series
    } else {
        Method::Recurrence
    }
}

/// `d^n/dx^n (x^{-nu} I_nu(x))`; at `x = 0` the series limit is returned.
pub fn deriv_i_ratio(n: u32, nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    check_point(nu, x)?;
    let table = coefficient_table(n, nu)?;
    let shift = if n % 2 == 0 { 0.0 } else { 1.0 };
    let mut sum = 0.0;
    for (k, c) in table.coeffs.iter().enumerate() {
        sum += c * i_over_pow(nu + 2.0 * k as f64 + shift, nu, x, cfg)?;
    }
    let rel = (8.0 + table.coeffs.len() as f64) * EPS + cfg.target_rel_tol;
    Ok(FunctionValue::new(sum, rel, method_for(x, nu, cfg)))
}

/// `d^n/dx^n (x^{-nu} K_nu(x))` for `x > 0`; its sign is `(-1)^n`.
pub fn deriv_k_ratio(n: u32, nu: f64, x: f64, _cfg: &EvalConfig) -> Result<FunctionValue> {
    check_point(nu, x)?;
    if x == 0.0 {
        return domain("d^n/dx^n (x^-nu K_nu) diverges at x = 0");
    }
    let table = coefficient_table(n, nu)?;
    let ks = k_over_pow_seq(nu, nu, x, n as usize)?;
    let (shift, sign) = if n % 2 == 0 { (0, 1.0) } else { (1, -1.0) };
    let sum: f64 = table
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * ks[2 * k + shift])
        .sum();
    let method = if x <= 2.0 {
        Method::Series
    } else {
        Method::Recurrence
    };
    Ok(FunctionValue::new(
        sign * sum,
        (24.0 + 2.0 * n as f64) * EPS,
        method,
    ))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn leibniz(n: u32, beta: f64, x: f64, parts: &[FunctionValue]) -> (f64, f64) {
    let tilt = (-beta * x).exp();
    let mut sum = 0.0;
    let mut err = 0.0;
    for (k, p) in parts.iter().enumerate() {
        let w = binomial(n, k as u32) * (-beta).powi((n - k as u32) as i32) * tilt;
        sum += w * p.value;
        err += (w * p.value).abs() * 4.0 * EPS + (w * p.abs_err_est).abs();
    }
    (sum, err)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.abs() < 1.0) {
        return domain(format!("tilt requires |beta| < 1, got {beta}"));
    }
    Ok(())
}

/// `d^n/dx^n (e^{-beta x} x^{-nu} I_nu(x))` by the Leibniz rule.
pub fn deriv_tilted_i(
    n: u32,
    nu: f64,
    beta: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<FunctionValue> {
    check_beta(beta)?;
    let parts = (0..=n)
        .map(|k| deriv_i_ratio(k, nu, x, cfg))
        .collect::<Result<Vec<_>>>()?;
    let (value, err) = leibniz(n, beta, x, &parts);
    Ok(FunctionValue {
        value,
        abs_err_est: err,
        method: method_for(x, nu, cfg),
    })
}

/// `d^n/dx^n (e^{-beta x} x^{-nu} K_nu(x))` by the Leibniz rule, `x > 0`.
pub fn deriv_tilted_k(
    n: u32,
    nu: f64,
    beta: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<FunctionValue> {
    check_beta(beta)?;
    let parts = (0..=n)
        .map(|k| deriv_k_ratio(k, nu, x, cfg))
        .collect::<Result<Vec<_>>>()?;
    let (value, err) = leibniz(n, beta, x, &parts);
    Ok(FunctionValue {
        value,
        abs_err_est: err,
        method: parts[0].method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fd_derivative;
    use crate::special::{bessel_i, bessel_k};
    use crate::OracleConfig;
    use proptest::prelude::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    const NU_GRID: [f64; 7] = [-0.49, -0.25, 0.0, 0.5, 1.0, 2.7, 10.0];

    #[test]
    fn first_coefficients() {
        for &nu in &NU_GRID {
            let a = coeff_a(1, 1, nu).unwrap();
            assert!(
                (a - (2.0 * nu + 1.0) / (2.0 * (nu + 1.0))).abs() <= 2.0 * EPS,
                "nu={nu}"
            );
            let b = coeff_b(1, 1, nu).unwrap();
            assert!((b - (2.0 * nu + 1.0) / (2.0 * (nu + 2.0))).abs() <= 2.0 * EPS);
            let b0 = coeff_b(1, 0, nu).unwrap();
            assert!((b0 - 3.0 / (2.0 * (nu + 2.0))).abs() <= 2.0 * EPS);
        }
        assert!(coeff_a(2, 3, 0.0).is_err());
        assert!(coeff_a(2, 1, -0.6).is_err());
    }

    #[test]
    fn normalization_and_range() {
        for &nu in &NU_GRID {
            for m in 0..=12 {
                let sa: f64 = (0..=m).map(|k| coeff_a(m, k, nu).unwrap()).sum();
                let sb: f64 = (0..=m).map(|k| coeff_b(m, k, nu).unwrap()).sum();
                assert!((sa - 1.0).abs() <= 1e-12, "A nu={nu} m={m}: {sa}");
                assert!((sb - 1.0).abs() <= 1e-12, "B nu={nu} m={m}: {sb}");
                for k in 0..=m {
                    let a = coeff_a(m, k, nu).unwrap();
                    let b = coeff_b(m, k, nu).unwrap();
                    assert!(a > 0.0 && a <= 1.0 + 1e-15 && b > 0.0 && b <= 1.0 + 1e-15);
                }
                if m >= 1 {
                    assert!(coeff_a(m, 0, nu).unwrap() <= 1.0 / (2.0 * (nu + 1.0)) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn log_space_branch_matches_direct() {
        for &nu in &NU_GRID {
            let m = DIRECT_LIMIT + 5;
            let sa: f64 = (0..=m).map(|k| coeff_a(m, k, nu).unwrap()).sum();
            let sb: f64 = (0..=m).map(|k| coeff_b(m, k, nu).unwrap()).sum();
            assert!((sa - 1.0).abs() < 1e-11 && (sb - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn half_order_is_flagged_degenerate() {
        // At nu = -1/2 every k >= 1 coefficient vanishes and A_0 = 1.
        assert_eq!(coeff_a(3, 2, -0.5).unwrap(), 0.0);
        assert!((coeff_a(3, 0, -0.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cache_is_shared() {
        let a = coefficient_table(7, 0.3).unwrap();
        let b = coefficient_table(7, 0.3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.parity, Parity::Odd);
        assert_eq!(a.coeffs.len(), 4);
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| coefficient_table(9, 1.7).unwrap()))
            .collect();
        let tables: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(tables.iter().all(|t| t.coeffs == tables[0].coeffs));
    }

    #[test]
    fn low_orders_match_classical_formulas() {
        let c = cfg();
        let (nu, x) = (0.7, 1.9);
        let d0 = deriv_i_ratio(0, nu, x, &c).unwrap().value;
        assert!(rel(d0, x.powf(-nu) * bessel_i(nu, x, &c).unwrap().value) < 1e-14);
        let d1 = deriv_i_ratio(1, nu, x, &c).unwrap().value;
        assert!(rel(d1, x.powf(-nu) * bessel_i(nu + 1.0, x, &c).unwrap().value) < 1e-14);
        let k = |o: f64| bessel_k(o, 1.0, &c).unwrap().value;
        let d2 = deriv_k_ratio(2, 0.0, 1.0, &c).unwrap().value;
        assert!(rel(d2, 0.5 * (k(2.0) + k(0.0))) < 1e-14);
        let nu = 0.35;
        let xk = |o: f64| x.powf(-nu) * bessel_k(o, x, &c).unwrap().value;
        let d3 = deriv_k_ratio(3, nu, x, &c).unwrap().value;
        let want = -(2.0 * nu + 1.0) / (2.0 * (nu + 2.0)) * xk(nu + 3.0)
            - 3.0 / (2.0 * (nu + 2.0)) * xk(nu + 1.0);
        assert!(rel(d3, want) < 1e-14);
        let d4 = deriv_k_ratio(4, nu, x, &c).unwrap().value;
        let want = (2.0 * nu + 1.0) * (2.0 * nu + 3.0) / (4.0 * (nu + 2.0) * (nu + 3.0))
            * xk(nu + 4.0)
            + 3.0 * (2.0 * nu + 1.0) / (2.0 * (nu + 1.0) * (nu + 3.0)) * xk(nu + 2.0)
            + 3.0 / (4.0 * (nu + 1.0) * (nu + 2.0)) * xk(nu);
        assert!(rel(d4, want) < 1e-14);
    }

    #[test]
    fn zero_argument_limit() {
        let c = cfg();
        let nu = 1.3;
        let lim = 1.0 / (crate::special::gamma(nu + 1.0) * 2f64.powf(nu));
        assert!(rel(deriv_i_ratio(0, nu, 0.0, &c).unwrap().value, lim) < 1e-14);
        assert_eq!(deriv_i_ratio(1, nu, 0.0, &c).unwrap().value, 0.0);
        let a0 = coeff_a(1, 0, nu).unwrap();
        assert!(rel(deriv_i_ratio(2, nu, 0.0, &c).unwrap().value, a0 * lim) < 1e-14);
        assert!(deriv_k_ratio(1, nu, 0.0, &c).is_err());
    }

    #[test]
    fn finite_difference_examples() {
        let c = cfg();
        let o = OracleConfig::default();
        let f = |t: f64| t.powf(-0.7) * bessel_i(0.7, t, &c).unwrap().value;
        let fd = fd_derivative(&f, 4, 2.3, &o).unwrap().value;
        assert!(rel(deriv_i_ratio(4, 0.7, 2.3, &c).unwrap().value, fd) < 1e-6);
        let g = |t: f64| t.powf(-0.3) * bessel_k(0.3, t, &c).unwrap().value;
        let fd = fd_derivative(&g, 4, 1.7, &o).unwrap().value;
        assert!(rel(deriv_k_ratio(4, 0.3, 1.7, &c).unwrap().value, fd) < 1e-6);
        let h = |t: f64| (-0.4 * t).exp() * t.powf(-1.0) * bessel_i(1.0, t, &c).unwrap().value;
        let fd = fd_derivative(&h, 2, 1.2, &o).unwrap().value;
        assert!(rel(deriv_tilted_i(2, 1.0, 0.4, 1.2, &c).unwrap().value, fd) < 1e-6);
    }

    #[test]
    fn consecutive_orders_are_consistent() {
        let c = cfg();
        let o = OracleConfig::default();
        for &nu in &[-0.3, 0.0, 1.5] {
            for n in 0..4 {
                let f = |t: f64| deriv_k_ratio(n, nu, t, &c).unwrap().value;
                let fd = fd_derivative(&f, 1, 1.1, &o).unwrap().value;
                assert!(rel(deriv_k_ratio(n + 1, nu, 1.1, &c).unwrap().value, fd) < 1e-7);
            }
        }
    }

    #[test]
    fn tilted_with_zero_beta_matches_plain() {
        let c = cfg();
        for n in 0..5 {
            let a = deriv_tilted_i(n, 0.4, 0.0, 2.2, &c).unwrap().value;
            let b = deriv_i_ratio(n, 0.4, 2.2, &c).unwrap().value;
            assert!(rel(a, b) < 1e-15);
        }
        assert!(deriv_tilted_i(1, 0.4, 1.0, 2.2, &c).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn coefficients_sum_to_one(m in 0u32..30, nu in -0.499f64..20.0) {
            let sa: f64 = (0..=m).map(|k| coeff_a(m, k, nu).unwrap()).sum();
            let sb: f64 = (0..=m).map(|k| coeff_b(m, k, nu).unwrap()).sum();
            prop_assert!((sa - 1.0).abs() < 1e-11);
            prop_assert!((sb - 1.0).abs() < 1e-11);
        }

        #[test]
        fn derivative_envelopes(n in 0u32..7, nu in -0.49f64..6.0, x in 0.01f64..40.0) {
            let c = cfg();
            let di = deriv_i_ratio(n, nu, x, &c).unwrap().value;
            let top = if n % 2 == 0 { nu } else { nu + 1.0 };
            let env_i = x.powf(-nu) * bessel_i(top, x, &c).unwrap().value;
            prop_assert!(di > 0.0 && di <= env_i * (1.0 + 1e-12));
            let dk = deriv_k_ratio(n, nu, x, &c).unwrap().value;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!(sign * dk > 0.0);
            let env_k = x.powf(-nu) * bessel_k(nu + n as f64, x, &c).unwrap().value;
            prop_assert!(sign * dk <= env_k * (1.0 + 1e-12));
        }

        #[test]
        fn tilted_envelope(n in 0u32..5, nu in -0.49f64..5.0, beta in -0.99f64..0.99, x in 0.01f64..30.0) {
            let c = cfg();
            let d = deriv_tilted_i(n, nu, beta, x, &c).unwrap().value;
            let env = (1.0 + beta.abs()).powi(n as i32) * (-beta * x).exp() * x.powf(-nu) * bessel_i(nu, x, &c).unwrap().value;
            prop_assert!(d.abs() <= env * (1.0 + 1e-12));
        }
    }
}
