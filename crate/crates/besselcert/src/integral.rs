//! Repeated integrals of `e^{beta t} t^nu I_nu(t)`, tail integrals of
//! `e^{beta t} t^p K_mu(t)` and power integrals of `I`.
//!
//! `I_(nu,beta,0)(x) = e^{beta x} x^nu I_nu(x)` and each further level is the
//! integral from 0 of the previous one. With `beta = 0` the levels have a
//! positive power series; for other `beta` the `n`-fold integral is reduced
//! to the single integral `∫_0^x (x-y)^{n-1}/(n-1)! e^{beta y} y^nu I_nu(y) dy`.

use crate::error::{domain, Error, Result};
use crate::quad::{integrate, QuadTol};
use crate::special::{bessel_i_scaled, bessel_k_scaled, log_gamma, FunctionValue, Method};
use crate::EvalConfig;

const EPS: f64 = f64::EPSILON;
const MAX_TAIL_SEGMENTS: usize = 100_000;

fn tol(cfg: &EvalConfig) -> QuadTol {
    QuadTol {
        abs: cfg.quad_abs_tol,
        rel: cfg.quad_rel_tol,
        max_panels: cfg.quad_max_panels,
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!(
            "integration limit must be finite and >= 0, got {x}"
        ));
    }
    Ok(())
}

/// `e^{beta t} t^nu I_nu(t)` for `t > 0`.
fn weighted_i(nu: f64, beta: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    let s = bessel_i_scaled(nu, t, cfg)?.value;
    Ok((s.ln() + (1.0 + beta) * t + nu * t.ln()).exp())
}

/// `e^{beta t} t^p K_mu(t)` for `t > 0`.
fn weighted_k(p: f64, mu: f64, beta: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    let s = bessel_k_scaled(mu, t, cfg)?.value;
    Ok((s.ln() + (beta - 1.0) * t + p * t.ln()).exp())
}

/// Exponent of the substitution `t = u^s` that removes a `t^e` endpoint
/// singularity at zero.
fn substitution_power(e: f64) -> f64 {
    (1.0 / (e + 1.0)).max(2.0)
}

/// Sums a positive series whose term ratio is bounded by `bound(k)`, a
/// decreasing function. Returns (sum, terms used).
fn positive_series(
    first: f64,
    ratio: impl Fn(usize) -> f64,
    bound: impl Fn(usize) -> f64,
    cfg: &EvalConfig,
    what: &'static str,
) -> Result<f64> {
    let mut term = first;
    let mut sum = first;
    for k in 1..=cfg.series_max_terms {
        term *= ratio(k);
        sum += term;
        let rb = bound(k + 1);
        if rb < 1.0 && term * rb / (1.0 - rb) <= 0.1 * cfg.target_rel_tol * sum {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: cfg.series_max_terms,
    })
}

/// `I_(nu,0,n)(x)` from its power series
/// `Σ_k x^{2nu+2k+n} / (2^{nu+2k} Γ(nu+k+1) k! Π_{j=1}^n (2nu+2k+j))`.
pub fn repeated_integral_series(
    nu: f64,
    n: u32,
    x: f64,
    cfg: &EvalConfig,
) -> Result<FunctionValue> {
    if !(nu > -0.5) {
        return domain(format!(
            "repeated integral series requires nu > -1/2, got {nu}"
        ));
    }
    check_x(x)?;
    if x == 0.0 {
        let value = if n == 0 && nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(FunctionValue::new(value, 0.0, Method::Series));
    }
    let mut log_first =
        (2.0 * nu + n as f64) * x.ln() - nu * std::f64::consts::LN_2 - log_gamma(nu + 1.0)?;
    for j in 1..=n {
        log_first -= (2.0 * nu + j as f64).ln();
    }
    let q = 0.25 * x * x;
    let ratio = |k: usize| {
        let kf = k as f64;
        let mut r = q / (kf * (nu + kf));
        for j in 1..=n {
            let j = j as f64;
            r *= (2.0 * nu + 2.0 * kf - 2.0 + j) / (2.0 * nu + 2.0 * kf + j);
        }
        r
    };
    let bound = |k: usize| q / (k as f64 * (nu + k as f64));
    let s = positive_series(1.0, ratio, bound, cfg, "repeated integral series")?;
    let value = (log_first + s.ln()).exp();
    let rel = cfg.target_rel_tol + 8.0 * EPS * (1.0 + log_first.abs());
    Ok(FunctionValue::new(value, rel, Method::Series))
}

/// `∫_0^x t^p I_mu(t) dt` from its power series; needs `mu > -1`,
/// `p + mu > -1`.
pub fn power_integral_i(p: f64, mu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    if !(mu > -1.0) || !(p + mu > -1.0) {
        return domain(format!("∫ t^{p} I_{mu} diverges at 0"));
    }
    check_x(x)?;
    if x == 0.0 {
        return Ok(FunctionValue::new(0.0, 0.0, Method::Series));
    }
    let a = p + mu + 1.0;
    let log_first = a * x.ln() - mu * std::f64::consts::LN_2 - log_gamma(mu + 1.0)? - a.ln();
    let q = 0.25 * x * x;
    let ratio = |k: usize| {
        let kf = k as f64;
        q / (kf * (mu + kf)) * (a + 2.0 * kf - 2.0) / (a + 2.0 * kf)
    };
    let bound = |k: usize| {
        let kf = k as f64;
        q / (kf * (mu + kf)) * if a + 2.0 * kf - 2.0 > 0.0 { 1.0 } else { 0.0 }
    };
    let s = positive_series(1.0, ratio, bound, cfg, "power integral series")?;
    let value = (log_first + s.ln()).exp();
    let rel = cfg.target_rel_tol + 8.0 * EPS * (1.0 + log_first.abs());
    Ok(FunctionValue::new(value, rel, Method::Series))
}

/// `I_(nu,beta,n)(x)` by adaptive quadrature of the single-integral
/// reduction. Any finite `beta` is accepted (`beta = -1` gives a closed
/// form at `n = 1`).
pub fn repeated_integral_quad(
    nu: f64,
    beta: f64,
    n: u32,
    x: f64,
    cfg: &EvalConfig,
) -> Result<FunctionValue> {
    if !(nu > -0.5) {
        return domain(format!("repeated integral requires nu > -1/2, got {nu}"));
    }
    if !beta.is_finite() {
        return domain(format!("beta must be finite, got {beta}"));
    }
    check_x(x)?;
    if n == 0 {
        if x == 0.0 {
            return Ok(FunctionValue::new(
                if nu == 0.0 { 1.0 } else { 0.0 },
                0.0,
                Method::Series,
            ));
        }
        return Ok(FunctionValue::new(
            weighted_i(nu, beta, x, cfg)?,
            4.0 * cfg.target_rel_tol,
            Method::Series,
        ));
    }
    if x == 0.0 {
        return Ok(FunctionValue::new(0.0, 0.0, Method::Quadrature));
    }
    let s = substitution_power(2.0 * nu);
    let log_fact = crate::special::ln_factorial(n as u64 - 1);
    let g = |u: f64| -> Result<f64> {
        if u <= 0.0 {
            return Ok(0.0);
        }
        let t = x * u.powf(s);
        let jac = x * s * u.powf(s - 1.0);
        let w = (n as f64 - 1.0) * (x - t).ln() - log_fact;
        let w = if n == 1 { 1.0 } else { w.exp() };
        Ok(w * jac * weighted_i(nu, beta, t, cfg)?)
    };
    let r = integrate(&g, 0.0, 1.0, 8, tol(cfg))?;
    Ok(FunctionValue {
        value: r.value,
        abs_err_est: r.err + 8.0 * EPS * r.value.abs(),
        method: Method::Quadrature,
    })
}

/// `∫_x^∞ e^{beta t} t^p K_mu(t) dt` for `|beta| < 1`. At `x = 0` the
/// integrand must be integrable, i.e. `p - |mu| > -1` (`p > -1` if `mu = 0`).
pub fn tail_power_k(p: f64, mu: f64, beta: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    if !(beta.abs() < 1.0) {
        return domain(format!("tail integral requires |beta| < 1, got {beta}"));
    }
    check_x(x)?;
    let e = if mu == 0.0 { p } else { p - mu.abs() };
    if x == 0.0 && !(e > -1.0) {
        return domain(format!("∫_0 t^{p} K_{mu}(t) dt diverges"));
    }
    let t = tol(cfg);
    let f = |t: f64| weighted_k(p, mu, beta, t, cfg);
    let mut value = 0.0;
    let mut err = 0.0;
    if x < 1.0 {
        let s = substitution_power(e.min(0.0));
        let g = |u: f64| -> Result<f64> {
            if u <= 0.0 {
                return Ok(0.0);
            }
            Ok(s * u.powf(s - 1.0) * f(u.powf(s))?)
        };
        let r = integrate(&g, x.powf(1.0 / s), 1.0, 4, t)?;
        value += r.value;
        err += r.err;
    }
    let decay = 1.0 - beta;
    let width = (2.0 / decay).max(1.0);
    // Beyond t_safe the log-derivative of the integrand is below -decay/2.
    let t_safe = 2.0 * (p + mu.abs()) / decay;
    let mut a = x.max(1.0);
    for _ in 0..MAX_TAIL_SEGMENTS {
        let b = a + width;
        let r = integrate(&f, a, b, 1, t)?;
        value += r.value;
        err += r.err;
        a = b;
        if a >= t_safe {
            let remainder = f(a)? * 2.0 / decay;
            if remainder <= 1e-3 * EPS * value || remainder <= cfg.quad_abs_tol {
                err += remainder;
                return Ok(FunctionValue {
                    value,
                    abs_err_est: err + 8.0 * EPS * value,
                    method: Method::Quadrature,
                });
            }
        }
    }
    Err(Error::QuadratureFailure(format!(
        "tail integral did not settle by t = {a}"
    )))
}

/// `∫_x^∞ e^{beta t} t^nu K_nu(t) dt`.
pub fn tail_integral_k(nu: f64, beta: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    tail_power_k(nu, nu, beta, x, cfg)
}

/// `∫_x^∞ t^{nu-k} K_{nu+n}(t) dt` for `x >= 1`, `0 <= k <= n`.
pub fn tail_integral_k_shifted(
    nu: f64,
    k_shift: u32,
    n_shift: u32,
    x: f64,
    cfg: &EvalConfig,
) -> Result<FunctionValue> {
    if !(x >= 1.0) {
        return domain(format!("shifted tail integral requires x >= 1, got {x}"));
    }
    if k_shift > n_shift {
        return domain(format!(
            "shifted tail integral requires k <= n, got k = {k_shift}, n = {n_shift}"
        ));
    }
    tail_power_k(nu - k_shift as f64, nu + n_shift as f64, 0.0, x, cfg)
}
