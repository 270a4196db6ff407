//! Modified Bessel functions `I_nu` and `K_nu` of real order and argument.
//!
//! `I` uses its power series up to the switch point and the Wronskian
//! `I_nu (K_{nu+1} + r K_nu) = 1/x`, with `r = I_{nu+1}/I_nu` from a continued
//! fraction, beyond it. `K` is computed at a base order in `[-1/2, 1/2)` by
//! Temme's series (`x <= 2`) or Steed's continued fraction (`x > 2`) and
//! carried to the requested order by forward recurrence, which is stable
//! for `K`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gamma::{harmonic, rgamma, temme_gammas, EULER_GAMMA};
use crate::error::{domain, Error, Result};
use crate::EvalConfig;

const EPS: f64 = f64::EPSILON;
const TEMME_MAX_X: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Asymptotic,
    ClosedForm,
    Recurrence,
    Quadrature,
}

/// A value with a first-order absolute error estimate and the method used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionValue {
    pub value: f64,
    pub abs_err_est: f64,
    pub method: Method,
}

impl FunctionValue {
    pub(crate) fn new(value: f64, rel_err: f64, method: Method) -> Self {
        Self {
            value,
            abs_err_est: (value * rel_err).abs(),
            method,
        }
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite, got {v}"))
    }
}

/// `exp(log_prefix) * Σ_k (x/2)^{2k} Γ(nu+1) / (Γ(nu+k+1) k!)`, i.e. the
/// power series of `I_nu` multiplied by `exp(log_shift)`. Returns the value
/// and a relative error estimate.
pub(crate) fn i_series_shifted(
    nu: f64,
    x: f64,
    log_shift: f64,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    let log_prefix = nu * (0.5 * x).ln() - super::gamma::log_gamma(nu + 1.0)? + log_shift;
    let q = 0.25 * x * x;
    let min_terms = nu.abs().ceil() as usize + 2;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0usize;
    loop {
        k += 1;
        if k > cfg.series_max_terms {
            return Err(Error::NonConvergence {
                what: "I series",
                terms: k - 1,
            });
        }
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if k >= min_terms && term <= cfg.target_rel_tol * sum {
            break;
        }
    }
    let value = log_prefix.exp() * sum;
    let rel = (k as f64).sqrt() * EPS + term / sum + EPS * log_prefix.abs();
    Ok((value, rel))
}

/// `I_{nu+1}(x) / I_nu(x)` by the modified Lentz algorithm, `nu > -1`.
fn i_ratio_cf(nu: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let max_iter = 200_000 + 4 * x as usize;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..=max_iter {
        let b = 2.0 * (nu + k as f64) / x;
        d += b;
        if d == 0.0 {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(f);
        }
    }
    Err(Error::NonConvergence {
        what: "I ratio continued fraction",
        terms: max_iter,
    })
}

/// `(e^x K_mu, e^x K_{mu+1})` for `|mu| <= 1/2`, with an iteration count.
fn k_base_scaled(mu: f64, x: f64) -> Result<(f64, f64, usize, Method)> {
    const MAX_IT: usize = 100_000;
    if x <= TEMME_MAX_X {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mu2 = mu * mu;
        let mut it = 0;
        for i in 1..=MAX_IT {
            it = i;
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        if it == MAX_IT {
            return Err(Error::NonConvergence {
                what: "K Temme series",
                terms: MAX_IT,
            });
        }
        let scale = x.exp();
        Ok((sum * scale, sum1 * (2.0 / x) * scale, it, Method::Series))
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut it = 0;
        for i in 2..=MAX_IT {
            it = i;
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        if it == MAX_IT {
            return Err(Error::NonConvergence {
                what: "K continued fraction",
                terms: MAX_IT,
            });
        }
        let h = a1 * h;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        let k1 = kmu * (mu + x + 0.5 - h) / x;
        Ok((kmu, k1, it, Method::Recurrence))
    }
}

/// `e^x K_{order+j}(x)` for `j = 0..=extra`, any real `order`.
pub(crate) fn k_scaled_seq(order: f64, x: f64, extra: usize) -> Result<(Vec<f64>, f64, Method)> {
    if !(x > 0.0) {
        return domain(format!("K_nu(x) requires x > 0, got x = {x}"));
    }
    check_finite("order", order)?;
    let mut out = Vec::with_capacity(extra + 1);
    if order >= 0.0 {
        let nl = (order + 0.5).floor();
        let mu = order - nl;
        let (mut k0, mut k1, it, method) = k_base_scaled(mu, x)?;
        let nl = nl as usize;
        for i in 1..=nl + extra {
            if i > nl {
                out.push(k0);
            }
            let next = (mu + i as f64) * (2.0 / x) * k1 + k0;
            k0 = k1;
            k1 = next;
        }
        out.push(k0);
        if extra > 0 && nl == 0 {
            // `out` already holds orders from mu upward; nothing to trim.
        }
        let rel = (24.0 + 2.0 * (nl + extra) as f64 + (it as f64).sqrt()) * EPS;
        let method = if nl > 0 || extra > 0 {
            method_with_recurrence(method)
        } else {
            method
        };
        finish_seq(out, rel, method)
    } else {
        // Negative order: K_order = K_|order| and K_{order+1} separately, then
        // forward recurrence (all terms positive for order > -1).
        let (a, _, _) = k_scaled_seq(-order, x, 0)?;
        let (b, rel, method) = k_scaled_seq(order + 1.0, x, 0)?;
        let (mut k0, mut k1) = (a[0], b[0]);
        out.push(k0);
        for j in 1..=extra {
            out.push(k1);
            let next = (order + j as f64) * (2.0 / x) * k1 + k0;
            k0 = k1;
            k1 = next;
        }
        finish_seq(out, rel + 4.0 * EPS, method)
    }
}

fn method_with_recurrence(m: Method) -> Method {
    match m {
        Method::Series => Method::Series,
        _ => Method::Recurrence,
    }
}

fn finish_seq(out: Vec<f64>, rel: f64, method: Method) -> Result<(Vec<f64>, f64, Method)> {
    if out.iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok((out, rel, method))
    } else {
        Err(Error::Overflow(
            "K recurrence left the floating-point range".into(),
        ))
    }
}

/// `e^{-x} I_nu(x)` together with a relative error estimate and method.
fn i_scaled_core(nu: f64, x: f64, cfg: &EvalConfig) -> Result<(f64, f64, Method)> {
    check_finite("nu", nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("I_nu(x) requires finite x >= 0, got x = {x}"));
    }
    if nu <= -1.0 {
        return domain(format!("I_nu requires nu > -1, got nu = {nu}"));
    }
    if nu == -0.5 {
        if x == 0.0 {
            return domain("I_{-1/2}(x) diverges at x = 0");
        }
        let v = (2.0 / (PI * x)).sqrt() * 0.5 * (1.0 + (-2.0 * x).exp());
        return Ok((v, 4.0 * EPS, Method::ClosedForm));
    }
    if x == 0.0 {
        return match nu {
            0.0 => Ok((1.0, 0.0, Method::Series)),
            n if n > 0.0 => Ok((0.0, 0.0, Method::Series)),
            _ => domain(format!("I_nu(0) diverges for nu = {nu} < 0")),
        };
    }
    if x <= cfg.switch_x_for(nu) {
        let (v, rel) = i_series_shifted(nu, x, -x, cfg)?;
        return Ok((v, rel, Method::Series));
    }
    if nu < 0.0 {
        // I_nu = I_{nu+2} + 2(nu+1)/x I_{nu+1}, both terms positive.
        let (a, ra, _) = i_scaled_core(nu + 1.0, x, cfg)?;
        let (b, rb, _) = i_scaled_core(nu + 2.0, x, cfg)?;
        return Ok((
            b + 2.0 * (nu + 1.0) / x * a,
            ra.max(rb) + 2.0 * EPS,
            Method::Recurrence,
        ));
    }
    let (ks, krel, _) = k_scaled_seq(nu, x, 1)?;
    let r = i_ratio_cf(nu, x)?;
    let v = 1.0 / (x * (ks[1] + r * ks[0]));
    Ok((v, krel + 8.0 * EPS, Method::Recurrence))
}

/// `I_nu(x)` for `nu > -1`, `x >= 0`.
pub fn bessel_i(nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    if nu == -0.5 && x > 0.0 {
        let v = (2.0 / (PI * x)).sqrt() * x.cosh();
        return finite_value(v, 4.0 * EPS, Method::ClosedForm, "I_nu");
    }
    if x > 0.0 && x <= cfg.switch_x_for(nu) && nu > -1.0 {
        let (v, rel) = i_series_shifted(nu, x, 0.0, cfg)?;
        return Ok(FunctionValue::new(v, rel, Method::Series));
    }
    let (s, rel, method) = i_scaled_core(nu, x, cfg)?;
    finite_value(s * x.exp(), rel + EPS * x, method, "I_nu")
}

/// `e^{-x} I_nu(x)` for `nu > -1`, `x >= 0`.
pub fn bessel_i_scaled(nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    let (v, rel, method) = i_scaled_core(nu, x, cfg)?;
    Ok(FunctionValue::new(v, rel, method))
}

/// `K_nu(x)` for real `nu`, `x > 0`.
pub fn bessel_k(nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    let s = bessel_k_scaled(nu, x, cfg)?;
    let v = s.value * (-x).exp();
    if v == 0.0 {
        return Err(Error::Overflow(format!(
            "K_{nu}({x}) underflows; use the scaled form"
        )));
    }
    finite_value(v, s.abs_err_est / s.value + EPS * x, s.method, "K_nu")
}

/// `e^x K_nu(x)` for real `nu`, `x > 0`.
pub fn bessel_k_scaled(nu: f64, x: f64, _cfg: &EvalConfig) -> Result<FunctionValue> {
    check_finite("nu", nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("K_nu(x) requires finite x > 0, got x = {x}"));
    }
    if nu.abs() == 0.5 {
        return Ok(FunctionValue::new(
            (PI / (2.0 * x)).sqrt(),
            2.0 * EPS,
            Method::ClosedForm,
        ));
    }
    let (seq, rel, method) = k_scaled_seq(nu.abs(), x, 0)?;
    Ok(FunctionValue::new(seq[0], rel, method))
}

/// `I_nu(x) K_nu(x)` computed from the scaled forms.
pub fn product_ik(nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    if nu <= -0.5 {
        return domain(format!("product_ik requires nu > -1/2, got nu = {nu}"));
    }
    let i = bessel_i_scaled(nu, x, cfg)?;
    let k = bessel_k_scaled(nu, x, cfg)?;
    let v = i.value * k.value;
    let rel = i.abs_err_est / i.value + k.abs_err_est / k.value;
    Ok(FunctionValue::new(v, rel, i.method))
}

fn finite_value(v: f64, rel: f64, method: Method, name: &str) -> Result<FunctionValue> {
    if v.is_finite() {
        Ok(FunctionValue::new(v, rel, method))
    } else {
        Err(Error::Overflow(format!(
            "{name} exceeds the floating-point range; use the scaled form"
        )))
    }
}

/// `K_nu(x)` from its explicit power series: the `1/sin(pi nu)` difference
/// formula for non-integer order and the logarithmic series for integer
/// order (used when `nu` is within `near_integer_eps` of an integer).
///
/// Only accurate for small and moderate `x`; the main evaluator uses Temme's
/// method instead. Kept as an independent cross-check.
pub fn bessel_k_series(nu: f64, x: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    if !(x > 0.0) {
        return domain(format!("K_nu(x) requires x > 0, got x = {x}"));
    }
    let a = nu.abs();
    let n = a.round();
    let h = 0.5 * x;
    let q = h * h;
    let v = if (a - n).abs() < cfg.near_integer_eps {
        let n = n as u64;
        let nf = n as f64;
        let mut finite = 0.0;
        let mut fact_ratio = super::gamma::factorial(n.saturating_sub(1)); // (n-k-1)!/k!
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            finite += sign * fact_ratio * h.powf(2.0 * k as f64 - nf);
            if k + 1 < n {
                fact_ratio /= ((n - k - 1) as f64) * ((k + 1) as f64);
            }
        }
        finite *= 0.5;
        let mut term = h.powf(nf) / super::gamma::factorial(n);
        let mut i_sum = 0.0;
        let mut psi_sum = 0.0;
        for k in 0..cfg.series_max_terms as u64 {
            i_sum += term;
            let add = (harmonic(k) + harmonic(n + k)) * term;
            psi_sum += add;
            if k > 2 && term.abs() <= cfg.target_rel_tol * 1e-3 * i_sum.abs() {
                break;
            }
            term *= q / (((k + 1) * (n + k + 1)) as f64);
        }
        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
        finite - sgn * (h.ln() + EULER_GAMMA) * i_sum + sgn * 0.5 * psi_sum
    } else {
        let series = |order: f64| {
            let mut s = 0.0;
            let mut fact = 1.0;
            for k in 0..cfg.series_max_terms {
                let kf = k as f64;
                if k > 0 {
                    fact *= kf;
                }
                let t = h.powf(2.0 * kf + order) * rgamma(order + kf + 1.0) / fact;
                s += t;
                if kf > order.abs() + 2.0 && t.abs() <= 1e-17 * s.abs() {
                    break;
                }
            }
            s
        };
        PI / (2.0 * (PI * a).sin()) * (series(-a) - series(a))
    };
    if v.is_finite() && v > 0.0 {
        Ok(FunctionValue::new(v, 1e3 * EPS, Method::Series))
    } else {
        Err(Error::CancellationLoss(format!(
            "K series at nu = {nu}, x = {x} lost all accuracy"
        )))
    }
}

/// `x^{-p} I_order(x)`, with the limit at `x = 0` when `order >= p`.
pub(crate) fn i_over_pow(order: f64, p: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    if x == 0.0 {
        if order == p {
            return Ok((-p * std::f64::consts::LN_2 - super::gamma::log_gamma(p + 1.0)?).exp());
        }
        if order > p {
            return Ok(0.0);
        }
        return domain(format!("x^-{p} I_{order}(x) diverges at x = 0"));
    }
    if x <= cfg.switch_x_for(order) && order > -1.0 && order != -0.5 {
        return Ok(i_series_shifted(order, x, -p * x.ln(), cfg)?.0);
    }
    let (s, _, _) = i_scaled_core(order, x, cfg)?;
    Ok((s.ln() + x - p * x.ln()).exp())
}

/// `x^{-p} K_{order+j}(x)` for `j = 0..=extra`.
pub(crate) fn k_over_pow_seq(order: f64, p: f64, x: f64, extra: usize) -> Result<Vec<f64>> {
    let (seq, _, _) = k_scaled_seq(order, x, extra)?;
    let f = (-x - p * x.ln()).exp();
    Ok(seq.into_iter().map(|v| v * f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Reference values from a 40-digit evaluation (mpmath).
    const I_REF: &[(f64, f64, f64)] = &[
        (0.0, 1.0, 1.266_065_877_752_008_3),
        (1.0, 1.0, 0.565_159_103_992_485_03),
        (0.3, 0.01, 0.227_341_685_722_314_38),
        (2.7, 5.0, 12.340_632_426_526_796),
        (10.0, 3.0, 1.946_439_347_061_296_9e-5),
        (0.0, 40.0, 1.489_477_479_341_99e16),
        (15.0, 60.0, 8.986_264_826_640_603e23),
        (-0.4, 2.0, 2.188_514_141_787_165),
        (-0.4, 45.0, 2.079_671_437_774_154e18),
    ];

    const K_REF: &[(f64, f64, f64)] = &[
        (0.0, 1.0, 0.421_024_438_240_708_33),
        (1.0, 1.0, 0.601_907_230_197_234_57),
        (0.3, 0.01, 6.890_102_638_292_769_5),
        (2.7, 5.0, 0.007_126_248_755_633_331_6),
        (10.0, 3.0, 2_459.620_422_056_946_8),
        (0.25, 2.5, 0.063_017_158_998_619_516),
        (19.0, 1e-4, 1.678_343_852_481_256e97),
        (0.0, 40.0, 8.392_861_100_099_567e-19),
    ];

    #[test]
    fn i_matches_reference() {
        for &(nu, x, v) in I_REF {
            let got = bessel_i(nu, x, &cfg()).unwrap().value;
            assert!(rel(got, v) < 1e-13, "I_{nu}({x}) = {got}, want {v}");
        }
    }

    #[test]
    fn k_matches_reference() {
        for &(nu, x, v) in K_REF {
            let got = bessel_k(nu, x, &cfg()).unwrap().value;
            assert!(rel(got, v) < 1e-13, "K_{nu}({x}) = {got}, want {v}");
        }
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_i(0.0, 0.0, &cfg()).unwrap().value, 1.0);
        assert_eq!(bessel_i(1.0, 0.0, &cfg()).unwrap().value, 0.0);
        assert_eq!(bessel_i_scaled(0.0, 0.0, &cfg()).unwrap().value, 1.0);
        assert!(bessel_k(0.0, 0.0, &cfg()).is_err());
        assert!(bessel_i(-1.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn spherical_forms() {
        let x = 0.5;
        let want = (2.0 / (PI * x)).sqrt() * x.cosh();
        assert!(rel(bessel_i(-0.5, x, &cfg()).unwrap().value, want) < 1e-15);
        // The series at a nearby order agrees with the closed form.
        let near = bessel_i(-0.5 + 1e-12, x, &cfg()).unwrap().value;
        assert!(rel(near, want) < 1e-10);
        let k = bessel_k(0.5, 2.0, &cfg()).unwrap().value;
        assert!(rel(k, (PI / 4.0).sqrt() * (-2.0f64).exp()) < 1e-15);
        assert_eq!(bessel_k(-0.5, 2.0, &cfg()).unwrap().value, k);
        let ks = bessel_k_scaled(0.5, 10.0, &cfg()).unwrap().value;
        assert!(rel(ks, (PI / 20.0).sqrt()) < 1e-15);
        for i in 0..30 {
            let x = 0.1 + i as f64;
            let sinh = (2.0 / (PI * x)).sqrt() * x.sinh();
            assert!(
                rel(bessel_i(0.5, x, &cfg()).unwrap().value, sinh) < 1e-12,
                "x={x}"
            );
            let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel(bessel_k(0.5 + 1e-9, x, &cfg()).unwrap().value, k) < 1e-8);
        }
    }

    #[test]
    fn large_argument_scaled() {
        let v = bessel_i_scaled(0.0, 700.0, &cfg()).unwrap().value;
        assert!(rel(v, 1.0 / (2.0 * PI * 700.0).sqrt()) < 1e-3);
        let v = bessel_i_scaled(2.0, 1e4, &cfg()).unwrap().value;
        assert!(v.is_finite() && rel(v, 1.0 / (2.0 * PI * 1e4).sqrt()) < 1e-3);
        let k = bessel_k_scaled(3.0, 1e4, &cfg()).unwrap().value;
        assert!(rel(k, (PI / 2e4).sqrt()) < 1e-3);
    }

    #[test]
    fn k_near_zero_is_log_like() {
        let x = 1e-6;
        let k = bessel_k(0.0, x, &cfg()).unwrap().value;
        assert!(rel(k, -x.ln()) < 0.02);
    }

    #[test]
    fn explicit_series_agrees_with_temme() {
        for &nu in &[0.0, 1.0, 2.0, 3.0, 0.3, 1.25, 2.7, 4.5] {
            for &x in &[0.01, 0.3, 1.0, 2.0, 4.0] {
                let a = bessel_k_series(nu, x, &cfg()).unwrap().value;
                let b = bessel_k(nu, x, &cfg()).unwrap().value;
                assert!(rel(a, b) < 1e-11, "nu={nu} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn switch_point_continuity() {
        for &nu in &[0.0, 0.5, 1.0, 3.7, 10.0] {
            let s = cfg().switch_x_for(nu);
            let below = bessel_i_scaled(nu, s * (1.0 - 1e-14), &cfg())
                .unwrap()
                .value;
            let above = bessel_i_scaled(nu, s * (1.0 + 1e-14), &cfg())
                .unwrap()
                .value;
            assert!(rel(below, above) < 1e-13, "nu={nu}: {below} vs {above}");
        }
    }

    #[test]
    fn product_limits() {
        let p = product_ik(1.0, 200.0, &cfg()).unwrap().value;
        assert!(p <= 0.5 && (200.0 * p - 0.5).abs() < 1e-3);
        let a = product_ik(1.0, 1.0, &cfg()).unwrap().value;
        let b = product_ik(1.0, 2.0, &cfg()).unwrap().value;
        assert!(a > b);
        assert!(product_ik(2.0, 0.3, &cfg()).unwrap().value <= 0.25);
    }

    #[test]
    fn near_integer_continuity() {
        for m in 0..4 {
            for &x in &[0.5, 1.0, 5.0] {
                let k = bessel_k(m as f64, x, &cfg()).unwrap().value;
                for d in [-1e-7, 1e-7] {
                    let kd = bessel_k(m as f64 + d, x, &cfg()).unwrap().value;
                    assert!(rel(kd, k) <= 1e-5);
                    let ks = bessel_k_series(m as f64 + d, x, &cfg()).unwrap().value;
                    assert!(rel(ks, k) <= 1e-5);
                }
            }
        }
    }
}
