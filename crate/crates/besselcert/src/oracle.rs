//! Brute-force reference oracles: Richardson-extrapolated central
//! differences and tanh-sinh quadrature. Deliberately simple and slow, and
//! independent of the production derivative and quadrature code.

use crate::error::{domain, Error, Result};
use crate::OracleConfig;

/// A finite-difference estimate with its tableau error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEstimate {
    pub value: f64,
    pub err: f64,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Central difference of order `n` with spacing `h`; nodes sit at
/// `x + (n/2 - j) h`, so the error expands in even powers of `h`.
fn central_difference(f: &dyn Fn(f64) -> f64, n: u32, x: f64, h: f64) -> f64 {
    let half = n as f64 / 2.0;
    let mut s = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * binomial(n, j) * f(x + (half - j as f64) * h);
    }
    s / h.powi(n as i32)
}

/// `n`-th derivative of `f` at `x` (n in 1..=4) by Ridders' extrapolation of
/// central differences. For `x > 0` the stencil is kept inside `(0, ∞)`.
pub fn fd_derivative(
    f: &dyn Fn(f64) -> f64,
    n: u32,
    x: f64,
    ocfg: &OracleConfig,
) -> Result<FdEstimate> {
    if !(1..=4).contains(&n) {
        return domain(format!("fd_derivative supports orders 1..=4, got {n}"));
    }
    let mut h = ocfg.fd_step;
    let reach = n as f64 / 2.0;
    if x > 0.0 {
        h = h.min(0.9 * x / reach * 0.5);
    }
    if h < 1e-6 * x.abs().max(1.0) {
        return Err(Error::StepUnderflow { x, step: h });
    }
    const SHRINK: f64 = 1.4;
    let levels = ocfg.richardson_levels.max(2);
    let mut table = vec![vec![0.0; levels]; levels];
    table[0][0] = central_difference(f, n, x, h);
    let mut best = FdEstimate {
        value: table[0][0],
        err: f64::INFINITY,
    };
    for i in 1..levels {
        h /= SHRINK;
        table[0][i] = central_difference(f, n, x, h);
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let errt = (table[j][i] - table[j - 1][i])
                .abs()
                .max((table[j][i] - table[j - 1][i - 1]).abs());
            if errt <= best.err {
                best = FdEstimate {
                    value: table[j][i],
                    err: errt,
                };
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best.err {
            break;
        }
    }
    Ok(best)
}

/// `∫_a^b f` (or `∫_a^∞ f` when `b` is `None`) by tanh-sinh quadrature with
/// level doubling. Handles integrable endpoint singularities.
pub fn brute_quadrature(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: Option<f64>,
    ocfg: &OracleConfig,
) -> Result<f64> {
    // g(s, 1 - s) on [0, 1]; the complement is passed to keep endpoints exact.
    let g = |s: f64, sc: f64| -> f64 {
        match b {
            Some(b) => {
                let w = b - a;
                let t = if s < 0.5 { a + w * s } else { b - w * sc };
                w * f(t)
            }
            None => {
                let t = a + s / sc;
                f(t) / (sc * sc)
            }
        }
    };
    if let Some(b) = b {
        if b == a {
            return Ok(0.0);
        }
        if b < a {
            return domain("brute_quadrature requires a <= b");
        }
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Contribution of the node pair at parameter t (t > 0) or the centre.
    let pair = |t: f64| -> f64 {
        let u = half_pi * t.sinh();
        let c = 1.0 / (1.0 + (2.0 * u).exp());
        let dxdt = c * (1.0 - c) * std::f64::consts::PI * t.cosh();
        if c == 0.0 || dxdt == 0.0 {
            return 0.0;
        }
        let left = g(c, 1.0 - c);
        let right = g(1.0 - c, c);

        dxdt * (if left.is_finite() { left } else { 0.0 }
            + if right.is_finite() { right } else { 0.0 })
    };
    let t_max = 6.5;
    let mut h = 1.0;
    let mut evals = 1usize;
    let mut sum = 0.5 * std::f64::consts::FRAC_PI_2 * g(0.5, 0.5);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += pair(k as f64 * h);
        evals += 2;
        k += 1;
    }
    let mut estimate = h * sum;
    for level in 0..14 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += pair(k as f64 * h);
            evals += 2;
            k += 2;
        }
        let next = h * sum;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= ocfg.quad_abs_tol.max(ocfg.quad_rel_tol * next.abs()) * 1e-3 && level >= 2 {
            return Ok(estimate);
        }
        if evals > ocfg.max_panels {
            return Err(Error::PanelBudgetExceeded(ocfg.max_panels));
        }
    }
    Ok(estimate)
}

/// `n`-fold repeated integral `∫_0^x ∫_0^{y_1} ... f` by direct nesting of
/// [`brute_quadrature`]. Cost grows geometrically with `n`.
pub fn nested_integral(f: &dyn Fn(f64) -> f64, n: u32, x: f64, ocfg: &OracleConfig) -> Result<f64> {
    if n == 0 {
        return Ok(f(x));
    }
    if n == 1 {
        return brute_quadrature(f, 0.0, Some(x), ocfg);
    }
    let inner = |y: f64| nested_integral(f, n - 1, y, ocfg).unwrap_or(f64::NAN);
    let v = brute_quadrature(&inner, 0.0, Some(x), ocfg)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureFailure(
            "nested integral produced a non-finite value".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_second_derivative_is_exact() {
        let o = OracleConfig::default();
        for &x in &[-3.0, 0.0, 0.7, 5.0] {
            let d = fd_derivative(&|t| t * t, 2, x, &o).unwrap();
            assert!((d.value - 2.0).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn exp_derivatives() {
        let o = OracleConfig::default();
        for n in 1..=4 {
            let d = fd_derivative(&|t: f64| (0.7 * t).exp(), n, 1.3, &o).unwrap();
            let want = 0.7f64.powi(n as i32) * (0.7 * 1.3f64).exp();
            assert!(((d.value - want) / want).abs() < 1e-9, "n={n}: {}", d.value);
        }
    }

    #[test]
    fn step_underflow() {
        let o = OracleConfig::default();
        assert!(matches!(
            fd_derivative(&|t| t, 2, 1e-9, &o),
            Err(Error::StepUnderflow { .. })
        ));
    }

    #[test]
    fn halving_step_stays_within_estimate() {
        let f = |t: f64| t.sin() * (0.3 * t).exp();
        let o = OracleConfig::default();
        let o2 = OracleConfig {
            fd_step: o.fd_step / 2.0,
            ..o
        };
        for n in 1..=4 {
            let a = fd_derivative(&f, n, 2.0, &o).unwrap();
            let b = fd_derivative(&f, n, 2.0, &o2).unwrap();
            assert!(
                (a.value - b.value).abs() <= 10.0 * (a.err + b.err) + 1e-12,
                "n={n}"
            );
        }
    }

    #[test]
    fn quadrature_known_integrals() {
        let o = OracleConfig::default();
        assert!((brute_quadrature(&|_| 1.0, 0.0, Some(1.0), &o).unwrap() - 1.0).abs() < 1e-14);
        let v = brute_quadrature(&|t: f64| (-t).exp(), 0.0, None, &o).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // Integrable endpoint singularity: ∫_0^1 t^{-0.9} dt = 10.
        let v = brute_quadrature(&|t: f64| t.powf(-0.9), 0.0, Some(1.0), &o).unwrap();
        assert!((v - 10.0).abs() < 1e-9, "{v}");
        // t^{1/2} K_{1/2}(t) = sqrt(pi/2) e^{-t}.
        let v = brute_quadrature(&|t: f64| (PI / 2.0).sqrt() * (-t).exp(), 0.0, None, &o).unwrap();
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-12);
    }
}
