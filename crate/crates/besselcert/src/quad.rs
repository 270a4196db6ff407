//! Adaptive Gauss–Legendre quadrature with a global error-driven panel queue.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 15;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// `P_15`.
fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            out.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
        }
        out
    })
}

fn apply(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for &(z, w) in rule() {
        s += w * f(c + h * z)?;
    }
    Ok(s * h)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then(other.a.total_cmp(&self.a))
    }
}

fn panel(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<(Panel, usize)> {
    let m = 0.5 * (a + b);
    let whole = apply(f, a, b)?;
    let halves = apply(f, a, m)? + apply(f, m, b)?;
    let value = halves;
    let err = (whole - halves).abs();
    if !value.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    Ok((Panel { a, b, value, err }, 3))
}

/// Integral estimate with its absolute error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadResult {
    pub value: f64,
    pub err: f64,
}

/// Tolerances and panel budget for one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadTol {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

/// Integrate `f` over `[a, b]`, starting from `initial` equal panels and
/// repeatedly bisecting the panel with the largest error estimate.
pub(crate) fn integrate(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    initial: usize,
    tol: QuadTol,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err: 0.0,
        });
    }
    let mut heap = BinaryHeap::new();
    let initial = initial.max(1);
    let step = (b - a) / initial as f64;
    let mut panels = 0;
    for i in 0..initial {
        let lo = a + step * i as f64;
        let hi = if i + 1 == initial { b } else { lo + step };
        let (p, c) = panel(f, lo, hi)?;
        panels += c;
        heap.push(p);
    }
    loop {
        let (value, err) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err));
        if err <= tol.abs.max(tol.rel * value.abs()) {
            // Sum in a fixed order so the result does not depend on heap layout.
            let mut all: Vec<&Panel> = heap.iter().collect();
            all.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = all.iter().map(|p| p.value).sum();
            return Ok(QuadResult { value, err });
        }
        if panels >= tol.max_panels {
            return Err(Error::QuadratureFailure(format!(
                "panel budget {} exhausted on [{a}, {b}] with error {err:e} for value {value:e}",
                tol.max_panels
            )));
        }
        let worst = heap.pop().expect("heap is nonempty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // Panel can no longer be split; accept its estimate.
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        let (l, c1) = panel(f, worst.a, m)?;
        let (r, c2) = panel(f, m, worst.b)?;
        panels += c1 + c2;
        heap.push(l);
        heap.push(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: QuadTol = QuadTol {
        abs: 1e-300,
        rel: 1e-14,
        max_panels: 4000,
    };

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let s: f64 = rule().iter().map(|p| p.1).sum();
        assert!((s - 2.0).abs() < 1e-14);
        let v = apply(&|t| Ok(t.powi(28)), -1.0, 1.0).unwrap();
        assert!((v - 2.0 / 29.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = integrate(&|t| Ok(t.sqrt().ln()), 0.0, 1.0, 1, TOL).unwrap();
        assert!((v.value + 0.5).abs() < 1e-12, "{}", v.value);
        let v = integrate(&|t| Ok((-t).exp()), 0.0, 40.0, 4, TOL).unwrap();
        assert!((v.value - (1.0 - (-40f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = QuadTol {
            abs: 0.0,
            rel: 0.0,
            max_panels: 10,
        };
        assert!(matches!(
            integrate(&|t| Ok(t.sin()), 0.0, 1.0, 1, tight),
            Err(Error::QuadratureFailure(_))
        ));
    }
}
