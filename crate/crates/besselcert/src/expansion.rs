//! Generalized small-`x` power series `Σ c x^{a + b θ} (log x)^l` with
//! integer `a`, `b`, `l` and a fixed real parameter `θ`. Products of the
//! repeated-integral series with the `K` expansion are formed term by term,
//! so singular powers cancel exactly before any number is evaluated.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use crate::deriv::coefficient_table;
use crate::error::{Error, Result};
use crate::special::{gamma, harmonic, rgamma, EULER_GAMMA};

/// Terms kept from each factor series; ample for `x <= 1`.
const TERMS: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    a: i64,
    b: i64,
    log_pow: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct GenSeries {
    theta: f64,
    terms: Vec<(Key, f64)>,
}

impl GenSeries {
    fn new(theta: f64) -> Self {
        Self {
            theta,
            terms: Vec::new(),
        }
    }

    fn push(&mut self, a: i64, b: i64, log_pow: u32, coef: f64) {
        if coef != 0.0 {
            self.terms.push((Key { a, b, log_pow }, coef));
        }
    }

    pub(crate) fn monomial(theta: f64, a: i64, b: i64, coef: f64) -> Self {
        let mut s = Self::new(theta);
        s.push(a, b, 0, coef);
        s
    }

    pub(crate) fn scale(mut self, c: f64) -> Self {
        for t in &mut self.terms {
            t.1 *= c;
        }
        self
    }

    pub(crate) fn add(mut self, other: &GenSeries) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    pub(crate) fn mul(&self, other: &GenSeries) -> Self {
        let mut out = Self::new(self.theta);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.push(k1.a + k2.a, k1.b + k2.b, k1.log_pow + k2.log_pow, c1 * c2);
            }
        }
        out
    }

    fn exponent(&self, k: &Key) -> f64 {
        k.a as f64 + k.b as f64 * self.theta
    }

    /// Merges equal keys, then removes groups whose power is negative (or
    /// zero with a logarithm) after checking that they cancel to within
    /// `rel_tol` of their largest contribution.
    pub(crate) fn cancel_singular(&self, rel_tol: f64) -> Result<GenSeries> {
        let mut groups: BTreeMap<Key, (f64, f64)> = BTreeMap::new();
        for (k, c) in &self.terms {
            let e = groups.entry(*k).or_insert((0.0, 0.0));
            e.0 += c;
            e.1 = e.1.max(c.abs());
        }
        let mut out = Self::new(self.theta);
        for (k, (sum, big)) in groups {
            let e = self.exponent(&k);
            let singular = e < -1e-12 || (e.abs() <= 1e-12 && k.log_pow > 0);
            if singular {
                if sum.abs() > rel_tol * big {
                    return Err(Error::CancellationLoss(format!(
                        "x^{e} log^{} coefficient {sum:e} does not cancel (scale {big:e})",
                        k.log_pow
                    )));
                }
            } else {
                out.push(k.a, k.b, k.log_pow, sum);
            }
        }
        Ok(out)
    }

    /// Limit at `x = 0` of a series with no singular terms.
    pub(crate) fn limit_at_zero(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| k.log_pow == 0 && self.exponent(k).abs() <= 1e-12)
            .map(|(_, c)| c)
            .sum()
    }

    /// Value at `x > 0` and the sum of absolute term values.
    pub(crate) fn eval(&self, x: f64) -> (f64, f64) {
        let lx = x.ln();
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (k, c) in &self.terms {
            let t = c * (self.exponent(k) * lx).exp() * lx.powi(k.log_pow as i32);
            sum += t;
            abs += t.abs();
        }
        (sum, abs)
    }
}

/// `I_(theta,0,q)(x) = Σ_i x^{2θ+2i+q} / (2^{θ+2i} Γ(θ+i+1) i! Π_l (2θ+2i+l))`.
pub(crate) fn repeated_integral_gs(theta: f64, q: u32) -> GenSeries {
    let mut s = GenSeries::new(theta);
    for i in 0..TERMS {
        let fi = i as f64;
        let mut c = rgamma(theta + fi + 1.0) / (2f64.powf(theta + 2.0 * fi) * gamma(fi + 1.0));
        for l in 1..=q {
            c /= 2.0 * theta + 2.0 * fi + l as f64;
        }
        s.push(2 * i as i64 + q as i64, 2, 0, c);
    }
    s
}

/// `x^{pa + pb θ} K_{θ+j}(x)` by the ceiling-split expansion of `K`.
pub(crate) fn k_times_pow_gs(theta: f64, j: i64, pa: i64, pb: i64) -> Result<GenSeries> {
    let mu = theta + j as f64;
    if mu <= -1.0 {
        return Err(Error::Domain(format!(
            "expansion of K_{mu} is not supported"
        )));
    }
    let mut out = GenSeries::new(theta);
    let m = TERMS as i64;
    if mu < 0.0 {
        // K_μ = π/(2 sin πμ) (I_{-μ} - I_μ) for -1 < μ < 0.
        let pre = PI / (2.0 * (PI * mu).sin());
        for k in 0..m {
            let kf = k as f64;
            let c = pre * rgamma(kf - mu + 1.0) / gamma(kf + 1.0) * 2f64.powf(mu - 2.0 * kf);
            out.push(2 * k - j + pa, pb - 1, 0, c);
            let c = -pre * rgamma(mu + kf + 1.0) / gamma(kf + 1.0) * 2f64.powf(-mu - 2.0 * kf);
            out.push(j + 2 * k + pa, pb + 1, 0, c);
        }
        return Ok(out);
    }
    let ceil = mu.ceil() as i64;
    // Finite singular part: ½ Σ_{k<⌈μ⌉} Γ(μ-k)(-1)^k/k! (x/2)^{2k-μ}.
    for k in 0..ceil {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = 0.5 * gamma(mu - kf) * sign / gamma(kf + 1.0) * 2f64.powf(mu - 2.0 * kf);
        out.push(2 * k - j + pa, pb - 1, 0, c);
    }
    if mu.fract() != 0.0 {
        let pre = PI / (2.0 * (PI * mu).sin());
        for k in ceil..ceil + m {
            let kf = k as f64;
            let c = pre * rgamma(kf - mu + 1.0) / gamma(kf + 1.0) * 2f64.powf(mu - 2.0 * kf);
            out.push(2 * k - j + pa, pb - 1, 0, c);
        }
        for k in 0..m {
            let kf = k as f64;
            let c = -pre * rgamma(mu + kf + 1.0) / gamma(kf + 1.0) * 2f64.powf(-mu - 2.0 * kf);
            out.push(j + 2 * k + pa, pb + 1, 0, c);
        }
    } else {
        let mi = mu as u64;
        let sign = if mi % 2 == 0 { 1.0 } else { -1.0 };
        for k in 0..m {
            let kf = k as f64;
            let base = 2f64.powf(-mu - 2.0 * kf) / (gamma(kf + 1.0) * gamma(mu + kf + 1.0));
            let (a, b) = (j + 2 * k + pa, pb + 1);
            // (-1)^{μ-1} (log(x/2) + γ) I_μ
            out.push(a, b, 1, -sign * base);
            out.push(a, b, 0, -sign * (EULER_GAMMA - LN_2) * base);
            // (-1)^μ/2 Σ (ψ(k) + ψ(μ+k)) ...
            let h = harmonic(k as u64) + harmonic(mi + k as u64);
            out.push(a, b, 0, 0.5 * sign * h * base);
        }
    }
    Ok(out)
}

/// `x^{-θ} K_{θ+j}(x)`.
pub(crate) fn k_over_pow_gs(theta: f64, j: i64) -> Result<GenSeries> {
    k_times_pow_gs(theta, j, 0, -1)
}

/// `d^n/dx^n (x^{-ν} K_ν(x))` as a generalized series in `θ = ν`.
pub(crate) fn deriv_k_gs(n: u32, nu: f64) -> Result<GenSeries> {
    let table = coefficient_table(n, nu)?;
    let shift = (n % 2) as i64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = GenSeries::new(nu);
    for (k, c) in table.coeffs.iter().enumerate() {
        let part = k_over_pow_gs(nu, 2 * k as i64 + shift)?.scale(sign * c);
        out = out.add(&part);
    }
    Ok(out)
}

/// Relative tolerance for the symbolic cancellation check.
pub(crate) const CANCEL_TOL: f64 = 1e-9;

/// Evaluates a series whose singular part must cancel, reporting digit loss
/// among the surviving terms.
pub(crate) fn eval_cancelled(series: &GenSeries, x: f64) -> Result<f64> {
    let kept = series.cancel_singular(CANCEL_TOL)?;
    let (v, abs) = kept.eval(x);
    if abs > 1e8 * v.abs() && abs > 1e-300 {
        return Err(Error::CancellationLoss(format!(
            "regular part at x = {x} loses {:.1} digits",
            (abs / v.abs()).log10()
        )));
    }
    Ok(v)
}
