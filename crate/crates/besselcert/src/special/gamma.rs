//! Gamma-function helpers and the harmonic numbers used in the integer-order
//! K series.

use std::sync::OnceLock;

use crate::error::{domain, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Natural logarithm of the gamma function for `z > 0`.
pub fn log_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return domain(format!("log_gamma requires z > 0, got {z}"));
    }
    if z.fract() == 0.0 && z <= 30.0 {
        // Exact factorials keep log_gamma(1) = log_gamma(2) = 0.
        return Ok(factorial(z as u64 - 1).ln());
    }
    Ok(statrs::function::gamma::ln_gamma(z))
}

/// Gamma function at any real argument that is not a pole.
pub fn gamma(z: f64) -> f64 {
    statrs::function::gamma::gamma(z)
}

/// Reciprocal gamma function; zero at the poles.
pub fn rgamma(z: f64) -> f64 {
    if z <= 0.0 && z.fract() == 0.0 {
        0.0
    } else if z > 0.0 {
        (-statrs::function::gamma::ln_gamma(z)).exp()
    } else {
        1.0 / gamma(z)
    }
}

/// `Γ(a) / Γ(b)` for positive arguments.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    (statrs::function::gamma::ln_gamma(a) - statrs::function::gamma::ln_gamma(b)).exp()
}

pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
}

pub fn factorial(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// The k-th harmonic number `1 + 1/2 + ... + 1/k`, with `psi(0) = 0`.
pub fn harmonic_psi(k: i64) -> Result<f64> {
    if k < 0 {
        return domain(format!("harmonic_psi requires k >= 0, got {k}"));
    }
    Ok(harmonic(k as u64))
}

pub(crate) fn harmonic(k: u64) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

const ZETA_MAX: usize = 64;

/// Riemann zeta at the integers 2..ZETA_MAX via Euler-Maclaurin summation.
fn zeta_table() -> &'static [f64; ZETA_MAX + 1] {
    static TABLE: OnceLock<[f64; ZETA_MAX + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const BERNOULLI: [f64; 6] = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
        ];
        let n_cut = 16.0_f64;
        let mut table = [0.0; ZETA_MAX + 1];
        for (s_int, slot) in table.iter_mut().enumerate().skip(2) {
            let s = s_int as f64;
            let mut sum: f64 = (1..16).map(|n| (n as f64).powf(-s)).sum();
            sum += n_cut.powf(1.0 - s) / (s - 1.0) + 0.5 * n_cut.powf(-s);
            let mut rising = s;
            let mut fact = 2.0;
            let mut pow = n_cut.powf(-s - 1.0);
            for (j, b) in BERNOULLI.iter().enumerate() {
                let j = (j + 1) as f64;
                sum += b / fact * rising * pow;
                rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
                fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
                pow /= n_cut * n_cut;
            }
            *slot = sum;
        }
        table
    })
}

/// Temme's auxiliary gamma quantities for `|mu| <= 1/2`:
/// `(gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu))` where
/// `gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu)` and
/// `gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2`.
///
/// Built from the Taylor series of `ln Γ(1+z)` so that `gam1` keeps full
/// relative accuracy as `mu -> 0`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let zeta = zeta_table();
    // 1/Γ(1+z) = exp(odd(z) + even(z)) with
    // odd(z) = γz + Σ_{k odd} ζ(k) z^k / k, even(z) = -Σ_{k even} ζ(k) z^k / k.
    let mut odd_over_mu = EULER_GAMMA;
    let mut even = 0.0;
    let mut pow = mu; // mu^(k-1)
    for (k, z) in zeta.iter().enumerate().skip(2) {
        let kf = k as f64;
        let term_over_mu = z * pow / kf;
        if k % 2 == 0 {
            even -= term_over_mu * mu;
        } else {
            odd_over_mu += term_over_mu;
        }
        if term_over_mu.abs() < 1e-18 {
            break;
        }
        pow *= mu;
    }
    let odd = mu * odd_over_mu;
    let e = even.exp();
    let sinhc = if odd.abs() < 1e-4 {
        1.0 + odd * odd / 6.0
    } else {
        odd.sinh() / odd
    };
    let gam1 = -e * odd_over_mu * sinhc;
    let gam2 = e * odd.cosh();
    (gam1, gam2, e * odd.exp(), e * (-odd).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_reference_points() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        let half = log_gamma(0.5).unwrap();
        assert!((half - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        let nine_halves = log_gamma(4.5).unwrap();
        let expected = (105.0 * std::f64::consts::PI.sqrt() / 16.0).ln();
        assert!(((nine_halves - expected).exp() - 1.0).abs() < 1e-13);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic_psi(0).unwrap(), 0.0);
        assert_eq!(harmonic_psi(1).unwrap(), 1.0);
        assert!((harmonic_psi(3).unwrap() - 11.0 / 6.0).abs() < 1e-15);
        assert!(harmonic_psi(-1).is_err());
    }

    #[test]
    fn zeta_values() {
        let z = zeta_table();
        let pi = std::f64::consts::PI;
        assert!((z[2] - pi * pi / 6.0).abs() < 1e-15);
        assert!((z[4] - pi.powi(4) / 90.0).abs() < 1e-15);
        assert!((z[3] - 1.202_056_903_159_594_2).abs() < 1e-15);
    }

    #[test]
    fn temme_gammas_match_direct_reciprocals() {
        for &mu in &[-0.5, -0.31, -0.2, 0.05, 0.25, 0.4999] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let rp = rgamma(1.0 + mu);
            let rm = rgamma(1.0 - mu);
            assert!((gp - rp).abs() < 1e-14, "mu={mu}");
            assert!((gm - rm).abs() < 1e-14, "mu={mu}");
            assert!((g2 - 0.5 * (rm + rp)).abs() < 1e-14);
            assert!((g1 - (rm - rp) / (2.0 * mu)).abs() < 1e-12, "mu={mu}");
        }
        let (g1, g2, _, _) = temme_gammas(0.0);
        assert!((g1 + EULER_GAMMA).abs() < 1e-16);
        assert!((g2 - 1.0).abs() < 1e-16);
    }
}
