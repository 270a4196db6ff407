//! Auxiliary remainder functions on `[0, 1]` built from the repeated
//! integral `I_(nu,0,q)` and pieces of the `K` expansion.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::integral::repeated_integral_series;
use crate::special::{bessel_i, harmonic, log_gamma, EULER_GAMMA};
use crate::EvalConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxFamily {
    Alpha,
    BetaFn,
    GammaFn,
    DeltaFn,
    EpsilonFn,
    ZetaFn,
}

/// One auxiliary function. `p` is used by `Alpha` and `BetaFn` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxFunctionSpec {
    pub family: AuxFamily,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub nu: f64,
}

const MAX_TERMS: usize = 200;

fn is_integer(nu: f64) -> bool {
    nu.fract() == 0.0
}

impl AuxFunctionSpec {
    fn validate(&self) -> Result<()> {
        if !(self.nu > -0.5) {
            return domain(format!(
                "auxiliary functions need nu > -1/2, got {}",
                self.nu
            ));
        }
        if self.q == 0 || self.r == 0 {
            return domain("q and r must be positive");
        }
        match self.family {
            AuxFamily::Alpha | AuxFamily::BetaFn => {
                if self.p == 0 || 2 * self.p + self.q < self.r {
                    return domain(format!(
                        "alpha/beta need p >= 1 and 2p + q >= r, got p = {}, q = {}, r = {}",
                        self.p, self.q, self.r
                    ));
                }
            }
            AuxFamily::GammaFn | AuxFamily::DeltaFn => {
                if !is_integer(self.nu) {
                    return domain(format!("gamma/delta need integer nu, got {}", self.nu));
                }
            }
            AuxFamily::EpsilonFn | AuxFamily::ZetaFn => {
                if is_integer(self.nu) {
                    return domain(format!("epsilon/zeta need non-integer nu, got {}", self.nu));
                }
            }
        }
        Ok(())
    }

    /// The proven upper bound for this function on `[0, 1]`.
    pub fn bound(&self) -> Result<f64> {
        self.validate()?;
        let (nu, p, q, r) = (self.nu, self.p as f64, self.q, self.r as f64);
        let inv_prod = |shift: f64| {
            (1..=q)
                .map(|i| 1.0 / (2.0 * nu + shift + i as f64))
                .product::<f64>()
        };
        let lg = |z: f64| log_gamma(z);
        let v = match self.family {
            AuxFamily::Alpha => {
                ((r - 2.0 * p) * std::f64::consts::LN_2 + lg(nu + r)?
                    - lg(p + 1.0)?
                    - lg(nu + p + 1.0)?)
                .exp()
                    * inv_prod(2.0 * p)
            }
            AuxFamily::BetaFn => {
                if nu + r - p <= 0.0 {
                    // The defining sum is empty.
                    return Ok(0.0);
                }
                ((r - 2.0 * p) * std::f64::consts::LN_2 + lg(nu + r - p)?
                    - lg(p + 1.0)?
                    - lg(nu + 1.0)?)
                .exp()
                    * inv_prod(0.0)
            }
            AuxFamily::GammaFn => {
                (-(2.0 * nu + r - 1.0) * std::f64::consts::LN_2 - lg(nu + 1.0)? - lg(nu + r + 1.0)?)
                    .exp()
                    * inv_prod(0.0)
            }
            AuxFamily::DeltaFn => {
                (-(2.0 * nu + r - 1.0) * std::f64::consts::LN_2 - lg(nu + 1.0)? - lg(nu + r)?).exp()
                    * inv_prod(0.0)
            }
            AuxFamily::EpsilonFn | AuxFamily::ZetaFn => {
                (-(2.0 * nu + r - 2.0) * std::f64::consts::LN_2 - lg(nu + 1.0)? - lg(nu + r + 1.0)?)
                    .exp()
                    / (PI * nu).sin().abs()
                    * inv_prod(0.0)
            }
        };
        Ok(v)
    }
}

/// `x^{-nu} I_(nu,0,q)(x)`.
fn scaled_repeated(nu: f64, q: u32, x: f64, cfg: &EvalConfig) -> Result<f64> {
    let v = repeated_integral_series(nu, q, x, cfg)?.value;
    Ok(v * x.powf(-nu))
}

fn sum_until_small(mut term: impl FnMut(usize) -> Result<f64>, cfg: &EvalConfig) -> Result<f64> {
    let mut sum = 0.0;
    for j in 0..MAX_TERMS {
        let t = term(j)?;
        sum += t;
        if j > 2 && t.abs() <= 0.01 * cfg.target_rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "auxiliary series",
        terms: MAX_TERMS,
    })
}

/// Evaluates an auxiliary function at `0 <= x <= 1`.
pub fn eval_aux(spec: &AuxFunctionSpec, x: f64, cfg: &EvalConfig) -> Result<f64> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&x) {
        return domain(format!(
            "auxiliary functions are defined on [0, 1], got x = {x}"
        ));
    }
    let (nu, p, q, r) = (spec.nu, spec.p, spec.q, spec.r);
    let rf = r as f64;
    if x == 0.0 {
        // Every family carries x^{2p+q-r} or a higher power; only the
        // boundary case 2p + q = r of alpha has a nonzero limit.
        if spec.family == AuxFamily::Alpha && 2 * p + q == r {
            return eval_aux_alpha_term(nu, p, q, r, 0.0, 0.0);
        }
        return Ok(0.0);
    }
    let lx2 = (0.5 * x).ln();
    let v = match spec.family {
        AuxFamily::Alpha => {
            let log_pre = (nu + rf - 1.0) * std::f64::consts::LN_2 + log_gamma(nu + rf)?;
            let lx = x.ln();
            sum_until_small(
                |j| {
                    let k = p as usize + j;
                    eval_aux_alpha_term(nu, k as u32, q, r, lx, log_pre)
                },
                cfg,
            )?
        }
        AuxFamily::BetaFn => {
            let top = (nu + rf).ceil() as i64 - 1;
            let mut s = 0.0;
            for k in p as i64..=top {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                s += sign
                    * (log_gamma(nu + rf - kf)? - log_gamma(kf + 1.0)?
                        + (2.0 * kf - nu - rf) * lx2)
                        .exp();
            }
            0.5 * scaled_repeated(nu, q, x, cfg)? * s.abs()
        }
        AuxFamily::GammaFn => {
            scaled_repeated(nu, q, x, cfg)?
                * (lx2 + EULER_GAMMA).abs()
                * bessel_i(nu + rf, x, cfg)?.value
        }
        AuxFamily::DeltaFn => {
            let m = nu as u64 + r as u64;
            let s = sum_until_small(
                |j| {
                    let h = harmonic(j as u64) + harmonic(m + j as u64);
                    let jf = j as f64;
                    Ok(h * ((nu + 2.0 * jf + rf) * lx2
                        - log_gamma(jf + 1.0)?
                        - log_gamma(m as f64 + jf + 1.0)?)
                    .exp())
                },
                cfg,
            )?;
            scaled_repeated(nu, q, x, cfg)? * 0.5 * s
        }
        AuxFamily::EpsilonFn => {
            let start = (nu + rf).ceil();
            let s = sum_until_small(
                |j| {
                    let l = start + j as f64;
                    Ok(((2.0 * l - nu - rf) * lx2
                        - log_gamma(l - nu - rf + 1.0)?
                        - log_gamma(l + 1.0)?)
                    .exp())
                },
                cfg,
            )?;
            scaled_repeated(nu, q, x, cfg)? * PI / (2.0 * (PI * (nu + rf)).sin().abs()) * s
        }
        AuxFamily::ZetaFn => {
            scaled_repeated(nu, q, x, cfg)? * PI / (2.0 * (PI * (nu + rf)).sin().abs())
                * bessel_i(nu + rf, x, cfg)?.value
        }
    };
    Ok(v)
}

/// One alpha term `2^{nu+r-1}Γ(nu+r) x^{2k+q-r} / (2^{nu+2k} Γ(nu+k+1) k! Π_i (2nu+2k+i))`,
/// with `lx = log x` and `log_pre = log(2^{nu+r-1} Γ(nu+r))` (recomputed when zero).
fn eval_aux_alpha_term(nu: f64, k: u32, q: u32, r: u32, lx: f64, log_pre: f64) -> Result<f64> {
    let kf = k as f64;
    let rf = r as f64;
    let log_pre = if log_pre == 0.0 {
        (nu + rf - 1.0) * std::f64::consts::LN_2 + log_gamma(nu + rf)?
    } else {
        log_pre
    };
    let e = 2.0 * kf + q as f64 - rf;
    let pow = if e == 0.0 { 0.0 } else { e * lx };
    let mut l = log_pre + pow
        - (nu + 2.0 * kf) * std::f64::consts::LN_2
        - log_gamma(nu + kf + 1.0)?
        - log_gamma(kf + 1.0)?;
    for i in 1..=q {
        l -= (2.0 * nu + 2.0 * kf + i as f64).ln();
    }
    Ok(l.exp())
}
